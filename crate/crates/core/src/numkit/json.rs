use serde::{Deserialize, Serialize};

use super::{Complex64, ComplexMatrix, ComplexVector, RealMatrix};
use crate::{Error, Result};

/// Wire format for matrices: row-major entries, imaginary part optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_real(m: &RealMatrix) -> Self {
        MatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            re: row_major(m.nrows(), m.ncols(), |i, j| m[(i, j)]),
            im: None,
        }
    }

    /// The imaginary part is omitted when every entry is exactly real.
    pub fn from_complex(m: &ComplexMatrix) -> Self {
        let im = row_major(m.nrows(), m.ncols(), |i, j| m[(i, j)].im);
        MatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            re: row_major(m.nrows(), m.ncols(), |i, j| m[(i, j)].re),
            im: im.iter().any(|x| *x != 0.0).then_some(im),
        }
    }

    pub fn to_complex(&self) -> Result<ComplexMatrix> {
        let len = self.rows * self.cols;
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::InvalidInput("matrix must have positive dimensions".into()));
        }
        if self.re.len() != len || self.im.as_ref().is_some_and(|im| im.len() != len) {
            return Err(Error::InvalidInput(format!(
                "matrix entry count does not match {}x{}",
                self.rows, self.cols
            )));
        }
        let im = self.im.clone().unwrap_or_else(|| vec![0.0; len]);
        if self.re.iter().chain(im.iter()).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(ComplexMatrix::from_fn(self.rows, self.cols, |i, j| {
            let k = i * self.cols + j;
            Complex64::new(self.re[k], im[k])
        }))
    }

    /// Fails when the matrix carries a nonzero imaginary part.
    pub fn to_real(&self) -> Result<RealMatrix> {
        let m = self.to_complex()?;
        if m.iter().any(|z| z.im != 0.0) {
            return Err(Error::InvalidInput("expected a real matrix".into()));
        }
        Ok(m.map(|z| z.re))
    }
}

fn row_major(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Vec<f64> {
    (0..rows)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .map(|(i, j)| f(i, j))
        .collect()
}

/// Complex vectors as `{"re": [...], "im": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexVectorJson {
    pub re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<f64>>,
}

impl ComplexVectorJson {
    pub fn from_vector(v: &ComplexVector) -> Self {
        let im: Vec<f64> = v.iter().map(|z| z.im).collect();
        ComplexVectorJson {
            re: v.iter().map(|z| z.re).collect(),
            im: im.iter().any(|x| *x != 0.0).then_some(im),
        }
    }

    pub fn to_vector(&self) -> Result<ComplexVector> {
        let n = self.re.len();
        let im = self.im.clone().unwrap_or_else(|| vec![0.0; n]);
        if im.len() != n {
            return Err(Error::InvalidInput("re/im length mismatch".into()));
        }
        if self.re.iter().chain(im.iter()).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("vector"));
        }
        Ok(ComplexVector::from_iterator(
            n,
            self.re.iter().zip(&im).map(|(&r, &i)| Complex64::new(r, i)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_row_major_real() {
        let j: MatrixJson =
            serde_json::from_str(r#"{"rows":2,"cols":2,"re":[1,2,3,4]}"#).unwrap();
        let m = j.to_real().unwrap();
        assert_eq!(m[(0, 1)], 2.0);
        assert_eq!(m[(1, 0)], 3.0);
    }

    #[test]
    fn rejects_bad_shapes() {
        let j = MatrixJson {
            rows: 2,
            cols: 2,
            re: vec![1.0; 3],
            im: None,
        };
        assert!(j.to_complex().is_err());
        let j = MatrixJson {
            rows: 1,
            cols: 1,
            re: vec![1.0],
            im: Some(vec![]),
        };
        assert!(j.to_complex().is_err());
    }

    #[test]
    fn real_matrices_omit_im() {
        let s = serde_json::to_string(&MatrixJson::from_real(&RealMatrix::identity(1, 1))).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":1,"re":[1.0]}"#);
    }

    proptest! {
        #[test]
        fn complex_roundtrip(rows in 1usize..4, cols in 1usize..4,
                             data in prop::collection::vec(-1e3f64..1e3, 32)) {
            let m = ComplexMatrix::from_fn(rows, cols, |i, j| {
                Complex64::new(data[i * 4 + j], data[16 + i * 4 + j])
            });
            let text = serde_json::to_string(&MatrixJson::from_complex(&m)).unwrap();
            let back: MatrixJson = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back.to_complex().unwrap(), m);
        }
    }
}
