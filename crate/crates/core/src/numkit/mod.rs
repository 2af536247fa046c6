//! Dense real/complex linear algebra used by the rest of the crate.
//!
//! Matrices are plain `nalgebra` dynamic matrices; the aliases below fix the
//! scalar types. QR, Schur and the matrix exponential come from `nalgebra`,
//! the SVD and the Hermitian eigensolver from `faer`. The matrix logarithm,
//! Loewner-order tests, nonnegative least squares and the adaptive quadrature
//! live here.

mod json;
mod linsolve;
mod loewner;
mod matfun;
mod quad;

pub use json::{ComplexVectorJson, MatrixJson};
pub use linsolve::{
    nnls, null_space, pseudo_inverse, range_basis, rank, singular_values, solve_lstsq, solve_lstsq_complex, svd,
};
pub use loewner::{hermitian_eigen, loewner_leq, self_adjoint_defect};
pub use matfun::{complex_schur, eigenvalues_real, expm, hermitian_function, logm_principal, logm_principal_real};
pub use quad::integrate_adaptive;

use nalgebra::{DMatrix, DVector};

pub use nalgebra::Complex;
pub type Complex64 = Complex<f64>;
pub type RealMatrix = DMatrix<f64>;
pub type ComplexMatrix = DMatrix<Complex64>;
pub type RealVector = DVector<f64>;
pub type ComplexVector = DVector<Complex64>;

use crate::{Error, Result};

/// Row-major real matrix.
pub fn real_matrix(rows: usize, cols: usize, row_major: &[f64]) -> RealMatrix {
    RealMatrix::from_row_slice(rows, cols, row_major)
}

pub fn to_complex(m: &RealMatrix) -> ComplexMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

pub fn to_complex_vec(v: &RealVector) -> ComplexVector {
    v.map(|x| Complex64::new(x, 0.0))
}

/// Real part, after checking that the imaginary part is negligible relative
/// to the matrix norm.
pub fn real_part_checked(m: &ComplexMatrix, tol: f64) -> Option<RealMatrix> {
    let im = m.map(|z| z.im).norm();
    let scale = m.norm().max(1.0);
    (im <= tol * scale).then(|| m.map(|z| z.re))
}

pub fn ensure_finite_real(m: &RealMatrix, what: &'static str) -> Result<()> {
    if m.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

pub fn ensure_finite(m: &ComplexMatrix, what: &'static str) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

pub(crate) fn ensure_square<T: nalgebra::Scalar>(m: &DMatrix<T>, what: &str) -> Result<()> {
    if m.nrows() == m.ncols() && m.nrows() > 0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{what} must be square and nonempty, got {}x{}",
            m.nrows(),
            m.ncols()
        )))
    }
}

/// Entrywise complex conjugate.
pub fn conj(m: &ComplexMatrix) -> ComplexMatrix {
    m.map(|z| z.conj())
}

/// Realification `Cⁿ → R²ⁿ`, `z ↦ (Re z, Im z)`, applied to each column.
pub fn realify_columns(m: &ComplexMatrix) -> RealMatrix {
    let n = m.nrows();
    RealMatrix::from_fn(2 * n, m.ncols(), |i, j| {
        if i < n {
            m[(i, j)].re
        } else {
            m[(i - n, j)].im
        }
    })
}

/// Inverse of [`realify_columns`].
pub fn complexify_columns(m: &RealMatrix) -> ComplexMatrix {
    let n = m.nrows() / 2;
    ComplexMatrix::from_fn(n, m.ncols(), |i, j| Complex64::new(m[(i, j)], m[(i + n, j)]))
}

pub fn max_abs_real(m: &RealMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn realify_roundtrip() {
        let m = ComplexMatrix::from_fn(3, 2, |i, j| Complex64::new(i as f64, j as f64 - 1.0));
        assert_eq!(complexify_columns(&realify_columns(&m)), m);
    }

    #[test]
    fn finiteness_check() {
        let mut m = RealMatrix::identity(2, 2);
        assert!(ensure_finite_real(&m, "m").is_ok());
        m[(0, 1)] = f64::INFINITY;
        assert_eq!(ensure_finite_real(&m, "m"), Err(Error::NonFinite("m")));
    }
}
