//! Lie algebras given by a basis of matrices in a faithful representation.
//!
//! Structure constants are derived from matrix commutators; coordinates of a
//! representation matrix are recovered with a precomputed pseudo-inverse of
//! the flattened basis.

mod grading;
mod group;

pub use grading::{grade_by, Grading, GradingJson};
pub use group::{sharp, tau_group, tau_matrix_defect, GroupElement};

use serde::{Deserialize, Serialize};

use crate::numkit::{
    ensure_finite, null_space, rank, ComplexMatrix, ComplexVector, MatrixJson, RealMatrix,
    RealVector, Complex64,
};
use crate::{Error, Result};

/// Relative residual allowed for bracket closure and the Jacobi identity.
const STRUCTURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct LieAlgebra {
    name: String,
    rep_dim: usize,
    basis: Vec<ComplexMatrix>,
    tau_matrix: Option<ComplexMatrix>,
    flat: RealMatrix,
    coord_map: RealMatrix,
    ad_basis: Vec<RealMatrix>,
}

/// JSON form of a [`LieAlgebra`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LieAlgebraJson {
    pub name: String,
    pub rep_dim: usize,
    pub basis: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_matrix: Option<MatrixJson>,
}

fn flatten(m: &ComplexMatrix) -> RealVector {
    let re = m.iter().map(|z| z.re);
    let im = m.iter().map(|z| z.im);
    RealVector::from_iterator(2 * m.len(), re.chain(im))
}

fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

impl LieAlgebra {
    /// Validates the basis (square, common size, finite, linearly
    /// independent, closed under commutators, Jacobi identity) and derives
    /// the structure constants.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<ComplexMatrix>,
        tau_matrix: Option<ComplexMatrix>,
    ) -> Result<Self> {
        let name = name.into();
        let Some(first) = basis.first() else {
            return Err(Error::NotALieAlgebra("empty basis".into()));
        };
        let rep_dim = first.nrows();
        for b in &basis {
            if b.nrows() != rep_dim || b.ncols() != rep_dim || rep_dim == 0 {
                return Err(Error::NotALieAlgebra(
                    "basis matrices must be square of a common size".into(),
                ));
            }
            ensure_finite(b, "basis matrix")?;
        }
        if let Some(t) = &tau_matrix {
            if t.shape() != (rep_dim, rep_dim) {
                return Err(Error::InvalidInput("tau_matrix has the wrong size".into()));
            }
            ensure_finite(t, "tau_matrix")?;
            if t.clone().try_inverse().is_none() {
                return Err(Error::InvalidInput("tau_matrix is singular".into()));
            }
        }
        let dim = basis.len();
        let cols: Vec<RealVector> = basis.iter().map(flatten).collect();
        let flat = RealMatrix::from_columns(&cols);
        if rank(&flat, 1e-10) < dim {
            return Err(Error::NotALieAlgebra("basis is linearly dependent".into()));
        }
        let coord_map = crate::numkit::pseudo_inverse(&flat, 1e-12);

        let mut alg = LieAlgebra {
            name,
            rep_dim,
            basis,
            tau_matrix,
            flat,
            coord_map,
            ad_basis: Vec::new(),
        };
        let mut ad_basis = vec![RealMatrix::zeros(dim, dim); dim];
        for i in 0..dim {
            for j in 0..dim {
                let c = commutator(&alg.basis[i], &alg.basis[j]);
                let (coords, residual) = alg.coords(&c);
                let scale = alg.basis[i].norm() * alg.basis[j].norm();
                if residual > STRUCTURE_TOL * scale.max(1.0) {
                    return Err(Error::NotALieAlgebra(format!(
                        "[b{i}, b{j}] leaves the span (residual {residual:e})"
                    )));
                }
                ad_basis[i].set_column(j, &coords);
            }
        }
        alg.ad_basis = ad_basis;
        let jac = alg.jacobi_residual();
        if jac > STRUCTURE_TOL * alg.structure_scale().max(1.0) {
            return Err(Error::NotALieAlgebra(format!("Jacobi residual {jac:e}")));
        }
        Ok(alg)
    }

    pub fn from_real_basis(
        name: impl Into<String>,
        basis: &[RealMatrix],
        tau_matrix: Option<&RealMatrix>,
    ) -> Result<Self> {
        Self::new(
            name,
            basis.iter().map(crate::numkit::to_complex).collect(),
            tau_matrix.map(crate::numkit::to_complex),
        )
    }

    pub fn from_json(j: &LieAlgebraJson) -> Result<Self> {
        let basis = j
            .basis
            .iter()
            .map(MatrixJson::to_complex)
            .collect::<Result<Vec<_>>>()?;
        if basis.iter().any(|b| b.nrows() != j.rep_dim) {
            return Err(Error::InvalidInput("rep_dim does not match the basis".into()));
        }
        let tau = j.tau_matrix.as_ref().map(MatrixJson::to_complex).transpose()?;
        Self::new(j.name.clone(), basis, tau)
    }

    pub fn to_json(&self) -> LieAlgebraJson {
        LieAlgebraJson {
            name: self.name.clone(),
            rep_dim: self.rep_dim,
            basis: self.basis.iter().map(MatrixJson::from_complex).collect(),
            tau_matrix: self.tau_matrix.as_ref().map(MatrixJson::from_complex),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rep_dim(&self) -> usize {
        self.rep_dim
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn tau_matrix(&self) -> Option<&ComplexMatrix> {
        self.tau_matrix.as_ref()
    }

    pub fn unit(&self, i: usize) -> RealVector {
        let mut v = RealVector::zeros(self.dim());
        v[i] = 1.0;
        v
    }

    /// Structure constants `c[i][j][k]` with `[bᵢ, bⱼ] = Σₖ c[i][j][k] bₖ`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<f64>>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.ad_basis[i][(k, j)]).collect()).collect())
            .collect()
    }

    /// Representation matrix `Σ xᵢ bᵢ`.
    pub fn element(&self, x: &RealVector) -> ComplexMatrix {
        self.element_complex(&crate::numkit::to_complex_vec(x))
    }

    pub fn element_complex(&self, x: &ComplexVector) -> ComplexMatrix {
        assert_eq!(x.len(), self.dim(), "coordinate vector has the wrong length");
        let mut m = ComplexMatrix::zeros(self.rep_dim, self.rep_dim);
        for (b, c) in self.basis.iter().zip(x.iter()) {
            m += b * *c;
        }
        m
    }

    /// Least-squares coordinates of a representation matrix and the
    /// residual `‖Σ cᵢ bᵢ − m‖`.
    pub fn coords(&self, m: &ComplexMatrix) -> (RealVector, f64) {
        let f = flatten(m);
        let c = &self.coord_map * &f;
        let residual = (&self.flat * &c - f).norm();
        (c, residual)
    }

    /// Coordinates in the complexification `g_C`: the complex coefficients
    /// `cₖ` with `m = Σ cₖ bₖ`, and the fit residual.
    pub fn coords_complex(&self, m: &ComplexMatrix) -> (ComplexVector, f64) {
        let n = self.dim();
        let mut cols: Vec<RealVector> = self.basis.iter().map(flatten).collect();
        cols.extend(self.basis.iter().map(|b| flatten(&(b * Complex64::new(0.0, 1.0)))));
        let big = RealMatrix::from_columns(&cols);
        let (sol, residual) = crate::numkit::solve_lstsq(&big, &flatten(m));
        let c = ComplexVector::from_fn(n, |k, _| Complex64::new(sol[k], sol[n + k]));
        (c, residual)
    }

    /// Matrix of `ad x` in basis coordinates.
    pub fn ad(&self, x: &RealVector) -> RealMatrix {
        assert_eq!(x.len(), self.dim(), "coordinate vector has the wrong length");
        let n = self.dim();
        let mut m = RealMatrix::zeros(n, n);
        for (a, c) in self.ad_basis.iter().zip(x.iter()) {
            if *c != 0.0 {
                m += a * *c;
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> &RealMatrix {
        &self.ad_basis[i]
    }

    /// `ad x` on the complexification.
    pub fn ad_complex(&self, x: &ComplexVector) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n, n);
        for (a, c) in self.ad_basis.iter().zip(x.iter()) {
            m += crate::numkit::to_complex(a) * *c;
        }
        m
    }

    /// Coordinates of `[x, y]`.
    pub fn bracket(&self, x: &RealVector, y: &RealVector) -> RealVector {
        self.ad(x) * y
    }

    pub fn bracket_complex(&self, x: &ComplexVector, y: &ComplexVector) -> ComplexVector {
        self.ad_complex(x) * y
    }

    fn structure_scale(&self) -> f64 {
        self.ad_basis.iter().map(|a| a.norm()).fold(0.0, f64::max).powi(2)
    }

    /// Largest Jacobi-identity defect over basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                // [ad bᵢ, ad bⱼ] = ad [bᵢ, bⱼ] is the Jacobi identity on all third arguments
                let lhs = &self.ad_basis[i] * &self.ad_basis[j] - &self.ad_basis[j] * &self.ad_basis[i];
                let c = self.ad_basis[i].column(j).into_owned();
                worst = worst.max((lhs - self.ad(&c)).amax());
            }
        }
        worst
    }

    /// Largest difference between the structure-constant bracket and the
    /// matrix commutator on basis pairs.
    pub fn commutator_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let via_constants = self.element(&self.bracket(&self.unit(i), &self.unit(j)));
                let direct = commutator(&self.basis[i], &self.basis[j]);
                worst = worst.max((via_constants - direct).norm());
            }
        }
        worst
    }

    /// Orthonormal basis (columns, in coordinates) of the center.
    pub fn center(&self) -> RealMatrix {
        let n = self.dim();
        let mut stacked = RealMatrix::zeros(n * n, n);
        for (i, a) in self.ad_basis.iter().enumerate() {
            stacked.view_mut((i * n, 0), (n, n)).copy_from(a);
        }
        if stacked.amax() == 0.0 {
            return RealMatrix::identity(n, n);
        }
        null_space(&stacked, 1e-10)
    }
}

/// Free-function form of [`LieAlgebra::bracket`].
pub fn bracket(algebra: &LieAlgebra, x: &RealVector, y: &RealVector) -> RealVector {
    algebra.bracket(x, y)
}

/// Free-function form of [`LieAlgebra::center`].
pub fn center(algebra: &LieAlgebra) -> RealMatrix {
    algebra.center()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::numkit::real_matrix;

    #[test]
    fn sl2_brackets() {
        let sl2 = catalog::sl2_algebra();
        let (h, e, f) = (sl2.unit(0), sl2.unit(1), sl2.unit(2));
        assert!((sl2.bracket(&h, &e) - &e).norm() < 1e-15);
        assert!(sl2.bracket(&e, &e).norm() < 1e-15);
        // matrix commutator oracle: [E12, E21] = diag(1,-1) = 2h
        let direct = commutator(&sl2.basis()[1], &sl2.basis()[2]);
        let (c, _) = sl2.coords(&direct);
        assert!((sl2.bracket(&e, &f) - &c).norm() < 1e-15);
        assert!((c - h * 2.0).norm() < 1e-15);
        assert!(sl2.commutator_residual() < 1e-14);
    }

    #[test]
    fn structure_constants_are_antisymmetric() {
        let p = catalog::build_poincare(3).algebra;
        let c = p.structure_constants();
        let n = p.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    assert!((c[i][j][k] + c[j][i][k]).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn rejects_dependent_and_open_bases() {
        let e = real_matrix(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let r = LieAlgebra::from_real_basis("dep", &[e.clone(), e.clone() * 2.0], None);
        assert!(matches!(r, Err(Error::NotALieAlgebra(_))));
        let f = real_matrix(2, 2, &[0.0, 0.0, 1.0, 0.0]);
        let r = LieAlgebra::from_real_basis("open", &[e, f], None);
        assert!(matches!(r, Err(Error::NotALieAlgebra(_))));
    }

    #[test]
    fn centers() {
        assert_eq!(catalog::sl2_algebra().center().ncols(), 0);
        let heis = catalog::heisenberg_algebra();
        let z = heis.center();
        assert_eq!(z.ncols(), 1);
        // the center is spanned by the third basis vector (the central z)
        assert!((z[(2, 0)].abs() - 1.0).abs() < 1e-12);
        let ab = catalog::abelian_algebra(3);
        assert_eq!(ab.center().ncols(), 3);
    }

    #[test]
    fn jacobi_holds_on_catalog() {
        for entry in catalog::all_entries() {
            assert!(entry.algebra.jacobi_residual() <= 1e-10, "{}", entry.name);
        }
    }

    #[test]
    fn json_roundtrip() {
        let sl2 = catalog::sl2_algebra();
        let text = serde_json::to_string(&sl2.to_json()).unwrap();
        let back = LieAlgebra::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.dim(), 3);
        assert_eq!(back.basis(), sl2.basis());
    }
}
