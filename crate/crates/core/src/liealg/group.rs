use std::sync::Arc;

use super::{Grading, LieAlgebra};
use crate::numkit::{ensure_finite, expm, to_complex, ComplexMatrix, RealMatrix, RealVector};
use crate::{Error, Result};

/// Relative residual allowed when reading `g bⱼ g⁻¹` back in basis
/// coordinates.
const ADJOINT_TOL: f64 = 1e-8;

/// An invertible representation matrix together with its adjoint action in
/// basis coordinates.
#[derive(Debug, Clone)]
pub struct GroupElement {
    algebra: Arc<LieAlgebra>,
    matrix: ComplexMatrix,
    inverse: ComplexMatrix,
    adjoint: RealMatrix,
}

fn conjugation_adjoint(
    algebra: &LieAlgebra,
    g: &ComplexMatrix,
    g_inv: &ComplexMatrix,
) -> Result<RealMatrix> {
    let n = algebra.dim();
    let scale = g.norm() * g_inv.norm();
    let mut ad = RealMatrix::zeros(n, n);
    for (j, b) in algebra.basis().iter().enumerate() {
        let (c, residual) = algebra.coords(&(g * b * g_inv));
        if residual > ADJOINT_TOL * (scale * b.norm()).max(1.0) {
            return Err(Error::AdjointOutOfSpan(residual));
        }
        ad.set_column(j, &c);
    }
    Ok(ad)
}

impl GroupElement {
    /// Wraps an invertible matrix; fails with `AdjointOutOfSpan` when
    /// conjugation does not preserve the algebra.
    pub fn new(algebra: &Arc<LieAlgebra>, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.shape() != (algebra.rep_dim(), algebra.rep_dim()) {
            return Err(Error::AmbientMismatch {
                expected: algebra.rep_dim(),
                got: matrix.nrows(),
            });
        }
        ensure_finite(&matrix, "group element")?;
        let inverse = matrix
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidInput("group element is singular".into()))?;
        let adjoint = conjugation_adjoint(algebra, &matrix, &inverse)?;
        Ok(GroupElement {
            algebra: Arc::clone(algebra),
            matrix,
            inverse,
            adjoint,
        })
    }

    pub fn from_real(algebra: &Arc<LieAlgebra>, matrix: &RealMatrix) -> Result<Self> {
        Self::new(algebra, to_complex(matrix))
    }

    pub fn identity(algebra: &Arc<LieAlgebra>) -> Self {
        let (r, n) = (algebra.rep_dim(), algebra.dim());
        GroupElement {
            algebra: Arc::clone(algebra),
            matrix: ComplexMatrix::identity(r, r),
            inverse: ComplexMatrix::identity(r, r),
            adjoint: RealMatrix::identity(n, n),
        }
    }

    /// `exp x`, with `Ad(exp x) = e^{ad x}`.
    pub fn exp(algebra: &Arc<LieAlgebra>, x: &RealVector) -> Self {
        let m = algebra.element(x);
        GroupElement {
            algebra: Arc::clone(algebra),
            matrix: expm(&m),
            inverse: expm(&(-m)),
            adjoint: expm(&algebra.ad(x)),
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &ComplexMatrix {
        &self.inverse
    }

    /// `Ad(g)` in basis coordinates.
    pub fn adjoint(&self) -> &RealMatrix {
        &self.adjoint
    }

    /// `Ad(g) x`.
    pub fn act(&self, x: &RealVector) -> RealVector {
        &self.adjoint * x
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            algebra: Arc::clone(&self.algebra),
            matrix: &self.matrix * &other.matrix,
            inverse: &other.inverse * &self.inverse,
            adjoint: &self.adjoint * &other.adjoint,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        let adjoint = self
            .adjoint
            .clone()
            .try_inverse()
            .expect("the adjoint of an invertible element is invertible");
        GroupElement {
            algebra: Arc::clone(&self.algebra),
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
            adjoint,
        }
    }

    /// Same element with the adjoint recomputed by conjugation. Useful after
    /// long products, where the cached adjoint accumulates rounding.
    pub fn refreshed(&self) -> Result<GroupElement> {
        GroupElement::new(&self.algebra, self.matrix.clone())
    }
}

/// `τ_G(g) = T g T⁻¹` for the implementing matrix `T` of the grading
/// involution.
pub fn tau_group(g: &GroupElement, grading: &Grading) -> Result<GroupElement> {
    if grading.algebra().dim() != g.algebra.dim() {
        return Err(Error::AmbientMismatch {
            expected: g.algebra.dim(),
            got: grading.algebra().dim(),
        });
    }
    let t = g.algebra.tau_matrix().ok_or(Error::NoTauImplementation)?;
    let t_inv = t.clone().try_inverse().ok_or(Error::NoTauImplementation)?;
    Ok(GroupElement {
        algebra: Arc::clone(&g.algebra),
        matrix: t * &g.matrix * &t_inv,
        inverse: t * &g.inverse * &t_inv,
        adjoint: grading.tau() * &g.adjoint * grading.tau(),
    })
}

/// `g♯ = τ_G(g)⁻¹`.
pub fn sharp(g: &GroupElement, grading: &Grading) -> Result<GroupElement> {
    Ok(tau_group(g, grading)?.inverse())
}

/// Largest `‖T bᵢ T⁻¹ − ρ(τ bᵢ)‖` over the basis: how well the supplied
/// matrix implements the grading involution.
pub fn tau_matrix_defect(grading: &Grading) -> Result<f64> {
    let alg = grading.algebra();
    let t = alg.tau_matrix().ok_or(Error::NoTauImplementation)?;
    let t_inv = t.clone().try_inverse().ok_or(Error::NoTauImplementation)?;
    let mut worst = 0.0_f64;
    for (i, b) in alg.basis().iter().enumerate() {
        let lhs = t * b * &t_inv;
        let rhs = alg.element(&(grading.tau() * alg.unit(i)));
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::numkit::real_matrix;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_adjoint() {
        let sl2 = catalog::build_sl2();
        let g = GroupElement::identity(&sl2.algebra);
        assert_eq!(g.adjoint(), &RealMatrix::identity(3, 3));
        let g = sl2.group_element(&real_matrix(2, 2, &[1.0, 0.0, 0.0, 1.0])).unwrap();
        assert!((g.adjoint() - RealMatrix::identity(3, 3)).amax() < 1e-15);
    }

    #[test]
    fn exp_e12_moves_h() {
        let sl2 = catalog::build_sl2();
        let a = 0.7;
        let g = GroupElement::exp(&sl2.algebra, &(sl2.algebra.unit(1) * a));
        let expect = sl2.algebra.unit(0) - sl2.algebra.unit(1) * a;
        assert!((g.act(&sl2.algebra.unit(0)) - expect).norm() < 1e-14);
    }

    #[test]
    fn sl2_displayed_adjoint_formula() {
        let sl2 = catalog::build_sl2();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let m = sampling::random_sl2(&mut rng);
            let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
            let g = sl2.group_element(&m).unwrap();
            let w = sl2.algebra.element(&g.act(&sl2.algebra.unit(0)));
            let expect = real_matrix(2, 2, &[0.5 + b * c, -a * b, c * d, -0.5 - b * c]);
            assert!((w - to_complex(&expect)).camax() < 1e-12);
        }
    }

    #[test]
    fn out_of_span_is_rejected() {
        let sl2 = catalog::build_sl2();
        // a lower-triangular unipotent does not normalize the strictly upper
        // triangular Heisenberg algebra
        let heis = Arc::new(catalog::heisenberg_algebra());
        let n = heis.rep_dim();
        let mut m = RealMatrix::identity(n, n);
        m[(1, 0)] = 1.0;
        assert!(matches!(
            GroupElement::from_real(&heis, &m),
            Err(Error::AdjointOutOfSpan(_))
        ));
        let mut m = real_matrix(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        m[(0, 0)] = f64::NAN;
        assert!(sl2.group_element(&m).is_err());
    }

    #[test]
    fn adjoint_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for entry in catalog::all_entries() {
            for _ in 0..200 {
                let g = sampling::random_group_element(&mut rng, &entry.algebra, 0.8);
                let h = sampling::random_group_element(&mut rng, &entry.algebra, 0.8);
                let gh = GroupElement::new(&entry.algebra, g.matrix() * h.matrix()).unwrap();
                let prod = g.adjoint() * h.adjoint();
                let scale = prod.amax().max(1.0);
                assert!((gh.adjoint() - prod).amax() <= 1e-8 * scale, "{}", entry.name);
            }
        }
    }

    #[test]
    fn exp_adjoint_matches_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for entry in catalog::all_entries() {
            let g = sampling::random_group_element(&mut rng, &entry.algebra, 1.0);
            let again = g.refreshed().unwrap();
            assert!((g.adjoint() - again.adjoint()).amax() < 1e-10, "{}", entry.name);
        }
    }

    #[test]
    fn sl2_tau_group() {
        let sl2 = catalog::build_sl2();
        let g = sl2.group_element(&real_matrix(2, 2, &[2.0, 3.0, 1.0, 2.0])).unwrap();
        let t = tau_group(&g, &sl2.grading).unwrap();
        let expect = to_complex(&real_matrix(2, 2, &[2.0, -3.0, -1.0, 2.0]));
        assert!((t.matrix() - expect).camax() < 1e-15);
        // conjugation oracle: exp(E12) ↦ exp(-E12)
        let e = GroupElement::exp(&sl2.algebra, &sl2.algebra.unit(1));
        let t = tau_group(&e, &sl2.grading).unwrap();
        let expect = to_complex(&real_matrix(2, 2, &[1.0, -1.0, 0.0, 1.0]));
        assert!((t.matrix() - expect).camax() < 1e-15);
        // G⁰ is fixed
        let g0 = GroupElement::exp(&sl2.algebra, &(sl2.algebra.unit(0) * 1.3));
        let t = tau_group(&g0, &sl2.grading).unwrap();
        assert!((t.matrix() - g0.matrix()).camax() < 1e-14);
        let s = sharp(&e, &sl2.grading).unwrap();
        assert!((s.matrix() - e.matrix()).camax() < 1e-15);
    }

    #[test]
    fn tau_matrices_implement_tau() {
        for entry in catalog::all_entries() {
            assert!(tau_matrix_defect(&entry.grading).unwrap() < 1e-12, "{}", entry.name);
        }
    }

    #[test]
    fn missing_tau_matrix() {
        let ab = Arc::new(catalog::abelian_algebra(2));
        let gr = super::super::grade_by(&ab, &RealVector::zeros(2), crate::Tolerance::default()).unwrap();
        let g = GroupElement::identity(&ab);
        assert_eq!(tau_group(&g, &gr).unwrap_err(), Error::NoTauImplementation);
    }
}
