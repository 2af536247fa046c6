use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::LieAlgebra;
use crate::numkit::{range_basis, RealMatrix, RealVector};
use crate::{Error, Result, Tolerance};

/// Eigenvalues of `ad h` must lie this close to {-1, 0, 1}. Structural, so
/// independent of the caller's tolerance.
pub const EIGEN_CLUSTER_TOL: f64 = 1e-8;

/// A 3-grading `g = g⁻¹ ⊕ g⁰ ⊕ g¹` by the eigenspaces of `ad h`, with the
/// spectral projectors and the involution `τ = P₀ − P₋ − P₊`.
#[derive(Debug, Clone)]
pub struct Grading {
    algebra: Arc<LieAlgebra>,
    h: RealVector,
    p_minus: RealMatrix,
    p_zero: RealMatrix,
    p_plus: RealMatrix,
    tau: RealMatrix,
    bases: [RealMatrix; 3],
}

/// Wire form: `{"h": [...], "dims": [d₋, d₀, d₊]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradingJson {
    pub h: Vec<f64>,
    pub dims: [usize; 3],
}

/// Detects the 3-grading defined by `ad h`.
///
/// The eigenvalues of `ad h` (via a real Schur form) must cluster at
/// {-1, 0, 1}; diagonalizability is checked through `(ad h)³ = ad h`, and the
/// projectors are the Lagrange polynomials
/// `P± = ((ad h)² ± ad h)/2`, `P₀ = 1 − (ad h)²`. Finally the bracket must
/// respect degrees: `[gⁱ, gʲ] ⊆ gⁱ⁺ʲ`, and vanishes when `|i + j| > 1`.
pub fn grade_by(algebra: &Arc<LieAlgebra>, h: &RealVector, tol: Tolerance) -> Result<Grading> {
    if h.len() != algebra.dim() {
        return Err(Error::AmbientMismatch {
            expected: algebra.dim(),
            got: h.len(),
        });
    }
    let n = algebra.dim();
    let a = algebra.ad(h);
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("h"));
    }

    let eigenvalues = crate::numkit::eigenvalues_real(&a);
    for lambda in eigenvalues.iter() {
        let nearest = lambda.re.round().clamp(-1.0, 1.0);
        let off = (lambda - nalgebra::Complex::new(nearest, 0.0)).norm();
        if off > EIGEN_CLUSTER_TOL {
            return Err(Error::NotThreeGraded(format!(
                "eigenvalue {lambda} is not within {EIGEN_CLUSTER_TOL:e} of {{-1, 0, 1}}"
            )));
        }
    }
    let a2 = &a * &a;
    let cubic = (&a2 * &a - &a).amax();
    if cubic > EIGEN_CLUSTER_TOL * a.amax().powi(3).max(1.0) {
        return Err(Error::NotThreeGraded(format!(
            "ad h is not diagonalizable ((ad h)^3 - ad h = {cubic:e})"
        )));
    }

    let eye = RealMatrix::identity(n, n);
    let p_plus = (&a2 + &a) * 0.5;
    let p_minus = (&a2 - &a) * 0.5;
    let p_zero = &eye - &a2;
    let tau = &p_zero - &p_minus - &p_plus;
    let bases = [
        range_basis(&p_minus, 1e-8),
        range_basis(&p_zero, 1e-8),
        range_basis(&p_plus, 1e-8),
    ];
    let grading = Grading {
        algebra: Arc::clone(algebra),
        h: h.clone(),
        p_minus,
        p_zero,
        p_plus,
        tau,
        bases,
    };
    grading.check_bracket_compatibility(tol)?;
    Ok(grading)
}

impl Grading {
    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn h(&self) -> &RealVector {
        &self.h
    }

    /// Projector onto `gʲ` for `j ∈ {-1, 0, 1}`.
    pub fn projector(&self, degree: i8) -> &RealMatrix {
        match degree {
            -1 => &self.p_minus,
            0 => &self.p_zero,
            1 => &self.p_plus,
            _ => panic!("degree must be -1, 0 or 1"),
        }
    }

    /// Orthonormal basis (columns) of `gʲ`.
    pub fn basis(&self, degree: i8) -> &RealMatrix {
        &self.bases[(degree + 1) as usize]
    }

    /// `[dim g⁻¹, dim g⁰, dim g¹]`.
    pub fn dims(&self) -> [usize; 3] {
        [self.bases[0].ncols(), self.bases[1].ncols(), self.bases[2].ncols()]
    }

    pub fn tau(&self) -> &RealMatrix {
        &self.tau
    }

    pub fn component(&self, x: &RealVector, degree: i8) -> RealVector {
        self.projector(degree) * x
    }

    /// `‖x − Pⱼ x‖`: distance of `x` from `gʲ`.
    pub fn eigenspace_residual(&self, x: &RealVector, degree: i8) -> f64 {
        (x - self.projector(degree) * x).norm()
    }

    /// The grading of `−h`: `g¹` and `g⁻¹` swap roles.
    pub fn reversed(&self) -> Grading {
        Grading {
            algebra: Arc::clone(&self.algebra),
            h: -&self.h,
            p_minus: self.p_plus.clone(),
            p_zero: self.p_zero.clone(),
            p_plus: self.p_minus.clone(),
            tau: self.tau.clone(),
            bases: [self.bases[2].clone(), self.bases[1].clone(), self.bases[0].clone()],
        }
    }

    pub fn to_json(&self) -> GradingJson {
        GradingJson {
            h: self.h.iter().copied().collect(),
            dims: self.dims(),
        }
    }

    fn check_bracket_compatibility(&self, tol: Tolerance) -> Result<()> {
        let alg = &self.algebra;
        for i in -1i8..=1 {
            for j in -1i8..=1 {
                let target = i + j;
                for x in self.basis(i).column_iter() {
                    let adx = alg.ad(&x.into_owned());
                    for y in self.basis(j).column_iter() {
                        let z = &adx * y;
                        let defect = if target.abs() > 1 {
                            z.norm()
                        } else {
                            self.eigenspace_residual(&z, target)
                        };
                        if !tol.accepts(defect, adx.norm()) {
                            return Err(Error::NotThreeGraded(format!(
                                "[g^{i}, g^{j}] is not contained in g^{target} (defect {defect:e})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
