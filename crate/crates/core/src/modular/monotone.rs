use rand::RngCore;
use serde::Serialize;

use crate::numkit::{
    hermitian_eigen, integrate_adaptive, loewner_leq, self_adjoint_defect, Complex64, ComplexMatrix,
    ComplexVector,
};
use crate::sampling::random_unit_vector;
use crate::{Error, Result, Tolerance};

/// Panel tolerance used by [`log_integral`] unless the caller asks for
/// something tighter.
pub const LOG_PANEL_TOL: f64 = 1e-8;

/// Resolvent grid for the step `−(x + A)⁻¹ ≤ −(x + B)⁻¹`.
pub const RESOLVENT_GRID: [f64; 4] = [0.0, 0.1, 1.0, 10.0];

/// `log z = ∫₀^∞ (1/(x+1) − 1/(x+z)) dx` by adaptive Gauss–Legendre
/// quadrature.
///
/// The substitution `x = t/(1−t)` turns the integrand into
/// `(z − 1)/(t + z(1 − t))` on `[0, 1]`, which is smooth because the
/// denominator is a convex combination of `1` and `z` and so stays in the
/// right half-plane.
pub fn log_integral(z: Complex64, quad_tol: f64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("z"));
    }
    if z.re <= 0.0 {
        return Err(Error::DomainError(format!("log_integral needs Re z > 0, got {z}")));
    }
    let one = Complex64::new(1.0, 0.0);
    let f = |t: f64| (z - one) / (z + (one - z) * t);
    Ok(integrate_adaptive(f, 0.0, 1.0, quad_tol.min(LOG_PANEL_TOL)))
}

fn check_positive_definite(a: &ComplexMatrix) -> Result<(nalgebra::DVector<f64>, ComplexMatrix)> {
    crate::numkit::ensure_finite(a, "A")?;
    let defect = self_adjoint_defect(a);
    if defect > 1e-9 * a.norm().max(1.0) {
        return Err(Error::NotSelfAdjoint(defect));
    }
    let (eig, vecs) = hermitian_eigen(a);
    if eig[0] <= 0.0 {
        return Err(Error::NotPositiveDefinite(eig[0]));
    }
    Ok((eig, vecs))
}

/// `⟨ξ, log(A) ξ⟩ = Σᵢ log(λᵢ)|⟨eᵢ, ξ⟩|²` for positive definite `A`.
pub fn qform_log(a: &ComplexMatrix, xi: &ComplexVector) -> Result<f64> {
    if a.nrows() != xi.len() {
        return Err(Error::AmbientMismatch { expected: a.nrows(), got: xi.len() });
    }
    let (eig, vecs) = check_positive_definite(a)?;
    let coeffs = vecs.adjoint() * xi;
    Ok(eig.iter().zip(coeffs.iter()).map(|(l, c)| l.ln() * c.norm_sqr()).sum())
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotoneReport {
    pub trials: usize,
    /// `min (q_{log B}(ξ) − q_{log A}(ξ))` over the sampled unit vectors.
    pub min_margin: f64,
    /// Smallest eigenvalue of `(x + A)⁻¹ − (x + B)⁻¹` over the grid.
    pub min_resolvent_eigenvalue: f64,
    pub passed: bool,
}

/// Checks `log A ⪯ log B` on random unit vectors, together with the
/// resolvent step `−(x + A)⁻¹ ≤ −(x + B)⁻¹` on [`RESOLVENT_GRID`].
pub fn log_monotone_check(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    trials: usize,
    tol: Tolerance,
    rng: &mut dyn RngCore,
) -> Result<MonotoneReport> {
    if !loewner_leq(a, b, tol)? {
        return Err(Error::PreconditionViolated("A <= B fails in the Loewner order".into()));
    }
    let (ea, va) = check_positive_definite(a)?;
    let (eb, vb) = check_positive_definite(b)?;
    let n = a.nrows();
    let log_a = &va * ComplexMatrix::from_diagonal(&ea.map(|l| Complex64::new(l.ln(), 0.0))) * va.adjoint();
    let log_b = &vb * ComplexMatrix::from_diagonal(&eb.map(|l| Complex64::new(l.ln(), 0.0))) * vb.adjoint();
    let diff = log_b - log_a;
    let mut min_margin = f64::INFINITY;
    for _ in 0..trials {
        let xi = random_unit_vector(rng, n);
        let margin = xi.dotc(&(&diff * &xi)).re;
        min_margin = min_margin.min(margin);
    }
    let mut min_resolvent = f64::INFINITY;
    let eye = ComplexMatrix::identity(n, n);
    for x in RESOLVENT_GRID {
        let shift = Complex64::new(x, 0.0);
        let ra = (a + &eye * shift).try_inverse().ok_or(Error::NotPositiveDefinite(0.0))?;
        let rb = (b + &eye * shift).try_inverse().ok_or(Error::NotPositiveDefinite(0.0))?;
        let d = &ra - &rb;
        let d = (&d + d.adjoint()) * Complex64::new(0.5, 0.0);
        min_resolvent = min_resolvent.min(hermitian_eigen(&d).0[0]);
    }
    let passed = min_margin >= -tol.abs_tol && min_resolvent >= -tol.abs_tol;
    Ok(MonotoneReport { trials, min_margin, min_resolvent_eigenvalue: min_resolvent, passed })
}
