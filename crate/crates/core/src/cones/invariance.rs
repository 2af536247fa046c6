use rand::{Rng, RngCore};
use serde::Serialize;

use super::Cone;
use crate::liealg::{GroupElement, Grading};
use crate::{Error, Result, Tolerance};

/// Sampled evidence for `Ad(G)C = C` and `τ(C) = −C`. Violations are
/// negative slacks divided by `max(1, ‖y‖)`, so `0` means no violation.
#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub samples: usize,
    pub max_ad_violation: f64,
    pub max_tau_violation: f64,
}

impl InvarianceReport {
    pub fn passed(&self, tol: Tolerance) -> bool {
        self.max_ad_violation <= tol.abs_tol + tol.rel_tol
            && self.max_tau_violation <= tol.abs_tol + tol.rel_tol
    }
}

fn violation(cone: &Cone, y: &nalgebra::DVector<f64>) -> f64 {
    let s = cone.slack_unchecked(y);
    (-s).max(0.0) / y.norm().max(1.0)
}

/// Samples `x ∈ C` and one-parameter elements `exp(t bᵢ)`, `t ∈ [−1, 1]`,
/// and measures how far `Ad(g)x` and `−τ(x)` fall outside `C`.
///
/// This certifies invariance on samples only.
pub fn invariance_check(
    cone: &Cone,
    grading: &Grading,
    samples: usize,
    rng: &mut dyn RngCore,
) -> Result<InvarianceReport> {
    let alg = grading.algebra();
    if cone.dim() != alg.dim() {
        return Err(Error::AmbientMismatch { expected: alg.dim(), got: cone.dim() });
    }
    let mut report = InvarianceReport { samples, max_ad_violation: 0.0, max_tau_violation: 0.0 };
    for k in 0..samples {
        let x = cone.sample(rng);
        let i = k % alg.dim();
        let t: f64 = rng.random_range(-1.0..=1.0);
        let g = GroupElement::exp(alg, &(alg.unit(i) * t));
        report.max_ad_violation = report.max_ad_violation.max(violation(cone, &g.act(&x)));
        let minus_tau = -(grading.tau() * &x);
        report.max_tau_violation = report.max_tau_violation.max(violation(cone, &minus_tau));
    }
    Ok(report)
}

/// Largest `‖x‖` among sampled `x ∈ C` with `−x ∈ C`. A pointed cone
/// gives `0` (up to samples within tolerance of the origin).
pub fn pointedness_check(cone: &Cone, samples: usize, rng: &mut dyn RngCore, tol: Tolerance) -> f64 {
    let mut worst = 0.0_f64;
    for _ in 0..samples {
        let x = cone.sample(rng);
        if cone.slack_unchecked(&(-&x)) >= -tol.bound(x.norm()) {
            worst = worst.max(x.norm());
        }
    }
    worst
}
