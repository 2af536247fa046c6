use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Fuzz radius for every numerical decision: residual checks, cone
/// membership slack and order relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if !(abs_tol >= 0.0 && rel_tol >= 0.0) || !abs_tol.is_finite() || !rel_tol.is_finite() {
            return Err(Error::InvalidInput(format!(
                "tolerances must be finite and nonnegative, got ({abs_tol}, {rel_tol})"
            )));
        }
        Ok(Tolerance { abs_tol, rel_tol })
    }

    /// Same value for both components.
    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol)
    }

    /// Admissible error for a quantity of magnitude `scale`.
    pub fn bound(&self, scale: f64) -> f64 {
        self.abs_tol + self.rel_tol * scale.abs()
    }

    pub fn accepts(&self, err: f64, scale: f64) -> bool {
        err <= self.bound(scale)
    }
}
