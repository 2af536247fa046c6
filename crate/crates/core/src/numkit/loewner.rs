use nalgebra::DVector;

use super::{ensure_square, Complex64, ComplexMatrix};
use crate::{Error, Result, Tolerance};

/// `‖A − A*‖_F`.
pub fn self_adjoint_defect(a: &ComplexMatrix) -> f64 {
    (a - a.adjoint()).norm()
}

fn check_self_adjoint(a: &ComplexMatrix, tol: Tolerance) -> Result<()> {
    let defect = self_adjoint_defect(a);
    if tol.accepts(defect, a.norm()) {
        Ok(())
    } else {
        Err(Error::NotSelfAdjoint(defect))
    }
}

/// Eigenvalues (ascending) and eigenvectors of the Hermitian part of `a`.
pub fn hermitian_eigen(a: &ComplexMatrix) -> (DVector<f64>, ComplexMatrix) {
    let sym = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    super::linsolve::faer_hermitian_eigen(&sym)
}

/// Loewner order `A ≤ B`: the smallest eigenvalue of `B − A` is at least
/// `−abs_tol`.
pub fn loewner_leq(a: &ComplexMatrix, b: &ComplexMatrix, tol: Tolerance) -> Result<bool> {
    ensure_square(a, "A")?;
    ensure_square(b, "B")?;
    if a.shape() != b.shape() {
        return Err(Error::InvalidInput("A and B must have the same dimension".into()));
    }
    check_self_adjoint(a, tol)?;
    check_self_adjoint(b, tol)?;
    let (values, _) = hermitian_eigen(&(b - a));
    Ok(values[0] >= -tol.abs_tol)
}
