//! Standard subspaces of `Cⁿ` and their modular objects.
//!
//! A real subspace `V ⊆ Cⁿ` is *standard* when `V ∩ iV = {0}` and
//! `V + iV = Cⁿ`. Its Tomita operator `T(ξ + iη) = ξ − iη` (`ξ, η ∈ V`) is
//! antilinear, and the polar decomposition `T = JΔ^{1/2}` produces the
//! modular operator `Δ = T*T` and the conjugation `J`.
//!
//! Antilinear maps are stored as `z ↦ U z̄` for a complex matrix `U`. The
//! antilinear adjoint is fixed by `⟨η, Tξ⟩ = ⟨ξ, T*η⟩` with the inner
//! product linear in the second slot, which for `T = U∘conj` gives
//! `T* = Uᵀ∘conj`.

mod graph;
mod monotone;

pub use graph::{graph_projection, GraphProjection};
pub use monotone::{log_integral, log_monotone_check, qform_log, MonotoneReport};

use serde::{Deserialize, Serialize};

use crate::numkit::{
    complexify_columns, conj, hermitian_eigen, hermitian_function, null_space, rank,
    realify_columns, Complex64, ComplexMatrix, ComplexVectorJson, MatrixJson, RealMatrix,
};
use crate::{Error, Result, Tolerance};

/// A real subspace of `Cⁿ` given by spanning vectors (the columns of
/// `basis`).
#[derive(Debug, Clone, PartialEq)]
pub struct StandardSubspace {
    basis: ComplexMatrix,
}

/// Wire form: `{"n": n, "basis": [complex vectors]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StandardSubspaceJson {
    pub n: usize,
    pub basis: Vec<ComplexVectorJson>,
}

impl StandardSubspace {
    /// Wraps spanning vectors; only the shape is checked here, see
    /// [`is_standard`].
    pub fn new(basis: ComplexMatrix) -> Result<Self> {
        if basis.nrows() == 0 {
            return Err(Error::InvalidInput("ambient dimension must be positive".into()));
        }
        crate::numkit::ensure_finite(&basis, "subspace basis")?;
        Ok(StandardSubspace { basis })
    }

    /// `Rⁿ ⊆ Cⁿ`.
    pub fn real_form(n: usize) -> Self {
        StandardSubspace { basis: ComplexMatrix::identity(n, n) }
    }

    pub fn n(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    /// Orthonormal basis of the realified subspace of `R²ⁿ`.
    pub fn real_basis(&self) -> RealMatrix {
        crate::numkit::range_basis(&realify_columns(&self.basis), 1e-10)
    }

    pub fn from_json(j: &StandardSubspaceJson) -> Result<Self> {
        let cols = j.basis.iter().map(ComplexVectorJson::to_vector).collect::<Result<Vec<_>>>()?;
        if cols.is_empty() || cols.iter().any(|c| c.len() != j.n) {
            return Err(Error::InvalidInput("basis vectors must have length n".into()));
        }
        Self::new(ComplexMatrix::from_columns(&cols))
    }

    pub fn to_json(&self) -> StandardSubspaceJson {
        StandardSubspaceJson {
            n: self.n(),
            basis: self
                .basis
                .column_iter()
                .map(|c| ComplexVectorJson::from_vector(&c.into_owned()))
                .collect(),
        }
    }
}

/// Condition number of the realified basis stacked with its `i`-multiple
/// (`∞` when it is singular or not square).
pub fn standardness_condition(basis: &ComplexMatrix) -> f64 {
    let n = basis.nrows();
    if basis.ncols() != n {
        return f64::INFINITY;
    }
    let i = Complex64::new(0.0, 1.0);
    let mut stacked = RealMatrix::zeros(2 * n, 2 * n);
    stacked.view_mut((0, 0), (2 * n, n)).copy_from(&realify_columns(basis));
    stacked.view_mut((0, n), (2 * n, n)).copy_from(&realify_columns(&(basis * i)));
    let sv = crate::numkit::singular_values(&stacked);
    let (max, min) = (sv.max(), sv.min());
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// `dim_R V = n`, `V ∩ iV = {0}` and `V + iV = Cⁿ`, decided by ranks of the
/// realified bases.
pub fn is_standard(v: &StandardSubspace, tol: Tolerance) -> bool {
    let n = v.n();
    let rel = tol.rel_tol.max(1e-12);
    let real = realify_columns(&v.basis);
    if rank(&real, rel) != n {
        return false;
    }
    let i = Complex64::new(0.0, 1.0);
    let mut stacked = RealMatrix::zeros(2 * n, 2 * v.basis.ncols());
    stacked.view_mut((0, 0), (2 * n, v.basis.ncols())).copy_from(&real);
    stacked
        .view_mut((0, v.basis.ncols()), (2 * n, v.basis.ncols()))
        .copy_from(&realify_columns(&(&v.basis * i)));
    rank(&stacked, rel) == 2 * n
}

/// The modular pair `(Δ, J)`, with `J z = U_J z̄`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularPair {
    pub delta: ComplexMatrix,
    pub j_unitary: ComplexMatrix,
}

/// Wire form: `{"delta": matrix, "j_unitary": matrix}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModularPairJson {
    pub delta: MatrixJson,
    pub j_unitary: MatrixJson,
}

impl ModularPair {
    /// `J Δ J` as a linear map: `U_J Δ̄ Ū_J`.
    pub fn j_delta_j(&self) -> ComplexMatrix {
        &self.j_unitary * conj(&self.delta) * conj(&self.j_unitary)
    }

    /// `‖JΔJ·Δ − I‖`.
    pub fn modular_relation_residual(&self) -> f64 {
        let n = self.delta.nrows();
        (self.j_delta_j() * &self.delta - ComplexMatrix::identity(n, n)).norm()
    }

    /// `‖J² − I‖ = ‖U_J Ū_J − I‖`.
    pub fn involution_residual(&self) -> f64 {
        let n = self.delta.nrows();
        (&self.j_unitary * conj(&self.j_unitary) - ComplexMatrix::identity(n, n)).norm()
    }

    /// `‖U_Jᴴ U_J − I‖`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.delta.nrows();
        (self.j_unitary.adjoint() * &self.j_unitary - ComplexMatrix::identity(n, n)).norm()
    }

    pub fn from_json(j: &ModularPairJson) -> Result<Self> {
        let delta = j.delta.to_complex()?;
        let j_unitary = j.j_unitary.to_complex()?;
        if delta.shape() != j_unitary.shape() || delta.nrows() != delta.ncols() {
            return Err(Error::InvalidInput("delta and j_unitary must be square of equal size".into()));
        }
        Ok(ModularPair { delta, j_unitary })
    }

    pub fn to_json(&self) -> ModularPairJson {
        ModularPairJson {
            delta: MatrixJson::from_complex(&self.delta),
            j_unitary: MatrixJson::from_complex(&self.j_unitary),
        }
    }
}

/// `M` with `T z = M z̄` for the Tomita operator of `V`, from an `n×n`
/// basis `B` that is real-linearly independent: `M = B·conj(B⁻¹)`.
fn tomita_matrix(v: &StandardSubspace) -> Result<ComplexMatrix> {
    let b = complexify_columns(&v.real_basis());
    let b_inv = b.clone().try_inverse().ok_or(Error::NotStandard)?;
    Ok(&b * conj(&b_inv))
}

/// Builds `(Δ, J)` from `T = JΔ^{1/2}`: `Δ = T*T = MᵀM̄` and
/// `J = TΔ^{−1/2}`, so `U_J = M·conj(Δ^{−1/2})`. Verifies that `J` is an
/// antiunitary involution, the modular relation `JΔJ = Δ⁻¹`, and that
/// `Fix(JΔ^{1/2})` recovers `V`.
pub fn modular_pair(v: &StandardSubspace, tol: Tolerance) -> Result<ModularPair> {
    if !is_standard(v, tol) {
        return Err(Error::NotStandard);
    }
    let n = v.n();
    let m = tomita_matrix(v)?;
    let delta = m.transpose() * conj(&m);
    let delta = (&delta + delta.adjoint()) * Complex64::new(0.5, 0.0);
    let inv_sqrt = hermitian_function(&delta, |x| 1.0 / x.sqrt());
    let j_unitary = &m * conj(&inv_sqrt);
    let pair = ModularPair { delta, j_unitary };

    let scale = pair.delta.norm() * n as f64;
    let bound = tol.bound(scale).max(1e-9 * scale);
    for (what, r) in [
        ("J is not unitary", pair.unitarity_residual()),
        ("J is not an involution", pair.involution_residual()),
        ("J Delta J != Delta^-1", pair.modular_relation_residual()),
    ] {
        if r > bound {
            return Err(Error::ModularRelationViolated(format!("{what} (residual {r:e})")));
        }
    }
    let fixed = fixed_space(&pair)?;
    let angle = max_principal_angle(&fixed.real_basis(), &v.real_basis());
    if angle > 1e-6 {
        return Err(Error::ModularRelationViolated(format!(
            "Fix(J Delta^1/2) differs from V (angle {angle:e})"
        )));
    }
    Ok(pair)
}

fn fixed_space(pair: &ModularPair) -> Result<StandardSubspace> {
    let n = pair.delta.nrows();
    // K z̄ = J Δ^{1/2} z with K = U_J conj(Δ^{1/2}) = P + iQ
    let sqrt = hermitian_function(&pair.delta, f64::sqrt);
    let k = &pair.j_unitary * conj(&sqrt);
    let p = k.map(|z| z.re);
    let q = k.map(|z| z.im);
    let eye = RealMatrix::identity(n, n);
    let mut sys = RealMatrix::zeros(2 * n, 2 * n);
    sys.view_mut((0, 0), (n, n)).copy_from(&(&p - &eye));
    sys.view_mut((0, n), (n, n)).copy_from(&q);
    sys.view_mut((n, 0), (n, n)).copy_from(&q);
    sys.view_mut((n, n), (n, n)).copy_from(&(-&p - &eye));
    let ns = null_space(&sys, 1e-8);
    if ns.ncols() != n {
        return Err(Error::ModularRelationViolated(format!(
            "fixed space of J Delta^1/2 has real dimension {} instead of {n}",
            ns.ncols()
        )));
    }
    StandardSubspace::new(complexify_columns(&ns))
}

/// Recovers `V = Fix(JΔ^{1/2})` after checking the pair invariants: `Δ`
/// positive definite, `J² = 1`, `J` antiunitary and `JΔJ = Δ⁻¹`.
pub fn standard_from_pair(pair: &ModularPair, tol: Tolerance) -> Result<StandardSubspace> {
    let n = pair.delta.nrows();
    if pair.delta.shape() != (n, n) || pair.j_unitary.shape() != (n, n) || n == 0 {
        return Err(Error::InvalidInput("delta and j_unitary must be square of equal size".into()));
    }
    let defect = crate::numkit::self_adjoint_defect(&pair.delta);
    if defect > tol.bound(pair.delta.norm()) {
        return Err(Error::NotSelfAdjoint(defect));
    }
    let (eig, _) = hermitian_eigen(&pair.delta);
    if eig[0] <= 0.0 {
        return Err(Error::NotPositiveDefinite(eig[0]));
    }
    let scale = pair.delta.norm() * n as f64;
    let bound = tol.bound(scale);
    for (what, r) in [
        ("J^2 != 1", pair.involution_residual()),
        ("J is not unitary", pair.unitarity_residual()),
        ("J Delta J != Delta^-1", pair.modular_relation_residual()),
    ] {
        if r > bound {
            return Err(Error::ModularRelationViolated(format!("{what} (residual {r:e})")));
        }
    }
    fixed_space(pair)
}

/// Largest principal angle between two real subspaces given by orthonormal
/// columns, computed from `‖(I − Q₁Q₁ᵀ)Q₂‖` (sine form, accurate for small
/// angles). Subspaces of different dimension are at angle `π/2`.
pub fn max_principal_angle(q1: &RealMatrix, q2: &RealMatrix) -> f64 {
    if q1.ncols() != q2.ncols() {
        return std::f64::consts::FRAC_PI_2;
    }
    let residual = q2 - q1 * (q1.transpose() * q2);
    let s = crate::numkit::singular_values(&residual).max().min(1.0);
    s.asin()
}

/// Principal-angle distance between two real subspaces of `Cⁿ`.
pub fn subspace_angle(v1: &StandardSubspace, v2: &StandardSubspace) -> f64 {
    max_principal_angle(&v1.real_basis(), &v2.real_basis())
}

/// `V₁ ⊆ V₂`: every vector of `V₁` lies within `tol` of `V₂`.
pub fn is_subspace(v1: &StandardSubspace, v2: &StandardSubspace, tol: Tolerance) -> bool {
    if v1.n() != v2.n() {
        return false;
    }
    let (q1, q2) = (v1.real_basis(), v2.real_basis());
    if q1.ncols() == 0 {
        return true;
    }
    let residual = &q1 - &q2 * (q2.transpose() * &q1);
    crate::numkit::singular_values(&residual).max() <= tol.bound(1.0)
}
