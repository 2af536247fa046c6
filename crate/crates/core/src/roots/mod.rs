//! Root decomposition with respect to a compactly embedded Cartan
//! subalgebra `t`, the compact / noncompact classification of roots, adapted
//! positive systems and the cone `C_max = (iΔ_p⁺)^⋆ ⊆ t`.
//!
//! The star on `g_C` is `(x + iy)* = −x + iy` for `x, y ∈ g`; in real
//! coordinates this is `c ↦ −c̄`.

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::cones::{generators_from_inequalities, Cone};
use crate::liealg::LieAlgebra;
use crate::numkit::{
    null_space, to_complex, Complex64, ComplexMatrix, ComplexVector, RealMatrix, RealVector,
};
use crate::{Error, Result, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootType {
    /// `α([x, x*]) > 0`.
    Compact,
    /// `α([x, x*]) = 0` for the root vector (noncompact, not simple).
    Noncompact,
    /// `α([x, x*]) < 0`.
    NoncompactSimple,
}

impl RootType {
    pub fn is_noncompact(self) -> bool {
        self != RootType::Compact
    }
}

#[derive(Debug, Clone)]
pub struct Root {
    /// `α(tᵢ)` on the Cartan basis; purely imaginary.
    pub values: ComplexVector,
    /// Root vector in `g_C`, in complex coordinates.
    pub vector: ComplexVector,
    pub kind: RootType,
}

impl Root {
    /// `iα(x)` for `x` in Cartan coordinates.
    pub fn i_alpha(&self, x: &RealVector) -> f64 {
        (self.values.iter().zip(x.iter()).map(|(a, c)| a * *c).sum::<Complex64>() * Complex64::new(0.0, 1.0)).re
    }

    /// `(iα(t₁), …, iα(tₖ))`.
    pub fn i_alpha_coefficients(&self) -> RealVector {
        self.values.map(|a| -a.im)
    }
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    /// Cartan basis (columns, in algebra coordinates).
    pub cartan: RealMatrix,
    pub roots: Vec<Root>,
}

/// Wire form: roots as the real coefficient arrays `iα(tᵢ)`, tags as
/// strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootDatumJson {
    pub cartan: Vec<Vec<f64>>,
    pub roots: Vec<Vec<f64>>,
    pub types: Vec<RootType>,
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.cartan.ncols()
    }

    /// Cartan coordinates to algebra coordinates.
    pub fn to_algebra(&self, x: &RealVector) -> RealVector {
        &self.cartan * x
    }

    pub fn to_json(&self) -> RootDatumJson {
        RootDatumJson {
            cartan: self.cartan.column_iter().map(|c| c.iter().copied().collect()).collect(),
            roots: self.roots.iter().map(|r| r.i_alpha_coefficients().iter().copied().collect()).collect(),
            types: self.roots.iter().map(|r| r.kind).collect(),
        }
    }
}

fn generic_weights(k: usize) -> RealVector {
    // rationally independent weights make distinct roots take distinct values
    RealVector::from_fn(k, |i, _| ((i + 2) as f64).sqrt() + 0.1 * i as f64)
}

/// Simultaneous eigendecomposition of `ad t` on `g_C`.
///
/// Checks that `t` is abelian, equals its own centralizer and acts with
/// purely imaginary eigenvalues; root spaces of dimension above one are
/// rejected.
pub fn root_decomposition(algebra: &LieAlgebra, cartan: &RealMatrix, tol: Tolerance) -> Result<RootDatum> {
    let n = algebra.dim();
    if cartan.nrows() != n {
        return Err(Error::AmbientMismatch { expected: n, got: cartan.nrows() });
    }
    let k = cartan.ncols();
    let ads: Vec<RealMatrix> = cartan.column_iter().map(|c| algebra.ad(&c.into_owned())).collect();
    let scale = ads.iter().map(|a| a.norm()).fold(1.0, f64::max);
    for (i, a) in ads.iter().enumerate() {
        for j in 0..k {
            let defect = (a * cartan.column(j)).norm();
            if !tol.accepts(defect, scale) {
                return Err(Error::NotCartan(format!("[t{i}, t{j}] != 0 (defect {defect:e})")));
            }
        }
    }
    let mut stacked = RealMatrix::zeros(n * k.max(1), n);
    for (i, a) in ads.iter().enumerate() {
        stacked.view_mut((i * n, 0), (n, n)).copy_from(a);
    }
    let centralizer_dim = if k == 0 { n } else { null_space(&stacked, 1e-10).ncols() };
    if centralizer_dim != k {
        return Err(Error::NotCartan(format!(
            "centralizer has dimension {centralizer_dim}, not {k}"
        )));
    }

    let weights = generic_weights(k);
    let generic: RealMatrix = ads.iter().zip(weights.iter()).fold(RealMatrix::zeros(n, n), |acc, (a, w)| acc + a * *w);
    let eig = crate::numkit::eigenvalues_real(&generic);
    let gen_c = to_complex(&generic);
    let cluster = 1e-6 * scale;
    let mut seen: Vec<Complex64> = Vec::new();
    let mut roots = Vec::new();
    for lambda in eig.iter() {
        if lambda.re.abs() > 1e-8 * scale {
            return Err(Error::NotCartan(format!("ad t has a non-imaginary eigenvalue {lambda}")));
        }
        if lambda.norm() <= cluster || seen.iter().any(|s| (s - lambda).norm() <= cluster) {
            continue;
        }
        seen.push(*lambda);
        let shifted = &gen_c - ComplexMatrix::identity(n, n) * Complex64::new(0.0, lambda.im);
        let space = null_space(&shifted, 1e-8);
        if space.ncols() != 1 {
            return Err(Error::RootSpaceNotSimple(space.ncols()));
        }
        let x = space.column(0).into_owned();
        let values = ComplexVector::from_fn(k, |i, _| {
            let adx = to_complex(&ads[i]) * &x;
            x.dotc(&adx) / x.dotc(&x)
        });
        for (i, a) in ads.iter().enumerate() {
            let defect = (to_complex(a) * &x - &x * values[i]).norm();
            if !tol.accepts(defect, scale) || !tol.accepts(values[i].re.abs(), scale) {
                return Err(Error::NotCartan(format!("root vector is not a joint eigenvector of t{i}")));
            }
        }
        let values = values.map(|a| Complex64::new(0.0, a.im));
        let kind = classify(algebra, cartan, &values, &x, tol);
        roots.push(Root { values, vector: x, kind });
    }
    Ok(RootDatum { cartan: cartan.clone(), roots })
}

fn classify(algebra: &LieAlgebra, cartan: &RealMatrix, values: &ComplexVector, x: &ComplexVector, tol: Tolerance) -> RootType {
    let star = x.map(|c| -c.conj());
    let br = algebra.bracket_complex(x, &star);
    // [x, x*] lies in t_C; read off its Cartan coordinates
    let (coords, _) = crate::numkit::solve_lstsq_complex(&to_complex(cartan), &br);
    let value: Complex64 = values.iter().zip(coords.iter()).map(|(a, c)| a * c).sum();
    let v = value.re / x.norm_squared();
    if v > tol.abs_tol {
        RootType::Compact
    } else if v < -tol.abs_tol {
        RootType::NoncompactSimple
    } else {
        RootType::Noncompact
    }
}

/// The tag of `datum.roots[index]`.
pub fn classify_root(datum: &RootDatum, index: usize) -> Result<RootType> {
    datum
        .roots
        .get(index)
        .map(|r| r.kind)
        .ok_or_else(|| Error::InvalidInput(format!("no root with index {index}")))
}

/// Tag computed from a caller-supplied root vector (any nonzero multiple of
/// the stored one gives the same answer).
pub fn classify_root_vector(algebra: &LieAlgebra, datum: &RootDatum, index: usize, x: &ComplexVector, tol: Tolerance) -> Result<RootType> {
    let root = datum
        .roots
        .get(index)
        .ok_or_else(|| Error::InvalidInput(format!("no root with index {index}")))?;
    Ok(classify(algebra, &datum.cartan, &root.values, x, tol))
}

/// Positive roots `{α : iα(x₀) > 0}` after checking that `x₀` (Cartan
/// coordinates) is regular and the positive system is adapted:
/// `iα(x₀) > iβ(x₀)` for noncompact positive `α` and every compact `β`.
pub fn positive_system(datum: &RootDatum, x0: &RealVector, tol: Tolerance) -> Result<Vec<usize>> {
    if x0.len() != datum.rank() {
        return Err(Error::AmbientMismatch { expected: datum.rank(), got: x0.len() });
    }
    let vals: Vec<f64> = datum.roots.iter().map(|r| r.i_alpha(x0)).collect();
    let scale = x0.norm().max(1.0);
    if vals.iter().any(|v| v.abs() <= tol.bound(scale)) {
        return Err(Error::NotRegular);
    }
    let positive: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > 0.0).collect();
    let compact_max = datum
        .roots
        .iter()
        .zip(&vals)
        .filter(|(r, _)| r.kind == RootType::Compact)
        .map(|(_, v)| *v)
        .fold(f64::NEG_INFINITY, f64::max);
    for &i in &positive {
        if datum.roots[i].kind.is_noncompact() && vals[i] <= compact_max {
            return Err(Error::NotAdapted);
        }
    }
    Ok(positive)
}

/// `C_max = {x ∈ t : iα(x) ≥ 0 for α ∈ Δ_p⁺}` as a polyhedral cone in Cartan
/// coordinates. Needs `rank t ≤ 3` for the facet enumeration.
pub fn c_max(datum: &RootDatum, x0: &RealVector, tol: Tolerance) -> Result<Cone> {
    let positive = positive_system(datum, x0, tol)?;
    let rows: Vec<RealVector> = positive
        .iter()
        .filter(|&&i| datum.roots[i].kind.is_noncompact())
        .map(|&i| datum.roots[i].i_alpha_coefficients())
        .collect();
    let k = datum.rank();
    let a = if rows.is_empty() {
        RealMatrix::zeros(0, k)
    } else {
        RealMatrix::from_fn(rows.len(), k, |i, j| rows[i][j])
    };
    Ok(Cone::Polyhedral { generators: generators_from_inequalities(&a, k)? })
}

/// Random search for an element `x₀` of `t` (Cartan coordinates) inducing
/// an adapted positive system. Reports `NotAdapted` when `attempts` draws
/// all fail.
pub fn find_adapted_x0(datum: &RootDatum, attempts: usize, tol: Tolerance, rng: &mut dyn RngCore) -> Result<RealVector> {
    for _ in 0..attempts {
        let x = RealVector::from_fn(datum.rank(), |_, _| rng.random_range(-1.0..1.0));
        if positive_system(datum, &x, tol).is_ok() {
            return Ok(x);
        }
    }
    Err(Error::NotAdapted)
}

#[cfg(test)]
mod tests;
