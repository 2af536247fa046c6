//! Seeded random generators for group elements, cone points, standard
//! subspaces and test matrices. Every function takes the generator
//! explicitly so runs are reproducible from a single seed.

use std::sync::Arc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::liealg::{GroupElement, Grading, LieAlgebra};
use crate::modular::StandardSubspace;
use crate::numkit::{Complex64, ComplexMatrix, ComplexVector, RealMatrix, RealVector};

/// The generator used throughout the crate, seeded from a single integer.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut dyn RngCore) -> f64 {
    StandardNormal.sample(rng)
}

pub fn random_vector(rng: &mut dyn RngCore, n: usize, scale: f64) -> RealVector {
    RealVector::from_fn(n, |_, _| scale * normal(rng))
}

pub fn random_real_matrix(rng: &mut dyn RngCore, rows: usize, cols: usize) -> RealMatrix {
    RealMatrix::from_fn(rows, cols, |_, _| normal(rng))
}

pub fn random_complex_matrix(rng: &mut dyn RngCore, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| Complex64::new(normal(rng), normal(rng)))
}

pub fn random_unit_vector(rng: &mut dyn RngCore, n: usize) -> ComplexVector {
    loop {
        let v = ComplexVector::from_fn(n, |_, _| Complex64::new(normal(rng), normal(rng)));
        let norm = v.norm();
        if norm > 1e-8 {
            return v / Complex64::new(norm, 0.0);
        }
    }
}

/// Hermitian `LᴴL + floor·I` with Gaussian `L`.
pub fn random_positive_definite(rng: &mut dyn RngCore, n: usize, floor: f64) -> ComplexMatrix {
    let l = random_complex_matrix(rng, n, n);
    let a = l.adjoint() * &l + ComplexMatrix::identity(n, n) * Complex64::new(floor, 0.0);
    (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

/// A Gaussian `2×2` matrix rescaled to determinant one (columns swapped
/// when the determinant is negative).
pub fn random_sl2(rng: &mut dyn RngCore) -> RealMatrix {
    loop {
        let mut m = random_real_matrix(rng, 2, 2);
        let det = m.determinant();
        if det.abs() < 1e-3 {
            continue;
        }
        if det < 0.0 {
            m.swap_columns(0, 1);
        }
        return m / det.abs().sqrt();
    }
}

/// `exp x` for Gaussian coordinates `x` of standard deviation `scale`.
pub fn random_group_element(rng: &mut dyn RngCore, algebra: &Arc<LieAlgebra>, scale: f64) -> GroupElement {
    let x = random_vector(rng, algebra.dim(), scale);
    GroupElement::exp(algebra, &x)
}

/// `exp x₀` for a Gaussian `x₀ ∈ g⁰`, an element of `G⁰`.
pub fn random_g0_element(rng: &mut dyn RngCore, grading: &Grading, scale: f64) -> GroupElement {
    let alg = grading.algebra();
    let x = grading.projector(0) * random_vector(rng, alg.dim(), scale);
    GroupElement::exp(alg, &x)
}

pub const STANDARD_COND_MAX: f64 = 10.0;

/// A standard subspace of `Cⁿ` spanned over `R` by `n` Gaussian complex
/// vectors, rejection-sampled until the realified basis stacked with its
/// `i`-multiple has condition number at most [`STANDARD_COND_MAX`].
///
/// The modular objects of `V` have `κ(Δ)` growing like the fourth power of
/// that condition number, and `JΔJ·Δ − 1` carries a rounding error of order
/// `ε·κ(Δ)`; the bound keeps that error near `10⁻¹¹`.
pub fn random_standard_subspace(rng: &mut dyn RngCore, n: usize) -> StandardSubspace {
    random_standard_subspace_within(rng, n, STANDARD_COND_MAX)
}

/// As [`random_standard_subspace`] with a caller-chosen bound on
/// [`crate::modular::standardness_condition`].
pub fn random_standard_subspace_within(rng: &mut dyn RngCore, n: usize, max_condition: f64) -> StandardSubspace {
    loop {
        let b = random_complex_matrix(rng, n, n);
        if crate::modular::standardness_condition(&b) <= max_condition {
            return StandardSubspace::new(b).expect("shape is consistent");
        }
    }
}

/// A Poincaré group element `[[l, v], [0, 1]]` for [`crate::catalog::build_poincare`].
///
/// The Lorentz part is drawn from three families in equal proportion: the
/// centralizer `SO(1,1)↑ × SO(d−2)` of the boost, a small perturbation of
/// it, and a generic element of the identity component. The translation
/// lies in the closed wedge `x₁ ≥ |x₀|` half of the time, on its boundary
/// in a tenth of those cases.
pub fn random_poincare_element(rng: &mut dyn RngCore, d: usize) -> RealMatrix {
    let alg = crate::catalog::poincare_algebra(d);
    let dim = alg.dim();
    let boost = d;
    let is_centralizer = |k: usize| k == boost || k >= 2 * d - 1 + (d - 2);
    let centralizer = RealVector::from_fn(dim, |k, _| {
        if k >= d && is_centralizer(k) {
            normal(rng)
        } else {
            0.0
        }
    });
    let family = rng.random_range(0..3);
    let lorentz = match family {
        0 => centralizer,
        1 => {
            let mut x = centralizer;
            for k in d..dim {
                x[k] += 1e-3 * normal(rng);
            }
            x
        }
        _ => RealVector::from_fn(dim, |k, _| if k >= d { normal(rng) } else { 0.0 }),
    };
    let mut g = crate::numkit::expm(&alg.element(&lorentz)).map(|z| z.re);
    let mut v = random_vector(rng, d, 1.0);
    if rng.random_bool(0.5) {
        let bound = v[0].abs();
        v[1] = if rng.random_bool(0.1) { bound } else { bound + rng.random::<f64>() };
    }
    for i in 0..d {
        g[(i, d)] = v[i];
    }
    g
}
