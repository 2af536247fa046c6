//! Closed convex cones with membership, sampling, dual queries and the graded
//! intersections `C± = ±C ∩ g^{±1}`.
//!
//! Membership is decided through a *slack*: a positively homogeneous function
//! that is nonnegative exactly on the cone. `contains` accepts
//! `slack(x) ≥ −(abs_tol + rel_tol·‖x‖)`, so boundary rays pass.

mod facets;
mod invariance;

pub use facets::generators_from_inequalities;
pub use invariance::{invariance_check, pointedness_check, InvarianceReport};

use std::fmt;
use std::sync::Arc;

use rand::{Rng, RngCore};
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::liealg::Grading;
use crate::numkit::{hermitian_eigen, nnls, to_complex, RealMatrix, RealVector};
use crate::{Error, Result, Tolerance};

/// Probability that a closed-form sampler returns a boundary point.
const BOUNDARY_RATE: f64 = 0.1;

type SlackFn = dyn Fn(&RealVector) -> f64 + Send + Sync;
type SamplerFn = dyn Fn(&mut dyn RngCore) -> RealVector + Send + Sync;

#[derive(Clone)]
pub enum Cone {
    /// `{0}` in `Rᵈⁱᵐ`.
    Zero { dim: usize },
    /// Nonnegative combinations of the columns.
    Polyhedral { generators: RealMatrix },
    /// The invariant cone of `sl₂(R)` in coordinates `(α, b, c)` of
    /// `α·½diag(1,−1) + b E12 + c E21`: `b ≥ 0, c ≤ 0, (α/2)² ≤ −bc`.
    Sl2Lorentz,
    /// `x₀ ≥ ‖(x₁, …, x_{d−1})‖` in `Rᵈ`.
    LightCone { d: usize },
    /// Polynomials of degree ≤ 2 on `Rⁿ` that are nonnegative everywhere, in
    /// coordinates `(c, bᵢ, aᵢⱼ (i ≤ j))` of
    /// `c + Σ bᵢ ξᵢ + Σ_{i≤j} aᵢⱼ ξᵢ ξⱼ`.
    NonnegPoly { n: usize },
    /// `{x : M x ∈ inner, x ∈ (ker M)⊥}` where `section` is a right inverse
    /// of `map` with range `(ker M)⊥`.
    Embedded {
        inner: Box<Cone>,
        map: RealMatrix,
        section: RealMatrix,
    },
    /// `{x : P x = x, sign·x ∈ parent}` for a projector `P`.
    Graded {
        parent: Box<Cone>,
        projector: RealMatrix,
        sign: f64,
    },
    /// A user-supplied slack function and sampler.
    Custom {
        dim: usize,
        slack: Arc<SlackFn>,
        sampler: Arc<SamplerFn>,
    },
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cone::Zero { dim } => write!(f, "Zero({dim})"),
            Cone::Polyhedral { generators } => {
                write!(f, "Polyhedral({}x{})", generators.nrows(), generators.ncols())
            }
            Cone::Sl2Lorentz => write!(f, "Sl2Lorentz"),
            Cone::LightCone { d } => write!(f, "LightCone({d})"),
            Cone::NonnegPoly { n } => write!(f, "NonnegPoly({n})"),
            Cone::Embedded { inner, map, .. } => {
                write!(f, "Embedded({inner:?} via {}x{})", map.nrows(), map.ncols())
            }
            Cone::Graded { parent, sign, .. } => write!(f, "Graded({parent:?}, sign {sign})"),
            Cone::Custom { dim, .. } => write!(f, "Custom({dim})"),
        }
    }
}

/// JSON description of the named cone kinds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConeSpec {
    Zero { dim: usize },
    Polyhedral { generators: Vec<Vec<f64>> },
    Sl2Lorentz,
    LightCone { d: usize },
    NonnegPoly { n: usize },
    /// `{x : M x ∈ inner}` with `M` given row by row.
    Embedded { inner: Box<ConeSpec>, map: Vec<Vec<f64>> },
}

/// Number of coordinates of `NonnegPoly { n }`.
pub fn nonneg_poly_dim(n: usize) -> usize {
    1 + n + n * (n + 1) / 2
}

/// Symmetric `(n+1)×(n+1)` Gram matrix `M` with `f(ξ) = (1, ξ)ᵀ M (1, ξ)`.
pub fn poly_gram_matrix(n: usize, coeffs: &RealVector) -> RealMatrix {
    let mut m = RealMatrix::zeros(n + 1, n + 1);
    m[(0, 0)] = coeffs[0];
    for i in 0..n {
        m[(0, i + 1)] = coeffs[1 + i] / 2.0;
        m[(i + 1, 0)] = coeffs[1 + i] / 2.0;
    }
    let mut k = 1 + n;
    for i in 0..n {
        for j in i..n {
            if i == j {
                m[(i + 1, i + 1)] = coeffs[k];
            } else {
                m[(i + 1, j + 1)] = coeffs[k] / 2.0;
                m[(j + 1, i + 1)] = coeffs[k] / 2.0;
            }
            k += 1;
        }
    }
    m
}

/// Inverse of [`poly_gram_matrix`] (reads the upper triangle).
pub fn poly_coeffs_from_gram(m: &RealMatrix) -> RealVector {
    let n = m.nrows() - 1;
    let mut c = RealVector::zeros(nonneg_poly_dim(n));
    c[0] = m[(0, 0)];
    for i in 0..n {
        c[1 + i] = 2.0 * m[(0, i + 1)];
    }
    let mut k = 1 + n;
    for i in 0..n {
        for j in i..n {
            c[k] = if i == j { m[(i + 1, i + 1)] } else { 2.0 * m[(i + 1, j + 1)] };
            k += 1;
        }
    }
    c
}

/// Evaluates the polynomial with coordinates `coeffs` at `ξ`.
pub fn poly_eval(n: usize, coeffs: &RealVector, xi: &[f64]) -> f64 {
    let mut v = coeffs[0];
    for i in 0..n {
        v += coeffs[1 + i] * xi[i];
    }
    let mut k = 1 + n;
    for i in 0..n {
        for j in i..n {
            v += coeffs[k] * xi[i] * xi[j];
            k += 1;
        }
    }
    v
}

fn min_sym_eigenvalue(m: &RealMatrix) -> f64 {
    hermitian_eigen(&to_complex(m)).0[0]
}

fn normal_vector(rng: &mut dyn RngCore, n: usize) -> RealVector {
    RealVector::from_fn(n, |_, _| StandardNormal.sample(rng))
}

impl Cone {
    pub fn from_spec(spec: &ConeSpec) -> Result<Cone> {
        Ok(match spec {
            ConeSpec::Zero { dim } => Cone::Zero { dim: *dim },
            ConeSpec::Polyhedral { generators } => {
                let dim = generators.first().map_or(0, Vec::len);
                if dim == 0 || generators.iter().any(|g| g.len() != dim) {
                    return Err(Error::InvalidInput(
                        "polyhedral generators must be nonempty vectors of a common length".into(),
                    ));
                }
                if generators.iter().flatten().any(|x| !x.is_finite()) {
                    return Err(Error::NonFinite("cone generators"));
                }
                let cols: Vec<RealVector> =
                    generators.iter().map(|g| RealVector::from_row_slice(g)).collect();
                Cone::Polyhedral { generators: RealMatrix::from_columns(&cols) }
            }
            ConeSpec::Sl2Lorentz => Cone::Sl2Lorentz,
            ConeSpec::LightCone { d } => {
                if *d < 2 {
                    return Err(Error::InvalidInput("light_cone needs d >= 2".into()));
                }
                Cone::LightCone { d: *d }
            }
            ConeSpec::NonnegPoly { n } => {
                if *n == 0 {
                    return Err(Error::InvalidInput("nonneg_poly needs n >= 1".into()));
                }
                Cone::NonnegPoly { n: *n }
            }
            ConeSpec::Embedded { inner, map } => {
                let cols = map.first().map_or(0, Vec::len);
                if map.is_empty() || cols == 0 || map.iter().any(|r| r.len() != cols) {
                    return Err(Error::InvalidInput("embedding map rows must be nonempty and of equal length".into()));
                }
                if map.iter().flatten().any(|x| !x.is_finite()) {
                    return Err(Error::NonFinite("embedding map"));
                }
                let m = RealMatrix::from_fn(map.len(), cols, |i, j| map[i][j]);
                Cone::embedded(Cone::from_spec(inner)?, m)?
            }
        })
    }

    /// The JSON form, when the cone is one of the named kinds.
    pub fn to_spec(&self) -> Option<ConeSpec> {
        match self {
            Cone::Zero { dim } => Some(ConeSpec::Zero { dim: *dim }),
            Cone::Polyhedral { generators } => Some(ConeSpec::Polyhedral {
                generators: generators.column_iter().map(|c| c.iter().copied().collect()).collect(),
            }),
            Cone::Sl2Lorentz => Some(ConeSpec::Sl2Lorentz),
            Cone::LightCone { d } => Some(ConeSpec::LightCone { d: *d }),
            Cone::NonnegPoly { n } => Some(ConeSpec::NonnegPoly { n: *n }),
            Cone::Embedded { inner, map, .. } => Some(ConeSpec::Embedded {
                inner: Box::new(inner.to_spec()?),
                map: map.row_iter().map(|r| r.iter().copied().collect()).collect(),
            }),
            _ => None,
        }
    }

    /// `{x : M x ∈ inner}` restricted to `(ker M)⊥`.
    pub fn embedded(inner: Cone, map: RealMatrix) -> Result<Cone> {
        if map.nrows() != inner.dim() {
            return Err(Error::AmbientMismatch { expected: inner.dim(), got: map.nrows() });
        }
        let section = crate::numkit::pseudo_inverse(&map, 1e-12);
        if (&map * &section - RealMatrix::identity(map.nrows(), map.nrows())).amax() > 1e-10 {
            return Err(Error::InvalidInput("embedding map must be surjective".into()));
        }
        Ok(Cone::Embedded { inner: Box::new(inner), map, section })
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        match self {
            Cone::Zero { dim } | Cone::Custom { dim, .. } => *dim,
            Cone::Polyhedral { generators } => generators.nrows(),
            Cone::Sl2Lorentz => 3,
            Cone::LightCone { d } => *d,
            Cone::NonnegPoly { n } => nonneg_poly_dim(*n),
            Cone::Embedded { map, .. } => map.ncols(),
            Cone::Graded { projector, .. } => projector.nrows(),
        }
    }

    fn check_dim(&self, x: &RealVector) -> Result<()> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::AmbientMismatch { expected: self.dim(), got: x.len() })
        }
    }

    /// A positively homogeneous function that is `≥ 0` exactly on the cone.
    pub fn slack(&self, x: &RealVector) -> Result<f64> {
        self.check_dim(x)?;
        Ok(self.slack_unchecked(x))
    }

    fn slack_unchecked(&self, x: &RealVector) -> f64 {
        match self {
            Cone::Zero { .. } => -x.norm(),
            Cone::Polyhedral { generators } => -nnls(generators, x).1,
            Cone::Sl2Lorentz => {
                let a = x[0] / 2.0;
                let (b, c) = (x[1], x[2]);
                let u = (b - c) / 2.0;
                let w = (b + c) / 2.0;
                u - a.hypot(w)
            }
            Cone::LightCone { .. } => x[0] - x.rows(1, x.len() - 1).norm(),
            Cone::NonnegPoly { n } => min_sym_eigenvalue(&poly_gram_matrix(*n, x)),
            Cone::Embedded { inner, map, section } => {
                let y = map * x;
                let off = (x - section * &y).norm();
                inner.slack_unchecked(&y).min(-off)
            }
            Cone::Graded { parent, projector, sign } => {
                let off = (x - projector * x).norm();
                parent.slack_unchecked(&(x * *sign)).min(-off)
            }
            Cone::Custom { slack, .. } => slack(x),
        }
    }

    pub fn contains(&self, x: &RealVector, tol: Tolerance) -> Result<bool> {
        let s = self.slack(x)?;
        Ok(s >= -tol.bound(x.norm()))
    }

    /// `x ≤_C y`, i.e. `y − x ∈ C`.
    pub fn leq(&self, x: &RealVector, y: &RealVector, tol: Tolerance) -> Result<bool> {
        self.check_dim(x)?;
        self.contains(&(y - x), tol)
    }

    /// Dual-cone membership `y ∈ C*` for cones with a finite generating set
    /// (and the self-dual light cone).
    pub fn dual_contains(&self, y: &RealVector, tol: Tolerance) -> Result<bool> {
        self.check_dim(y)?;
        match self {
            Cone::Zero { .. } => Ok(true),
            Cone::Polyhedral { generators } => Ok(generators
                .column_iter()
                .all(|g| g.dot(y) >= -tol.bound(g.norm() * y.norm()))),
            Cone::LightCone { .. } => self.contains(y, tol),
            _ => Err(Error::InvalidInput(
                "dual membership is only available for polyhedral and light cones".into(),
            )),
        }
    }

    /// Draws a point of the cone; a fixed fraction of draws land on the
    /// boundary.
    pub fn sample(&self, rng: &mut dyn RngCore) -> RealVector {
        match self {
            Cone::Zero { dim } => RealVector::zeros(*dim),
            Cone::Polyhedral { generators } => {
                let k = generators.ncols();
                let on_face = rng.random_bool(BOUNDARY_RATE);
                let w = RealVector::from_fn(k, |_, _| {
                    if on_face && rng.random_bool(0.5) {
                        0.0
                    } else {
                        Exp1.sample(rng)
                    }
                });
                generators * w
            }
            Cone::Sl2Lorentz => {
                let a: f64 = StandardNormal.sample(rng);
                let w: f64 = StandardNormal.sample(rng);
                let r = a.hypot(w);
                let u = if rng.random_bool(BOUNDARY_RATE) {
                    r
                } else {
                    r + { let e: f64 = Exp1.sample(rng); e }
                };
                RealVector::from_vec(vec![2.0 * a, u + w, w - u])
            }
            Cone::LightCone { d } => {
                let x0: f64 = Exp1.sample(rng);
                let mut dir = normal_vector(rng, d - 1);
                let norm = dir.norm();
                if norm > 0.0 {
                    dir /= norm;
                }
                let frac = if rng.random_bool(BOUNDARY_RATE) {
                    1.0
                } else {
                    rng.random::<f64>().powf(1.0 / (*d as f64 - 1.0))
                };
                let mut x = RealVector::zeros(*d);
                x[0] = x0;
                x.rows_mut(1, d - 1).copy_from(&(dir * (x0 * frac)));
                x
            }
            Cone::NonnegPoly { n } => {
                let rank = if rng.random_bool(BOUNDARY_RATE) { *n } else { n + 1 };
                let l = RealMatrix::from_fn(rank, n + 1, |_, _| StandardNormal.sample(rng));
                poly_coeffs_from_gram(&(l.transpose() * l))
            }
            Cone::Embedded { inner, section, .. } => section * inner.sample(rng),
            Cone::Graded { parent, projector, sign } => projector * parent.sample(rng) * *sign,
            Cone::Custom { sampler, .. } => sampler(rng),
        }
    }

    /// `(C₊, C₋) = (C ∩ g¹, −C ∩ g⁻¹)`.
    ///
    /// Sampling a graded part projects samples of `C`; this lands in `C±`
    /// because `C ⊆ C₊ ⊕ g⁰ ⊕ −C₋`, which the property suites check.
    pub fn graded_parts(&self, grading: &Grading) -> Result<(Cone, Cone)> {
        if grading.algebra().dim() != self.dim() {
            return Err(Error::AmbientMismatch {
                expected: self.dim(),
                got: grading.algebra().dim(),
            });
        }
        let part = |degree: i8, sign: f64| Cone::Graded {
            parent: Box::new(self.clone()),
            projector: grading.projector(degree).clone(),
            sign,
        };
        Ok((part(1, 1.0), part(-1, -1.0)))
    }
}

/// Free-function form of [`Cone::contains`].
pub fn contains(cone: &Cone, x: &RealVector, tol: Tolerance) -> Result<bool> {
    cone.contains(x, tol)
}

/// Free-function form of [`Cone::leq`].
pub fn leq_c(x: &RealVector, y: &RealVector, cone: &Cone, tol: Tolerance) -> Result<bool> {
    cone.leq(x, y, tol)
}

/// Free-function form of [`Cone::graded_parts`].
pub fn graded_parts(cone: &Cone, grading: &Grading) -> Result<(Cone, Cone)> {
    cone.graded_parts(grading)
}
