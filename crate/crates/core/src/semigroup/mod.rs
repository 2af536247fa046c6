//! The compression semigroup `S(h, C) = { g : h − Ad(g)h ∈ C }`, triangular
//! factorization through the open cell `G¹G⁰G⁻¹`, polar factorization
//! `s = g₀ exp(x)` with `τ(x) = −x`, and the parabolic subgroups
//! `P± = { g : Ad(g)h ∈ h + g^{±1} }`.

use serde::Serialize;

use crate::cones::Cone;
use crate::liealg::{sharp, GroupElement, Grading};
use crate::numkit::{logm_principal, solve_lstsq, MatrixJson, RealMatrix, RealVector};
use crate::{Error, Result, Tolerance};

/// `g ∈ S(h, C)`, i.e. `Ad(g)h ≤_C h`.
pub fn member_shc(g: &GroupElement, grading: &Grading, cone: &Cone, tol: Tolerance) -> Result<bool> {
    let h = grading.h();
    cone.contains(&(h - g.act(h)), tol)
}

/// Which way round the factors are multiplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorOrder {
    /// `g = exp(x₊) g₀ exp(x₋)`.
    PlusZeroMinus,
    /// `g = exp(x₋) g₀ exp(x₊)`.
    MinusZeroPlus,
}

#[derive(Debug, Clone)]
pub struct TriangularFactorization {
    pub order: FactorOrder,
    pub x_plus: RealVector,
    pub g0: GroupElement,
    pub x_minus: RealVector,
    /// `‖product of the factors − g‖` (Frobenius).
    pub residual: f64,
}

/// Wire form `{"x_plus": [...], "g0": matrix, "x_minus": [...], "residual": r}`.
#[derive(Debug, Clone, Serialize)]
pub struct TriangularFactorizationJson {
    pub order: FactorOrder,
    pub x_plus: Vec<f64>,
    pub g0: MatrixJson,
    pub x_minus: Vec<f64>,
    pub residual: f64,
}

impl TriangularFactorization {
    /// Multiplies the factors back together.
    pub fn product(&self) -> GroupElement {
        let alg = self.g0.algebra();
        let plus = GroupElement::exp(alg, &self.x_plus);
        let minus = GroupElement::exp(alg, &self.x_minus);
        match self.order {
            FactorOrder::PlusZeroMinus => plus.mul(&self.g0).mul(&minus),
            FactorOrder::MinusZeroPlus => minus.mul(&self.g0).mul(&plus),
        }
    }

    pub fn to_json(&self) -> TriangularFactorizationJson {
        TriangularFactorizationJson {
            order: self.order,
            x_plus: self.x_plus.iter().copied().collect(),
            g0: MatrixJson::from_complex(self.g0.matrix()),
            x_minus: self.x_minus.iter().copied().collect(),
            residual: self.residual,
        }
    }
}

/// `g = exp(x₊) g₀ exp(x₋)` with `x± ∈ g^{±1}` and `Ad(g₀)h = h`.
///
/// With `w = Ad(g)h = w₋₁ + w₀ + w₁`, expanding `w = e^{ad x₊}(h + y)`,
/// `y ∈ g⁻¹`, gives `w₀ = h + [x₊, y]` and `w₁ = −½x₊ − ½[w₀, x₊]`, so `x₊`
/// solves `(1 + ad w₀)x₊ = −2w₁` on `g¹`. Then `g′ = exp(−x₊)g` satisfies
/// `Ad(g′⁻¹)h = h − x₋`, and `g₀ = g′exp(−x₋)`. An inconsistent solve or a
/// failed check means `g` is outside the open cell.
pub fn triangular_factor(g: &GroupElement, grading: &Grading, tol: Tolerance) -> Result<TriangularFactorization> {
    factor_plus_first(g, grading, tol)
}

/// [`triangular_factor`] with an explicit order. The order `exp(x₋)g₀exp(x₊)`
/// is the plus-first factorization for the grading of `−h`.
pub fn triangular_factor_ordered(
    g: &GroupElement,
    grading: &Grading,
    order: FactorOrder,
    tol: Tolerance,
) -> Result<TriangularFactorization> {
    match order {
        FactorOrder::PlusZeroMinus => factor_plus_first(g, grading, tol),
        FactorOrder::MinusZeroPlus => {
            let f = factor_plus_first(g, &grading.reversed(), tol)?;
            Ok(TriangularFactorization {
                order,
                x_plus: f.x_minus,
                g0: f.g0,
                x_minus: f.x_plus,
                residual: f.residual,
            })
        }
    }
}

fn factor_plus_first(g: &GroupElement, grading: &Grading, tol: Tolerance) -> Result<TriangularFactorization> {
    let alg = grading.algebra();
    let h = grading.h();
    let w = g.act(h);
    let scale = w.norm().max(h.norm());
    let w0 = grading.component(&w, 0);
    let w1 = grading.component(&w, 1);

    let basis = grading.basis(1);
    let x_plus = if basis.ncols() == 0 {
        RealVector::zeros(alg.dim())
    } else {
        let op = basis.transpose() * (alg.ad(&w0) + RealMatrix::identity(alg.dim(), alg.dim())) * basis;
        let rhs = basis.transpose() * (&w1 * -2.0);
        let (c, residual) = solve_lstsq(&op, &rhs);
        if !tol.accepts(residual, rhs.norm().max(scale)) {
            return Err(Error::NotInOpenCell(format!(
                "(1 + ad w0) x = -2 w1 is inconsistent on g1 (residual {residual:e})"
            )));
        }
        basis * c
    };

    let exp_minus_xp = GroupElement::exp(alg, &-&x_plus);
    let g_prime = exp_minus_xp.mul(g);
    // the checks below apply chains of adjoint actions to h; their rounding
    // grows with the product of the norms along the chain
    let chain = exp_minus_xp.adjoint().norm() * g.adjoint().norm() * h.norm();
    let shifted = g_prime.act(h) - h;
    let off = grading.eigenspace_residual(&shifted, -1);
    if !tol.accepts(off, scale.max(chain)) {
        return Err(Error::NotInOpenCell(format!(
            "Ad(g')h - h leaves g^-1 (residual {off:e})"
        )));
    }
    let x_minus = h - g_prime.inverse().act(h);
    let off = grading.eigenspace_residual(&x_minus, -1);
    if !tol.accepts(off, scale.max(g_prime.inverse().adjoint().norm() * h.norm())) {
        return Err(Error::NotInOpenCell(format!("x- leaves g^-1 (residual {off:e})")));
    }
    let x_minus = grading.component(&x_minus, -1);
    let exp_minus_xm = GroupElement::exp(alg, &-&x_minus);
    let g0 = g_prime.mul(&exp_minus_xm);
    let moved = (g0.act(h) - h).norm();
    if !tol.accepts(moved, scale.max(chain * exp_minus_xm.adjoint().norm())) {
        return Err(Error::NotInOpenCell(format!("Ad(g0)h != h (residual {moved:e})")));
    }
    let mut f = TriangularFactorization {
        order: FactorOrder::PlusZeroMinus,
        x_plus,
        g0,
        x_minus,
        residual: 0.0,
    };
    let plus = GroupElement::exp(alg, &f.x_plus);
    let minus = GroupElement::exp(alg, &f.x_minus);
    f.residual = (plus.mul(&f.g0).mul(&minus).matrix() - g.matrix()).norm();
    // rounding in a product scales with the norms of its factors
    let product_scale = plus.matrix().norm() * f.g0.matrix().norm() * minus.matrix().norm();
    if !tol.accepts(f.residual, product_scale.max(g.matrix().norm())) {
        return Err(Error::NotInOpenCell(format!("roundtrip residual {:e}", f.residual)));
    }
    Ok(f)
}

/// `g ∈ exp(C₊)G⁰exp(C₋)`: the factorization exists with `x₊ ∈ C₊` and
/// `x₋ ∈ C₋`. Errors with `NotInOpenCell` when `g` has no factorization.
pub fn member_decomposed(g: &GroupElement, grading: &Grading, cone: &Cone, tol: Tolerance) -> Result<bool> {
    let f = triangular_factor(g, grading, tol)?;
    let (c_plus, c_minus) = cone.graded_parts(grading)?;
    Ok(c_plus.contains(&f.x_plus, tol)? && c_minus.contains(&f.x_minus, tol)?)
}

#[derive(Debug, Clone)]
pub struct PolarFactorization {
    pub g0: GroupElement,
    /// `x ∈ q = g¹ ⊕ g⁻¹`.
    pub x: RealVector,
    /// `‖g₀ exp(x) − s‖`.
    pub residual: f64,
}

/// Wire form `{"g0": matrix, "x": [...], "residual": r}`.
#[derive(Debug, Clone, Serialize)]
pub struct PolarFactorizationJson {
    pub g0: MatrixJson,
    pub x: Vec<f64>,
    pub residual: f64,
}

impl PolarFactorization {
    pub fn to_json(&self) -> PolarFactorizationJson {
        PolarFactorizationJson {
            g0: MatrixJson::from_complex(self.g0.matrix()),
            x: self.x.iter().copied().collect(),
            residual: self.residual,
        }
    }
}

/// `s = g₀ exp(x)` with `τ(x) = −x` and `Ad(g₀)h = h`, via `s♯s = exp(2x)`
/// where `s♯ = τ_G(s)⁻¹`. Only `τ_G`-fixed `g₀` can be recovered this way;
/// other inputs yield `NotPolar`.
pub fn polar_factor(s: &GroupElement, grading: &Grading, tol: Tolerance) -> Result<PolarFactorization> {
    let alg = grading.algebra();
    let h = grading.h();
    let m = sharp(s, grading)?.matrix() * s.matrix();
    let log_m = logm_principal(&m, tol)?;
    let (two_x, fit) = alg.coords(&log_m);
    let scale = log_m.norm().max(1.0);
    if !tol.accepts(fit, scale) {
        return Err(Error::NotPolar(format!("log(s#s) leaves the algebra (residual {fit:e})")));
    }
    let x = two_x * 0.5;
    let anti = (grading.tau() * &x + &x).norm();
    if !tol.accepts(anti, scale) {
        return Err(Error::NotPolar(format!("tau(x) != -x (residual {anti:e})")));
    }
    let g0 = s.mul(&GroupElement::exp(alg, &-&x));
    let moved = (g0.act(h) - h).norm();
    if !tol.accepts(moved, h.norm().max(g0.adjoint().norm())) {
        return Err(Error::NotPolar(format!("Ad(g0)h != h (residual {moved:e})")));
    }
    let residual = (g0.matrix() * GroupElement::exp(alg, &x).matrix() - s.matrix()).norm();
    Ok(PolarFactorization { g0, x, residual })
}

/// `g ∈ P± = G⁰G^{±1}`: `Ad(g)h − h` lies in `g^{±1}` (`sign = +1` or `−1`).
pub fn member_p(g: &GroupElement, grading: &Grading, sign: i8, tol: Tolerance) -> Result<bool> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidInput("sign must be +1 or -1".into()));
    }
    let h = grading.h();
    let w = g.act(h);
    let off = grading.eigenspace_residual(&(&w - h), sign);
    Ok(tol.accepts(off, w.norm().max(h.norm())))
}

/// Evaluates `sin(y)·x ∈ C±` on a grid of `steps + 1` points of `[0, π]`,
/// the imaginary-part condition for `e^{iy}x ∈ g^{±1} + iC±`. The result
/// must agree with `x ∈ C±`; a disagreement is reported as an error.
pub fn strip_check_abelian(x: &RealVector, c_pm: &Cone, steps: usize, tol: Tolerance) -> Result<bool> {
    let steps = steps.max(2);
    let mut inside = true;
    for k in 0..=steps {
        let y = std::f64::consts::PI * k as f64 / steps as f64;
        inside &= c_pm.contains(&(x * y.sin()), tol)?;
    }
    let direct = c_pm.contains(x, tol)?;
    if inside != direct {
        return Err(Error::PreconditionViolated(format!(
            "strip grid says {inside} but membership of x says {direct}"
        )));
    }
    Ok(inside)
}

#[cfg(test)]
mod tests;
