use std::sync::OnceLock;

use super::Complex64;

const ORDER: usize = 15;
const MAX_DEPTH: u32 = 48;

/// Gauss–Legendre nodes and weights on [-1, 1] (Newton on Pₙ).
fn rule() -> &'static [(f64, f64); ORDER] {
    static RULE: OnceLock<[(f64, f64); ORDER]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = ORDER;
        let mut out = [(0.0, 0.0); ORDER];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        out
    })
}

fn panel(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> Complex64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule()
        .iter()
        .map(|&(x, w)| f(mid + half * x) * w)
        .sum::<Complex64>()
        * half
}

/// Adaptive Gauss–Legendre quadrature of a complex-valued integrand on
/// `[a, b]`. A panel is accepted when its estimate agrees with the sum over
/// its two halves to within `panel_tol`.
pub fn integrate_adaptive(f: impl Fn(f64) -> Complex64, a: f64, b: f64, panel_tol: f64) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    let mut stack = vec![(a, b, panel(&f, a, b), 0u32)];
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(&f, lo, mid);
        let right = panel(&f, mid, hi);
        let refined = left + right;
        if (refined - whole).norm() <= panel_tol || depth >= MAX_DEPTH {
            total += refined;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        let s: f64 = rule().iter().map(|&(_, w)| w).sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn integrates_polynomials_exactly() {
        // degree 2n-1 = 29 exact; x^28 over [0,1] is 1/29
        let v = integrate_adaptive(|x| Complex64::new(x.powi(28), 0.0), 0.0, 1.0, 1e-12);
        assert!((v.re - 1.0 / 29.0).abs() < 1e-15);
    }

    #[test]
    fn peaked_integrand() {
        // ∫₀¹ 1/(x² + ε²) dx = atan(1/ε)/ε
        let eps = 1e-3;
        let v = integrate_adaptive(|x| Complex64::new(1.0 / (x * x + eps * eps), 0.0), 0.0, 1.0, 1e-10);
        let exact = (1.0 / eps).atan() / eps;
        assert!((v.re - exact).abs() < 1e-8 * exact);
    }
}
