use nalgebra::{ComplexField, DMatrix, Schur};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{ensure_finite, ensure_square, Complex64, ComplexMatrix, ComplexVector, RealMatrix};
use crate::{Error, Result, Tolerance};

/// Matrix exponential by scaling and squaring with a Padé approximant
/// (`nalgebra`'s implementation), for real or complex square matrices.
pub fn expm<T: ComplexField>(a: &DMatrix<T>) -> DMatrix<T> {
    assert_eq!(a.nrows(), a.ncols(), "expm needs a square matrix");
    a.exp()
}

const SCHUR_MAX_ITER: usize = 2000;

/// Complex Schur form `a = q t qᴴ`.
///
/// nalgebra's QR iteration can stall on some spectra; a stalled attempt is
/// retried on a fixed unitary conjugate of `a`, which leaves the spectrum
/// unchanged but moves the iteration off the stagnant point.
pub fn complex_schur(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5C4);
    for attempt in 0..16 {
        let u = if attempt == 0 {
            ComplexMatrix::identity(n, n)
        } else {
            ComplexMatrix::from_fn(n, n, |_, _| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            })
            .qr()
            .q()
        };
        let conj = &u * a * u.adjoint();
        if let Some(s) = Schur::try_new(conj, f64::EPSILON, SCHUR_MAX_ITER * n.max(1)) {
            let (q, t) = s.unpack();
            return (u.adjoint() * q, t);
        }
    }
    Schur::new(a.clone()).unpack()
}

/// Eigenvalues of a real square matrix, with the same stall recovery as
/// [`complex_schur`].
pub fn eigenvalues_real(a: &RealMatrix) -> ComplexVector {
    let n = a.nrows();
    if let Some(s) = Schur::try_new(a.clone(), f64::EPSILON, SCHUR_MAX_ITER * n.max(1)) {
        return s.complex_eigenvalues();
    }
    let (_, t) = complex_schur(&super::to_complex(a));
    t.diagonal()
}

/// Principal matrix logarithm.
///
/// Complex Schur form, then repeated triangular square roots until the
/// triangular factor is within 0.25 of the identity, then the series
/// `log T = 2 artanh((T - 1)(T + 1)⁻¹)`, scaled back by `2ᵏ`.
pub fn logm_principal(a: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    ensure_square(a, "logm argument")?;
    ensure_finite(a, "logm argument")?;
    let n = a.nrows();
    let (q, mut t) = complex_schur(a);
    for j in 0..n {
        for i in j + 1..n {
            t[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
    for i in 0..n {
        let lambda = t[(i, i)];
        if distance_to_cut(lambda) <= tol.abs_tol.max(f64::MIN_POSITIVE) {
            return Err(Error::BranchCut(format!("{lambda}")));
        }
    }

    let eye = ComplexMatrix::identity(n, n);
    let mut squarings = 0u32;
    while (&t - &eye).norm() > 0.25 {
        if squarings >= 64 {
            return Err(Error::BranchCut("square-root iteration did not converge".into()));
        }
        t = sqrt_upper_triangular(&t);
        squarings += 1;
    }

    let num = &t - &eye;
    let den = &t + &eye;
    let z = den
        .solve_upper_triangular(&num)
        .ok_or_else(|| Error::BranchCut("singular T + 1".into()))?;
    let z2 = &z * &z;
    let mut power = z.clone();
    let mut series = z.clone();
    let mut k = 1usize;
    while power.norm() > 1e-18 * series.norm().max(1e-300) && k < 200 {
        power = &power * &z2;
        k += 2;
        series += &power * Complex64::new(1.0 / k as f64, 0.0);
    }
    let scale = 2.0 * 2f64.powi(squarings as i32);
    let log_t = series * Complex64::new(scale, 0.0);
    Ok(&q * log_t * q.adjoint())
}

/// Principal logarithm of a real matrix; the result is real whenever no
/// eigenvalue lies on the closed negative axis.
pub fn logm_principal_real(a: &RealMatrix, tol: Tolerance) -> Result<RealMatrix> {
    let l = logm_principal(&super::to_complex(a), tol)?;
    Ok(l.map(|z| z.re))
}

/// `f(A)` for a Hermitian matrix through its eigendecomposition.
pub fn hermitian_function(a: &ComplexMatrix, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let (values, vectors) = super::hermitian_eigen(a);
    let d = ComplexMatrix::from_diagonal(&values.map(|x| Complex64::new(f(x), 0.0)));
    &vectors * d * vectors.adjoint()
}

fn distance_to_cut(z: Complex64) -> f64 {
    if z.re <= 0.0 {
        z.im.abs()
    } else {
        z.norm()
    }
}

fn sqrt_upper_triangular(t: &ComplexMatrix) -> ComplexMatrix {
    let n = t.nrows();
    let mut r = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        r[(i, i)] = t[(i, i)].sqrt();
    }
    for j in 0..n {
        for i in (0..j).rev() {
            let mut s = t[(i, j)];
            for k in i + 1..j {
                s -= r[(i, k)] * r[(k, j)];
            }
            r[(i, j)] = s / (r[(i, i)] + r[(j, j)]);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{real_matrix, to_complex};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn taylor_exp(a: &RealMatrix) -> RealMatrix {
        let n = a.nrows();
        let mut term = RealMatrix::identity(n, n);
        let mut sum = term.clone();
        for k in 1..60 {
            term = &term * a / k as f64;
            sum += &term;
        }
        sum
    }

    #[test]
    fn expm_known_values() {
        let z = RealMatrix::zeros(3, 3);
        assert_eq!(expm(&z), RealMatrix::identity(3, 3));

        let d = expm(&real_matrix(2, 2, &[1.0, 0.0, 0.0, -1.0]));
        assert!((d[(0, 0)] - std::f64::consts::E).abs() < 1e-14);
        assert!((d[(1, 1)] - 1.0 / std::f64::consts::E).abs() < 1e-15);

        let n = expm(&real_matrix(2, 2, &[0.0, 1.0, 0.0, 0.0]));
        assert!((n - real_matrix(2, 2, &[1.0, 1.0, 0.0, 1.0])).norm() < 1e-15);
    }

    #[test]
    fn expm_matches_series_on_small_norms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.random_range(1..7);
            let a = RealMatrix::from_fn(n, n, |_, _| rng.random_range(-0.5..0.5));
            let e = expm(&a);
            let s = taylor_exp(&a);
            assert!((&e - &s).norm() <= 1e-13 * s.norm());
        }
    }

    #[test]
    fn logm_known_values() {
        let tol = Tolerance::default();
        let l = logm_principal_real(&RealMatrix::identity(3, 3), tol).unwrap();
        assert!(l.norm() < 1e-15);

        let e2 = std::f64::consts::E.powi(2);
        let l = logm_principal_real(&real_matrix(2, 2, &[e2, 0.0, 0.0, 1.0]), tol).unwrap();
        assert!((l - real_matrix(2, 2, &[2.0, 0.0, 0.0, 0.0])).norm() < 1e-14);

        let err = logm_principal_real(&real_matrix(2, 2, &[-1.0, 0.0, 0.0, -1.0]), tol);
        assert!(matches!(err, Err(Error::BranchCut(_))));
    }

    #[test]
    fn logm_jordan_block() {
        // log [[1,1],[0,1]] = [[0,1],[0,0]]
        let l = logm_principal_real(&real_matrix(2, 2, &[1.0, 1.0, 0.0, 1.0]), Tolerance::default())
            .unwrap();
        assert!((l - real_matrix(2, 2, &[0.0, 1.0, 0.0, 0.0])).norm() < 1e-14);
    }

    #[test]
    fn logm_rotation_is_principal() {
        let th = 2.5;
        let r = real_matrix(2, 2, &[th.cos(), -th.sin(), th.sin(), th.cos()]);
        let l = logm_principal_real(&r, Tolerance::default()).unwrap();
        assert!((l - real_matrix(2, 2, &[0.0, -th, th, 0.0])).norm() < 1e-13);
    }

    #[test]
    fn exp_log_roundtrip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let tol = Tolerance::default();
        for _ in 0..1000 {
            let n = rng.random_range(1..=8);
            // spectrum off the cut: exponentials of matrices with |Im λ| < π
            let x = ComplexMatrix::from_fn(n, n, |_, _| {
                Complex64::new(rng.random_range(-0.4..0.4), rng.random_range(-0.4..0.4))
            });
            let a = expm(&x);
            let l = logm_principal(&a, tol).unwrap();
            let back = expm(&l);
            assert!((&back - &a).norm() <= 1e-11 * a.norm(), "n={n}");
        }
    }

    #[test]
    fn hermitian_function_square_root() {
        let a = to_complex(&real_matrix(2, 2, &[2.0, 1.0, 1.0, 2.0]));
        let s = hermitian_function(&a, f64::sqrt);
        assert!((&s * &s - a).norm() < 1e-14);
    }
}
