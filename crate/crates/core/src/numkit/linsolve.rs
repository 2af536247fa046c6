use nalgebra::{ComplexField, DMatrix, DVector, SVD};

use super::{ComplexMatrix, ComplexVector, RealMatrix, RealVector};

/// Scalars that both nalgebra and faer understand (`f64` and `Complex64`).
pub trait Scalar: Copy + ComplexField<RealField = f64> + faer::traits::ComplexField<Real = f64> {}
impl Scalar for f64 {}
impl Scalar for super::Complex64 {}

fn to_faer<T: Scalar>(a: &DMatrix<T>) -> faer::Mat<T> {
    faer::Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

fn from_faer<T: Scalar>(a: faer::MatRef<'_, T>) -> DMatrix<T> {
    DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

/// Thin SVD with `U` and `Vᴴ`, computed by faer.
///
/// nalgebra's own SVD loses accuracy on matrices with tightly clustered
/// singular values, which the structured maps of the catalog have.
pub fn svd<T: Scalar>(a: &DMatrix<T>) -> SVD<T, nalgebra::Dyn, nalgebra::Dyn> {
    let (m, n) = a.shape();
    let k = m.min(n);
    if k == 0 {
        return SVD {
            u: Some(DMatrix::zeros(m, 0)),
            v_t: Some(DMatrix::zeros(0, n)),
            singular_values: DVector::zeros(0),
        };
    }
    let f = to_faer(a).thin_svd().expect("SVD iteration converged");
    let s = f.S().column_vector();
    SVD {
        u: Some(from_faer(f.U())),
        v_t: Some(from_faer(f.V()).adjoint()),
        singular_values: DVector::from_fn(k, |i, _| ComplexField::real(s[i])),
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian
/// matrix, computed by faer from the lower triangle.
pub(crate) fn faer_hermitian_eigen<T: Scalar>(a: &DMatrix<T>) -> (DVector<f64>, DMatrix<T>) {
    let n = a.nrows();
    if n == 0 {
        return (DVector::zeros(0), DMatrix::zeros(0, 0));
    }
    let e = to_faer(a).self_adjoint_eigen(faer::Side::Lower).expect("eigen iteration converged");
    let s = e.S().column_vector();
    let values = DVector::from_fn(n, |i, _| ComplexField::real(s[i]));
    (values, from_faer(e.U()))
}

/// Singular values through [`svd`].
pub fn singular_values<T: Scalar>(a: &DMatrix<T>) -> DVector<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return DVector::zeros(0);
    }
    svd(a).singular_values
}

/// Moore–Penrose pseudo-inverse through [`svd`]; singular values
/// `≤ rel_tol · σ_max` are dropped.
pub fn pseudo_inverse<T: Scalar>(a: &DMatrix<T>, rel_tol: f64) -> DMatrix<T> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return DMatrix::zeros(n, m);
    }
    let f = svd(a);
    let cut = rel_tol * singular_max(&f.singular_values);
    let inv = f.singular_values.map(|s| if s > cut && s > 0.0 { T::from_real(1.0 / s) } else { T::zero() });
    let u = f.u.expect("u requested");
    let v_t = f.v_t.expect("v_t requested");
    v_t.adjoint() * DMatrix::from_diagonal(&inv) * u.adjoint()
}

fn padded<T: ComplexField>(a: &DMatrix<T>) -> DMatrix<T> {
    let (m, n) = a.shape();
    if m >= n {
        a.clone()
    } else {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    }
}

fn singular_max(s: &DVector<f64>) -> f64 {
    s.iter().fold(0.0_f64, |acc, &x| acc.max(x))
}

/// Orthonormal basis (as columns) of the kernel of `a`; singular values
/// `≤ rel_tol · σ_max` count as zero.
pub fn null_space<T: Scalar>(a: &DMatrix<T>, rel_tol: f64) -> DMatrix<T> {
    let n = a.ncols();
    if a.nrows() == 0 || n == 0 {
        return DMatrix::identity(n, n);
    }
    let svd = svd(&padded(a));
    let v_t = svd.v_t.expect("v_t requested");
    let cut = rel_tol * singular_max(&svd.singular_values);
    let cols: Vec<DVector<T>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cut)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Orthonormal basis of the column space.
pub fn range_basis<T: Scalar>(a: &DMatrix<T>, rel_tol: f64) -> DMatrix<T> {
    let m = a.nrows();
    if a.ncols() == 0 || m == 0 {
        return DMatrix::zeros(m, 0);
    }
    let svd = svd(a);
    let u = svd.u.expect("u requested");
    let smax = singular_max(&svd.singular_values);
    let cut = rel_tol * smax;
    let cols: Vec<DVector<T>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > cut && s > 0.0)
        .map(|(i, _)| u.column(i).into_owned())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(m, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Numerical rank with relative singular-value cutoff.
pub fn rank<T: Scalar>(a: &DMatrix<T>, rel_tol: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let s = singular_values(a);
    let smax = singular_max(&s);
    s.iter().filter(|&&x| x > rel_tol * smax && x > 0.0).count()
}

fn lstsq_generic<T: Scalar>(
    a: &DMatrix<T>,
    b: &DVector<T>,
) -> (DVector<T>, f64) {
    assert_eq!(a.nrows(), b.len(), "solve_lstsq: dimension mismatch");
    let n = a.ncols();
    if n == 0 || a.nrows() == 0 {
        return (DVector::zeros(n), b.norm());
    }
    let svd = svd(&padded(a));
    let smax = singular_max(&svd.singular_values);
    let eps = (smax * f64::EPSILON * a.nrows().max(n) as f64).max(f64::MIN_POSITIVE);
    let mut rhs = DVector::zeros(svd.u.as_ref().map_or(0, |u| u.nrows()));
    rhs.rows_mut(0, b.len()).copy_from(b);
    let x = svd.solve(&rhs, eps).expect("u and v_t were computed");
    let x: DVector<T> = x.column(0).into_owned();
    let residual = (a * &x - b).norm();
    (x, residual)
}

/// Minimum-norm least-squares solution of `A x ≈ b` and the residual
/// `‖A x − b‖`.
pub fn solve_lstsq(a: &RealMatrix, b: &RealVector) -> (RealVector, f64) {
    lstsq_generic(a, b)
}

pub fn solve_lstsq_complex(a: &ComplexMatrix, b: &ComplexVector) -> (ComplexVector, f64) {
    lstsq_generic(a, b)
}

/// Lawson–Hanson nonnegative least squares: `min ‖A x − b‖` over `x ≥ 0`.
/// Returns the minimizer and the residual norm.
pub fn nnls(a: &RealMatrix, b: &RealVector) -> (RealVector, f64) {
    let n = a.ncols();
    let mut x = RealVector::zeros(n);
    if n == 0 {
        return (x, b.norm());
    }
    let mut passive = vec![false; n];
    let scale = a.norm() * b.norm();
    let w_tol = 1e-13 * scale.max(f64::MIN_POSITIVE);
    let max_outer = 3 * n + 10;

    for _ in 0..max_outer {
        let w = a.transpose() * (b - a * &x);
        let candidate = (0..n)
            .filter(|&j| !passive[j])
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = candidate.filter(|&j| w[j] > w_tol) else {
            break;
        };
        passive[j] = true;

        for _ in 0..3 * n + 10 {
            let idx: Vec<usize> = (0..n).filter(|&k| passive[k]).collect();
            let sub = RealMatrix::from_fn(a.nrows(), idx.len(), |r, c| a[(r, idx[c])]);
            let (zp, _) = solve_lstsq(&sub, b);
            let mut z = RealVector::zeros(n);
            for (c, &k) in idx.iter().enumerate() {
                z[k] = zp[c];
            }
            if idx.iter().all(|&k| z[k] > 0.0) {
                x = z;
                break;
            }
            let alpha = idx
                .iter()
                .filter(|&&k| z[k] <= 0.0)
                .map(|&k| x[k] / (x[k] - z[k]))
                .fold(f64::INFINITY, f64::min);
            x += (z - &x) * alpha;
            for &k in &idx {
                if x[k] <= 1e-15 * (1.0 + x.amax()) {
                    x[k] = 0.0;
                    passive[k] = false;
                }
            }
        }
    }
    let residual = (a * &x - b).norm();
    (x, residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::real_matrix;
    use proptest::prelude::*;

    /// Normal equations with a tiny ridge term, independent of the SVD path.
    fn normal_equations(a: &RealMatrix, b: &RealVector) -> RealVector {
        let n = a.ncols();
        let ata = a.transpose() * a + RealMatrix::identity(n, n) * 1e-14;
        ata.lu().solve(&(a.transpose() * b)).unwrap()
    }

    #[test]
    fn lstsq_examples() {
        let b = RealVector::from_vec(vec![1.0, -2.0, 3.0]);
        let (x, r) = solve_lstsq(&RealMatrix::identity(3, 3), &b);
        assert!((x - &b).norm() < 1e-15 && r < 1e-15);

        let b = RealVector::from_vec(vec![3.0, 4.0]);
        let (x, r) = solve_lstsq(&RealMatrix::zeros(2, 2), &b);
        assert_eq!(x, RealVector::zeros(2));
        assert!((r - 5.0).abs() < 1e-15);

        let a = real_matrix(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let b = RealVector::from_vec(vec![1.0, 1.0]);
        let (x, r) = solve_lstsq(&a, &b);
        let oracle = normal_equations(&a, &b);
        assert!((&x - &oracle).norm() < 1e-12);
        assert!((x - RealVector::from_vec(vec![1.0, 0.0])).norm() < 1e-15);
        assert!((r - 1.0).abs() < 1e-15);
    }

    #[test]
    fn null_space_and_rank() {
        let a = real_matrix(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let k = null_space(&a, 1e-12);
        assert_eq!(k.ncols(), 1);
        assert!((k[(2, 0)].abs() - 1.0).abs() < 1e-15);
        assert_eq!(rank(&a, 1e-12), 2);
        assert_eq!(range_basis(&a, 1e-12).ncols(), 2);
        assert_eq!(rank(&RealMatrix::zeros(2, 2), 1e-12), 0);
    }

    #[test]
    fn nnls_simple_cone() {
        let g = real_matrix(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        let (x, r) = nnls(&g, &RealVector::from_vec(vec![2.0, 3.0]));
        assert!(r < 1e-14 && (x - RealVector::from_vec(vec![2.0, 3.0])).norm() < 1e-14);
        let (x, r) = nnls(&g, &RealVector::from_vec(vec![2.0, -3.0]));
        assert!((r - 3.0).abs() < 1e-14);
        assert!((x - RealVector::from_vec(vec![2.0, 0.0])).norm() < 1e-14);
    }

    proptest! {
        #[test]
        fn residual_never_exceeds_norm_b(
            rows in 1usize..6, cols in 1usize..6,
            data in prop::collection::vec(-10.0f64..10.0, 36),
            rhs in prop::collection::vec(-10.0f64..10.0, 6),
        ) {
            let a = RealMatrix::from_fn(rows, cols, |i, j| data[i * 6 + j]);
            let b = RealVector::from_fn(rows, |i, _| rhs[i]);
            let (_, r) = solve_lstsq(&a, &b);
            prop_assert!(r <= b.norm() * (1.0 + 1e-12) + 1e-12);
        }

        #[test]
        fn nnls_is_feasible_and_no_worse_than_zero(
            data in prop::collection::vec(-5.0f64..5.0, 12),
            rhs in prop::collection::vec(-5.0f64..5.0, 3),
        ) {
            let a = RealMatrix::from_fn(3, 4, |i, j| data[i * 4 + j]);
            let b = RealVector::from_fn(3, |i, _| rhs[i]);
            let (x, r) = nnls(&a, &b);
            prop_assert!(x.iter().all(|&v| v >= 0.0));
            prop_assert!(r <= b.norm() + 1e-12);
        }
    }
}
