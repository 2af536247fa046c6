use super::*;
use crate::catalog;
use crate::numkit::{real_matrix, Complex64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sl2_element(m: [f64; 4]) -> GroupElement {
    catalog::build_sl2().group_element(&real_matrix(2, 2, &m)).unwrap()
}

fn vec3(a: f64, b: f64, c: f64) -> RealVector {
    RealVector::from_vec(vec![a, b, c])
}

/// `[[a, b], [c, d]] = [[1, b/d], [0, 1]] · diag(1/d, d) · [[1, 0], [c/d, 1]]`
/// whenever `d ≠ 0`.
fn sl2_plus_first_oracle(m: [f64; 4]) -> (RealVector, RealMatrix, RealVector) {
    let [_, b, c, d] = m;
    (vec3(0.0, b / d, 0.0), real_matrix(2, 2, &[1.0 / d, 0.0, 0.0, d]), vec3(0.0, 0.0, c / d))
}

#[test]
fn sl2_factorization_matches_closed_form() {
    let sl2 = catalog::build_sl2();
    let m = [2.0, 1.0, 1.0, 1.0];
    let f = triangular_factor(&sl2_element(m), &sl2.grading, Tolerance::default()).unwrap();
    let (xp, g0, xm) = sl2_plus_first_oracle(m);
    assert!((&f.x_plus - xp).amax() < 1e-12);
    assert!((&f.x_minus - xm).amax() < 1e-12);
    assert!((f.g0.matrix().map(|z| z.re) - g0).amax() < 1e-12);
    assert!(f.residual < 1e-12);
    assert_eq!(f.order, FactorOrder::PlusZeroMinus);
}

#[test]
fn sl2_opposite_order() {
    // [[1, 0], [y, 1]] · diag(a, 1/a) · [[1, x], [0, 1]] with a = 2, x = y = ½
    let sl2 = catalog::build_sl2();
    let g = sl2_element([2.0, 1.0, 1.0, 1.0]);
    let f = triangular_factor_ordered(&g, &sl2.grading, FactorOrder::MinusZeroPlus, Tolerance::default()).unwrap();
    assert_eq!(f.order, FactorOrder::MinusZeroPlus);
    assert!((&f.x_plus - vec3(0.0, 0.5, 0.0)).amax() < 1e-12);
    assert!((&f.x_minus - vec3(0.0, 0.0, 0.5)).amax() < 1e-12);
    assert!((f.g0.matrix().map(|z| z.re) - real_matrix(2, 2, &[2.0, 0.0, 0.0, 0.5])).amax() < 1e-12);
    assert!((f.product().matrix() - g.matrix()).camax() < 1e-12);
}

#[test]
fn weyl_element_is_outside_the_open_cell() {
    let sl2 = catalog::build_sl2();
    let w = sl2_element([0.0, 1.0, -1.0, 0.0]);
    for order in [FactorOrder::PlusZeroMinus, FactorOrder::MinusZeroPlus] {
        let r = triangular_factor_ordered(&w, &sl2.grading, order, Tolerance::default());
        assert!(matches!(r, Err(Error::NotInOpenCell(_))), "{order:?}: {r:?}");
    }
    assert!(matches!(
        member_decomposed(&w, &sl2.grading, &sl2.cone, Tolerance::default()),
        Err(Error::NotInOpenCell(_))
    ));
}

#[test]
fn factorization_is_idempotent_on_the_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let tol = Tolerance::default();
    for e in catalog::all_entries() {
        for _ in 0..10 {
            let g = crate::verify::sample_decomposed(&mut rng, &e, 0.5);
            for order in [FactorOrder::PlusZeroMinus, FactorOrder::MinusZeroPlus] {
                let f = triangular_factor_ordered(&g, &e.grading, order, tol).unwrap();
                assert!(f.residual < 1e-9, "{}", e.name);
                assert!(e.grading.eigenspace_residual(&f.x_plus, 1) < 1e-10);
                assert!(e.grading.eigenspace_residual(&f.x_minus, -1) < 1e-10);
                let h = e.grading.h();
                assert!((f.g0.act(h) - h).norm() < 1e-9, "{}", e.name);
                let again = triangular_factor_ordered(&f.product(), &e.grading, order, tol).unwrap();
                assert!((&again.x_plus - &f.x_plus).amax() < 1e-8);
                assert!((&again.x_minus - &f.x_minus).amax() < 1e-8);
            }
        }
    }
}

#[test]
fn decomposed_membership_on_known_sl2_elements() {
    let sl2 = catalog::build_sl2();
    let tol = Tolerance::default();
    for (m, expected) in [
        ([1.0, 1.0, 0.0, 1.0], true),
        ([2.0, 1.0, 1.0, 1.0], true),
        ([1.0, -1.0, 0.0, 1.0], false),
        ([1.0, 0.0, -0.5, 1.0], false),
    ] {
        let g = sl2_element(m);
        assert_eq!(member_decomposed(&g, &sl2.grading, &sl2.cone, tol).unwrap(), expected, "{m:?}");
        assert_eq!(member_shc(&g, &sl2.grading, &sl2.cone, tol).unwrap(), expected, "{m:?}");
    }
}

#[test]
fn polar_factor_recovers_its_inputs() {
    let sl2 = catalog::build_sl2();
    let alg = &sl2.algebra;
    let tol = Tolerance::default();
    let g0 = GroupElement::exp(alg, &vec3(0.6, 0.0, 0.0));
    let x = vec3(0.0, 0.4, 0.7);
    let s = g0.mul(&GroupElement::exp(alg, &x));
    let p = polar_factor(&s, &sl2.grading, tol).unwrap();
    assert!((&p.x - &x).amax() < 1e-10);
    assert!((p.g0.matrix() - g0.matrix()).camax() < 1e-10);
    assert!(p.residual < 1e-10);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for e in catalog::all_entries() {
        for _ in 0..5 {
            let g0 = crate::sampling::random_g0_element(&mut rng, &e.grading, 0.5);
            let v = crate::sampling::random_vector(&mut rng, e.algebra.dim(), 0.3);
            let x = e.grading.component(&v, 1) + e.grading.component(&v, -1);
            let s = g0.mul(&GroupElement::exp(&e.algebra, &x));
            let p = polar_factor(&s, &e.grading, tol).unwrap();
            assert!((&p.x - &x).amax() < 1e-8, "{}", e.name);
            assert!(p.residual < 1e-9, "{}", e.name);
        }
    }
}

#[test]
fn polar_factor_rejects_the_branch_cut() {
    // for a rotation R(θ), s♯s = R(2θ), which is −1 at θ = π/2
    let sl2 = catalog::build_sl2();
    let r = polar_factor(&sl2_element([0.0, -1.0, 1.0, 0.0]), &sl2.grading, Tolerance::default());
    assert!(matches!(r, Err(Error::BranchCut(_))), "{r:?}");
}

#[test]
fn parabolic_membership() {
    let sl2 = catalog::build_sl2();
    let tol = Tolerance::default();
    let upper = sl2_element([2.0, 3.0, 0.0, 0.5]);
    let lower = sl2_element([2.0, 0.0, 3.0, 0.5]);
    let full = sl2_element([2.0, 1.0, 1.0, 1.0]);
    assert!(member_p(&upper, &sl2.grading, 1, tol).unwrap());
    assert!(!member_p(&upper, &sl2.grading, -1, tol).unwrap());
    assert!(member_p(&lower, &sl2.grading, -1, tol).unwrap());
    assert!(!member_p(&lower, &sl2.grading, 1, tol).unwrap());
    assert!(!member_p(&full, &sl2.grading, 1, tol).unwrap());
    assert!(!member_p(&full, &sl2.grading, -1, tol).unwrap());
    assert!(matches!(member_p(&full, &sl2.grading, 0, tol), Err(Error::InvalidInput(_))));
}

#[test]
fn strip_check_on_the_sl2_ray() {
    let sl2 = catalog::build_sl2();
    let tol = Tolerance::default();
    assert!(strip_check_abelian(&vec3(0.0, 1.0, 0.0), &sl2.c_plus, 16, tol).unwrap());
    assert!(!strip_check_abelian(&vec3(0.0, -1.0, 0.0), &sl2.c_plus, 16, tol).unwrap());
    assert!(strip_check_abelian(&RealVector::zeros(3), &sl2.c_plus, 0, tol).unwrap());
}

#[test]
fn factorization_json_shape() {
    let sl2 = catalog::build_sl2();
    let f = triangular_factor(&sl2_element([2.0, 1.0, 1.0, 1.0]), &sl2.grading, Tolerance::default()).unwrap();
    let v = serde_json::to_value(f.to_json()).unwrap();
    assert_eq!(v["order"], "plus_zero_minus");
    assert_eq!(v["x_plus"].as_array().unwrap().len(), 3);
    assert!(v.get("g0").is_some() && v.get("residual").is_some());
}

fn sl2_from(a: f64, b: f64, c: f64) -> [f64; 4] {
    [a, b, c, (1.0 + b * c) / a]
}

proptest! {
    #[test]
    fn sl2_membership_matches_sign_conditions(
        a in prop_oneof![-3.0..-0.2f64, 0.2..3.0f64],
        b in -3.0..3.0f64,
        c in -3.0..3.0f64,
    ) {
        let m = sl2_from(a, b, c);
        let [a, b, c, d] = m;
        // the membership test is only decisive away from the boundary
        prop_assume!((a * b).abs() > 1e-6 && (c * d).abs() > 1e-6 && (b * c).abs() > 1e-6);
        let sl2 = catalog::build_sl2();
        let closed = a * b >= 0.0 && c * d >= 0.0 && b * c >= 0.0;
        prop_assert_eq!(member_shc(&sl2_element(m), &sl2.grading, &sl2.cone, Tolerance::default()).unwrap(), closed);
    }

    #[test]
    fn sl2_factorization_matches_oracle(
        a in prop_oneof![-3.0..-0.3f64, 0.3..3.0f64],
        b in -3.0..3.0f64,
        c in -3.0..3.0f64,
    ) {
        let m = sl2_from(a, b, c);
        prop_assume!(m[3].abs() > 0.2 && m[3].abs() < 5.0);
        let sl2 = catalog::build_sl2();
        let f = triangular_factor(&sl2_element(m), &sl2.grading, Tolerance::default()).unwrap();
        let (xp, g0, xm) = sl2_plus_first_oracle(m);
        prop_assert!((&f.x_plus - xp).amax() < 1e-9);
        prop_assert!((&f.x_minus - xm).amax() < 1e-9);
        prop_assert!((f.g0.matrix() - g0.map(|x| Complex64::new(x, 0.0))).camax() < 1e-9);
    }
}
