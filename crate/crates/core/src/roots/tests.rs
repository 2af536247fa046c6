use super::*;
use crate::catalog::{sl2_algebra, su2_algebra, su2_plus_sl2_algebra};
use crate::numkit::real_matrix;
use proptest::prelude::*;
use rand::SeedableRng;

fn sl2_t() -> RealMatrix {
    real_matrix(3, 1, &[0.0, 1.0, -1.0])
}

fn mixed_t() -> RealMatrix {
    RealMatrix::from_fn(6, 2, |i, j| match (i, j) {
        (0, 0) => 1.0,
        (4, 1) => 1.0,
        (5, 1) => -1.0,
        _ => 0.0,
    })
}

fn sorted_coefficients(datum: &RootDatum) -> Vec<f64> {
    let mut v: Vec<f64> = datum.roots.iter().map(|r| r.i_alpha_coefficients()[0]).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn tol() -> Tolerance {
    Tolerance::default()
}

#[test]
fn sl2_roots_are_noncompact_simple() {
    let datum = root_decomposition(&sl2_algebra(), &sl2_t(), tol()).unwrap();
    assert_eq!(datum.rank(), 1);
    assert_eq!(datum.roots.len(), 2);
    // ad(E12 − E21) has eigenvalues ±2i
    let coeffs = sorted_coefficients(&datum);
    assert!((coeffs[0] + 2.0).abs() < 1e-10 && (coeffs[1] - 2.0).abs() < 1e-10);
    for r in &datum.roots {
        assert_eq!(r.kind, RootType::NoncompactSimple);
    }
}

#[test]
fn sl2_tag_matches_a_matrix_commutator() {
    // with real matrices X, the star is −X̄; [X, X*] is a multiple s of
    // T = E12 − E21, and α([x, x*]) = s·α(T)
    let alg = sl2_algebra();
    let datum = root_decomposition(&alg, &sl2_t(), tol()).unwrap();
    for r in &datum.roots {
        let x = alg.element_complex(&r.vector);
        let star = -x.map(|z| z.conj());
        let c = &x * &star - &star * &x;
        assert!((c[(0, 0)]).norm() < 1e-12 && (c[(0, 1)] + c[(1, 0)]).norm() < 1e-12);
        let s = c[(0, 1)];
        let value = (s * r.values[0]).re;
        assert!(value < 0.0);
    }
}

#[test]
fn su2_roots_are_compact() {
    let su2 = su2_algebra();
    let datum = root_decomposition(&su2, &real_matrix(3, 1, &[1.0, 0.0, 0.0]), tol()).unwrap();
    let coeffs = sorted_coefficients(&datum);
    assert!((coeffs[0] + 2.0).abs() < 1e-10 && (coeffs[1] - 2.0).abs() < 1e-10);
    assert!(datum.roots.iter().all(|r| r.kind == RootType::Compact));
}

#[test]
fn mixed_algebra_has_both_kinds() {
    let datum = root_decomposition(&su2_plus_sl2_algebra(), &mixed_t(), tol()).unwrap();
    assert_eq!(datum.roots.len(), 4);
    for r in &datum.roots {
        let c = r.i_alpha_coefficients();
        // su(2) roots live on the first Cartan direction, sl₂ roots on the second
        if c[0].abs() > 1e-8 {
            assert!(c[1].abs() < 1e-10);
            assert_eq!(r.kind, RootType::Compact);
        } else {
            assert!((c[1].abs() - 2.0).abs() < 1e-10);
            assert_eq!(r.kind, RootType::NoncompactSimple);
        }
    }
}

#[test]
fn rejects_bad_cartan_subalgebras() {
    let su2 = su2_algebra();
    let non_abelian = real_matrix(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    assert!(matches!(root_decomposition(&su2, &non_abelian, tol()), Err(Error::NotCartan(_))));
    // the su(2) torus alone has a 4-dimensional centralizer in su(2) ⊕ sl₂
    let partial = mixed_t().columns(0, 1).into_owned();
    assert!(matches!(root_decomposition(&su2_plus_sl2_algebra(), &partial, tol()), Err(Error::NotCartan(_))));
    // ½diag(1, −1) acts with real eigenvalues
    let split = real_matrix(3, 1, &[1.0, 0.0, 0.0]);
    assert!(matches!(root_decomposition(&sl2_algebra(), &split, tol()), Err(Error::NotCartan(_))));
    assert!(matches!(
        root_decomposition(&sl2_algebra(), &real_matrix(2, 1, &[1.0, 0.0]), tol()),
        Err(Error::AmbientMismatch { expected: 3, got: 2 })
    ));
}

#[test]
fn positive_systems_on_the_mixed_algebra() {
    let datum = root_decomposition(&su2_plus_sl2_algebra(), &mixed_t(), tol()).unwrap();
    let x0 = RealVector::from_vec(vec![0.5, 1.0]);
    let positive = positive_system(&datum, &x0, tol()).unwrap();
    assert_eq!(positive.len(), 2);
    assert!(matches!(positive_system(&datum, &RealVector::from_vec(vec![1.0, 0.5]), tol()), Err(Error::NotAdapted)));
    assert!(matches!(positive_system(&datum, &RealVector::from_vec(vec![1.0, 0.0]), tol()), Err(Error::NotRegular)));
    assert!(matches!(
        positive_system(&datum, &RealVector::from_vec(vec![1.0]), tol()),
        Err(Error::AmbientMismatch { .. })
    ));

    // only the noncompact positive root constrains C_max: x₂ ≥ 0
    let cmax = c_max(&datum, &x0, tol()).unwrap();
    assert!(cmax.contains(&RealVector::from_vec(vec![5.0, 1.0]), tol()).unwrap());
    assert!(cmax.contains(&RealVector::from_vec(vec![-5.0, 0.0]), tol()).unwrap());
    assert!(!cmax.contains(&RealVector::from_vec(vec![0.0, -1.0]), tol()).unwrap());
}

#[test]
fn adapted_search_finds_a_valid_x0() {
    let datum = root_decomposition(&su2_plus_sl2_algebra(), &mixed_t(), tol()).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::from_seed([3; 32]);
    let x0 = find_adapted_x0(&datum, 1000, tol(), &mut rng).unwrap();
    assert!(x0[1].abs() > x0[0].abs());
    // su(2) alone has no noncompact roots, so every regular x₀ is adapted
    let su2 = root_decomposition(&su2_algebra(), &real_matrix(3, 1, &[1.0, 0.0, 0.0]), tol()).unwrap();
    assert!(find_adapted_x0(&su2, 10, tol(), &mut rng).is_ok());
}

#[test]
fn sl2_c_max_is_the_positive_ray() {
    let datum = root_decomposition(&sl2_algebra(), &sl2_t(), tol()).unwrap();
    let cmax = c_max(&datum, &RealVector::from_element(1, 1.0), tol()).unwrap();
    assert!(cmax.contains(&RealVector::from_element(1, 2.0), tol()).unwrap());
    assert!(!cmax.contains(&RealVector::from_element(1, -2.0), tol()).unwrap());
}

#[test]
fn classify_root_indexing() {
    let datum = root_decomposition(&sl2_algebra(), &sl2_t(), tol()).unwrap();
    assert_eq!(classify_root(&datum, 1).unwrap(), RootType::NoncompactSimple);
    assert!(matches!(classify_root(&datum, 2), Err(Error::InvalidInput(_))));
}

#[test]
fn json_uses_snake_case_tags() {
    let datum = root_decomposition(&su2_plus_sl2_algebra(), &mixed_t(), tol()).unwrap();
    let v = serde_json::to_value(datum.to_json()).unwrap();
    let types: Vec<&str> = v["types"].as_array().unwrap().iter().map(|t| t.as_str().unwrap()).collect();
    assert_eq!(types.iter().filter(|t| **t == "compact").count(), 2);
    assert_eq!(types.iter().filter(|t| **t == "noncompact_simple").count(), 2);
    assert_eq!(v["cartan"].as_array().unwrap().len(), 2);
}

proptest! {
    #[test]
    fn tag_ignores_complex_rescaling(re in -5.0..5.0f64, im in -5.0..5.0f64) {
        prop_assume!(re.hypot(im) > 1e-3);
        let alg = su2_plus_sl2_algebra();
        let datum = root_decomposition(&alg, &mixed_t(), tol()).unwrap();
        for (i, r) in datum.roots.iter().enumerate() {
            let scaled = &r.vector * Complex64::new(re, im);
            prop_assert_eq!(classify_root_vector(&alg, &datum, i, &scaled, tol()).unwrap(), r.kind);
        }
    }
}
