//! Built-in models: input validation, involutivity, counits, and the open-closed pairs.

mod common;

use cofrob_core::check::Verdict;
use cofrob_core::error::Error;
use cofrob_core::models::*;
use cofrob_core::structures::*;
use cofrob_core::tqft::*;
use cofrob_core::GradedMap;
use common::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn invalid_parameters_are_rejected() {
    assert!(matches!(sphere_cohomology(0), Err(Error::Input(_))));
    assert!(matches!(loop_sphere(4, 6), Err(Error::Input(_))));
    assert!(matches!(rabinowitz_loop_sphere(1, 6), Err(Error::Input(_))));
    assert!(matches!(based_loop_sphere(3, 2), Err(Error::Input(_))));
    assert!(matches!(circle_models(1, VectorField::Plus, CircleFlavor::Loop), Err(Error::Input(_))));
}

#[test]
fn manifold_input_must_be_poincare_duality_algebra() {
    let mut bad = sphere_cup(2);
    bad.integral.clear();
    match manifold_from_cup(&bad) {
        Err(Error::NotPerfect(m)) => assert!(m.contains("Poincaré")),
        other => panic!("unexpected {:?}", other),
    }
}

#[test]
fn opposite_parity_models_are_involutive() {
    for d in [rabinowitz_loop_sphere(3, 6).unwrap(), loop_sphere(3, 6).unwrap(), sphere_cohomology(3).unwrap()] {
        let main = &check_involutive(&d)[0];
        assert_eq!(main.verdict, Verdict::Pass, "{:?}", main);
    }
}

#[test]
fn based_loop_homology_is_not_involutive() {
    // μλ(U^k) = Σ_{i+j=k-1, i,j≥0} U^{k-1} = k U^{k-1}
    let d = based_loop_sphere(3, 6).unwrap();
    let main = &check_involutive(&d)[0];
    assert_eq!(main.verdict, Verdict::Fail);
    let u = |k: i64| d.module.index_of(&format!("U^{}", k)).unwrap();
    for k in 1..=6 {
        let x = cofrob_core::Element::basis(d.shape(1), vec![u(k)]);
        let y = d.mu.apply(&d.lambda.apply(&x).unwrap()).unwrap();
        assert_eq!(rational(&y.coeff(&[u(k - 1)])), r(k));
    }
}

#[test]
fn even_spheres_are_not_involutive() {
    let d = sphere_cohomology(2).unwrap();
    let reports = check_involutive(&d);
    assert_eq!(reports[0].verdict, Verdict::Fail);
    // the equivalent forms μc = 0 and pλ = 0 agree with the main verdict
    assert!(reports.iter().filter(|r| r.required).all(|r| r.name == "μλ = 0" || r.passed()));
}

#[test]
fn counits_exist_exactly_for_the_rabinowitz_models() {
    assert!(counit_exists(&rabinowitz_loop_sphere(3, 6).unwrap()));
    assert!(counit_exists(&based_rabinowitz_loop_sphere(3, 6).unwrap()));
    assert!(!counit_exists(&loop_sphere(3, 6).unwrap()));
    assert!(!counit_exists(&based_loop_sphere(3, 6).unwrap()));
}

#[test]
fn window_growth_keeps_verdicts_and_decides_more() {
    let small = check_cofrobenius(&rabinowitz_loop_sphere(3, 5).unwrap(), Flavor::Biunital);
    let large = check_cofrobenius(&rabinowitz_loop_sphere(3, 7).unwrap(), Flavor::Biunital);
    for (a, b) in small.iter().zip(&large) {
        assert_eq!(a.name, b.name);
        assert_eq!(a.verdict, b.verdict);
        assert!(b.checked >= a.checked);
    }
}

#[test]
fn circle_rabinowitz_components_are_labelled_apart() {
    let d = circle_models(4, VectorField::Plus, CircleFlavor::Rabinowitz).unwrap();
    assert!(d.module.index_of("A+U+^3").is_some());
    // the minus component carries reversed exponents
    let minus = circle_rabinowitz_component(4, VectorField::Minus, true).unwrap();
    assert!(minus.module.index_of("U-^-4").is_some());
    require("based minus component", &check_cofrobenius(&minus, Flavor::Biunital), true).unwrap();
}

#[test]
fn equator_cozipper_is_the_pushforward() {
    let t = equator_tqft();
    let expected = [(key(&["θ"], &["ω"]), r(1))].into();
    assert_eq!(table(&t.cozipper), expected);
    require("equator", &check_duality_pairing_form(&t), true).unwrap();
    require("equator", &check_cozipper_coalgebra(&t), true).unwrap();
    require("equator", &check_module_relations(&t), true).unwrap();
}

#[test]
fn diagonal_and_slice_module_relations() {
    for t in [diagonal_tqft(), slice_tqft()] {
        require("pair", &check_cozipper_coalgebra(&t), true).unwrap();
        require("pair", &check_module_relations(&t), true).unwrap();
    }
}

#[test]
fn loop_tqft_cardy_gate_is_closed_and_holds() {
    for n in [1, 3] {
        let t = loop_tqft_sphere(n, 5).unwrap();
        assert!(!cardy_gate(&t));
        require("loop pair", &run_full_tqft_suite(&t), false).unwrap();
    }
}

#[test]
fn tqft_constructor_checks_degrees() {
    let t = equator_tqft();
    let wrong = GradedMap::zero(t.cozipper.src.clone(), t.cozipper.dst.clone(), t.cozipper.degree + 1);
    assert!(matches!(
        OpenClosedTQFT::new(t.closed.clone(), t.open.clone(), t.zipper.clone(), wrong),
        Err(Error::Degree(_))
    ));
    assert!(matches!(
        OpenClosedTQFT::new(t.closed.clone(), t.open.clone(), t.cozipper.clone(), t.zipper.clone()),
        Err(Error::Shape(_))
    ));
}

#[test]
fn restriction_must_be_a_ring_map() {
    let err = submanifold_tqft(&s2xs2_cup(), &sphere_cup(2), &[("x", &[("ω", 1)])]).unwrap_err();
    assert!(matches!(err, Error::Input(_)));
}

#[test]
fn broken_zipper_fails_relation_three_with_witness() {
    let mut t = diagonal_tqft();
    let mut rng = StdRng::seed_from_u64(3);
    t.zipper = flip_entries(&t.zipper, &mut rng, 0.0);
    let reports = check_zipper_algebra_map(&t);
    assert!(reports.iter().any(|r| r.verdict == Verdict::Fail && r.witness.is_some()));
}
