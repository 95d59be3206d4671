mod common;

use std::collections::BTreeSet;

use common::{rng, two_form_residual};
use ellipsolve::catalog::errata::errata_kind;
use ellipsolve::catalog::{
    applicable_families, catalog, classify, corrected_catalog, draw_admissible, evaluate_family, family,
    validate_family, FamilyId, ResolveOptions, ResolvedFamily, SampleSpec,
};
use ellipsolve::elliptic::EllipticCoefficients;
use ellipsolve::expr::{Env, Symbol};
use ellipsolve::matcher::match_coefficients;
use ellipsolve::pde::{reduce, PdeId};
use ellipsolve::report::Verdict;
use ellipsolve::verify::verify_ode;
use ellipsolve::Error;
use proptest::prelude::*;

fn bind(id: FamilyId, pairs: &[(Symbol, f64)]) -> ResolvedFamily {
    let env = pairs.iter().fold(Env::new(), |e, (s, v)| e.with(*s, *v));
    ResolvedFamily::new(family(id).unwrap(), env).unwrap()
}

fn coeffs(c: [f64; 5]) -> [(Symbol, f64); 5] {
    [
        (Symbol::C0, c[0]),
        (Symbol::C1, c[1]),
        (Symbol::C2, c[2]),
        (Symbol::C3, c[3]),
        (Symbol::C4, c[4]),
    ]
}

#[test]
fn forty_one_evaluators_over_thirty_eight_ids() {
    assert_eq!(catalog().len(), 41);
    assert_eq!(corrected_catalog().len(), 41);
    let ids: BTreeSet<u8> = catalog().iter().map(|f| f.id.index).collect();
    assert_eq!(ids, (1..=38).collect());
    let branched: BTreeSet<u8> = catalog()
        .iter()
        .filter(|f| f.id.branch.is_some())
        .map(|f| f.id.index)
        .collect();
    assert_eq!(branched, [3, 10, 16].into());
}

#[test]
fn f1_is_sech() {
    let mut p = coeffs([0.0, 0.0, 1.0, 0.0, -1.0]).to_vec();
    p.push((Symbol::Eps, 1.0));
    let rf = bind(FamilyId::new(1), &p);
    assert!((evaluate_family(&rf, 0.0).unwrap() - 1.0).abs() < 1e-15);
    for xi in [-2.5, -0.3, 0.7, 2.0] {
        assert!((evaluate_family(&rf, xi).unwrap() - 1.0 / f64::cosh(xi)).abs() < 1e-14);
    }
    let r = validate_family(&rf, &SampleSpec::default().with_range(-3.0, 3.0)).unwrap();
    assert!(r.max_residual() <= 1e-8, "{}", r.max_residual());
    let oracle = two_form_residual(|x| 1.0 / x.cosh(), [0.0, 0.0, 1.0, 0.0, -1.0], -3.0, 3.0, 64, 1.0);
    assert!(oracle <= 1e-8, "{oracle}");
}

#[test]
fn f6_and_f14_printed_values() {
    let mut p = coeffs([0.0, 0.0, 0.0, 0.0, 4.0]).to_vec();
    p.push((Symbol::Eps, 1.0));
    let f6 = bind(FamilyId::new(6), &p);
    assert!((evaluate_family(&f6, 0.5).unwrap() - 1.0).abs() < 1e-15);

    let mut p = coeffs([1.0, 0.0, -2.0, 0.0, 1.0]).to_vec();
    p.push((Symbol::Eps, 1.0));
    let f14 = bind(FamilyId::new(14), &p);
    assert_eq!(evaluate_family(&f14, 0.0).unwrap(), 0.0);
    assert!((evaluate_family(&f14, 0.8).unwrap() - 0.8f64.tanh()).abs() < 1e-15);
}

#[test]
fn f22_weierstrass_instance() {
    let rf = bind(FamilyId::new(22), &coeffs([0.0, -1.0, 0.0, 4.0, 0.0]));
    let r = verify_ode(&rf, &SampleSpec::default().with_range(0.2, 2.0)).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{}", r.max_residual());
}

#[test]
fn f15_pole_without_exclusion() {
    let mut p = coeffs([1.0, 0.0, -2.0, 0.0, 1.0]).to_vec();
    p.push((Symbol::Eps, 1.0));
    let rf = bind(FamilyId::new(15), &p);
    let spec = SampleSpec::default().with_range(-1.0, 1.0).with_exclusion(false);
    assert!(matches!(verify_ode(&rf, &spec), Err(Error::Pole { .. })));
    let spec = SampleSpec::default().with_range(-1.0, 1.0);
    assert_eq!(verify_ode(&rf, &spec).unwrap().verdict, Verdict::Pass);
}

#[test]
fn f4_kink_needs_no_correction() {
    let mut p = coeffs([0.0, 0.0, 1.0, -2.0, 1.0]).to_vec();
    p.push((Symbol::Eps, 1.0));
    let rf = bind(FamilyId::new(4), &p);
    let r = verify_ode(&rf, &SampleSpec::default().with_tol(1e-8)).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{}", r.max_residual());
    assert!(errata_kind(FamilyId::new(4)).is_none());
    // the profile is -(c2/c3)(1 + tanh(xi/2))
    let oracle = two_form_residual(
        |x| 0.5 * (1.0 + (x / 2.0).tanh()),
        [0.0, 0.0, 1.0, -2.0, 1.0],
        -6.0,
        6.0,
        64,
        1.0,
    );
    assert!(oracle <= 1e-8);
}

#[test]
fn classification_examples() {
    let opts = ResolveOptions::default();
    let c = EllipticCoefficients::new(0.0, 0.0, 1.0, 0.0, -1.0).unwrap();
    let ids: Vec<FamilyId> = applicable_families(&c, &opts).unwrap().iter().map(|r| r.id()).collect();
    assert!(ids.contains(&FamilyId::new(1)));
    assert!(!ids.contains(&FamilyId::new(2)));

    let c = EllipticCoefficients::new(1.0, 0.0, -2.0, 0.0, 1.0).unwrap();
    let ids: Vec<FamilyId> = applicable_families(&c, &opts).unwrap().iter().map(|r| r.id()).collect();
    assert!(ids.contains(&FamilyId::new(14)) && ids.contains(&FamilyId::new(15)));
    assert!(ids.windows(2).all(|w| w[0] < w[1]), "ordered by id");

    // mBBM at omega = 3, B = 0
    let env = Env::new().with(Symbol::Omega, 3.0).with(Symbol::B, 0.0);
    let m = match_coefficients(&reduce(PdeId::Mbbm, &env).unwrap());
    assert_eq!(m.c, [0.0, -2.0 / 3.0, 0.0, 1.0 / 18.0]);
    let free = ResolveOptions {
        c0: ellipsolve::catalog::C0Mode::Free { hint: None },
        ..Default::default()
    };
    let cls = classify(&m.coefficients(), &free).unwrap();
    assert!(cls.admitted.iter().any(|r| r.family.case_id == 3));
    for r in &cls.admitted {
        let rep = verify_ode(r, &SampleSpec::default()).unwrap();
        assert_ne!(rep.verdict, Verdict::Fail, "{}: {}", r.id(), rep.max_residual());
    }
}

#[test]
fn f17_approaches_the_kink_as_m_goes_to_one() {
    let m: f64 = 0.999;
    let (c2, c4) = (-2.0, 1.0);
    let c0 = c2 * c2 * m * m / (c4 * (m * m + 1.0) * (m * m + 1.0));
    let mut p = coeffs([c0, 0.0, c2, 0.0, c4]).to_vec();
    p.push((Symbol::M, m));
    let f17 = bind(FamilyId::new(17), &p);
    let kink = |x: f64| (-c2 / (2.0 * c4)).sqrt() * ((-c2 / 2.0f64).sqrt() * x).tanh();
    let sup = (0..=400)
        .map(|i| -2.0 + 4.0 * i as f64 / 400.0)
        .map(|x| (evaluate_family(&f17, x).unwrap() - kink(x)).abs())
        .fold(0.0, f64::max);
    assert!(sup <= 1e-2, "{sup}");
}

#[test]
fn f17_cnoidal_instance() {
    let m: f64 = 0.6;
    let c0 = m * m / (1.0 + m * m).powi(2);
    let mut p = coeffs([c0, 0.0, -1.0, 0.0, 1.0]).to_vec();
    p.push((Symbol::M, m));
    let rf = bind(FamilyId::new(17), &p);
    assert_eq!(verify_ode(&rf, &SampleSpec::default()).unwrap().verdict, Verdict::Pass);
}

#[test]
fn corrected_families_pass_an_independent_oracle() {
    // Draws whose sample window is free of poles, checked with the test's own
    // differencing rather than the library's.
    let mut r = rng(2024);
    let mut checked = 0;
    for f in corrected_catalog() {
        for _ in 0..3 {
            let env = draw_admissible(f, &mut r).unwrap();
            let rf = ResolvedFamily::unchecked(f.clone(), env);
            let s = rf.scale();
            let (a, b) = (-3.0 * s, 3.0 * s);
            let widened = rf.poles().within(a - 0.1 * s, b + 0.1 * s);
            if !matches!(widened, Ok(ref v) if v.is_empty()) {
                continue;
            }
            let c = rf.coefficients().unwrap().as_array();
            let res = two_form_residual(|x| evaluate_family(&rf, x).unwrap(), c, a, b, 48, s);
            assert!(res <= 1e-6, "{}: {res} at {:?}", f.id, rf.parameter_map());
            checked += 1;
        }
    }
    assert!(checked >= 60, "{checked}");
}

#[test]
fn epsilon_branches_share_the_bound() {
    let mut r = rng(99);
    for f in corrected_catalog().iter().filter(|f| f.epsilon) {
        for _ in 0..5 {
            let env = draw_admissible(f, &mut r).unwrap();
            let plus = ResolvedFamily::unchecked(f.clone(), env);
            let minus = plus.with_epsilon(-1.0);
            if !f.admits(&minus.params) {
                continue;
            }
            let spec = SampleSpec::default();
            let a = verify_ode(&plus, &spec).unwrap();
            let b = verify_ode(&minus, &spec).unwrap();
            assert_eq!(a.verdict, Verdict::Pass, "{} ε=+1", f.id);
            assert_eq!(b.verdict, Verdict::Pass, "{} ε=-1", f.id);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn seeded_draws_validate(index in 0usize..41, seed in any::<u64>()) {
        let f = &corrected_catalog()[index];
        let env = draw_admissible(f, &mut rng(seed)).unwrap();
        prop_assert!(f.admits(&env));
        let rf = ResolvedFamily::unchecked(f.clone(), env);
        let rep = verify_ode(&rf, &SampleSpec::default()).unwrap();
        prop_assert_eq!(rep.verdict, Verdict::Pass, "{} {}", f.id, rep.max_residual());
    }

    #[test]
    fn sech_family_scales(c2 in 0.1f64..4.0, c4 in -4.0f64..-0.1) {
        // F1 with c3 = 0 is sqrt(-c2/c4) sech(sqrt(c2) xi)
        let mut p = coeffs([0.0, 0.0, c2, 0.0, c4]).to_vec();
        p.push((Symbol::Eps, 1.0));
        let rf = bind(FamilyId::new(1), &p);
        for xi in [-1.0, 0.0, 0.5, 2.0] {
            let expected = (-c2 / c4).sqrt() / (c2.sqrt() * xi).cosh();
            let got = evaluate_family(&rf, xi).unwrap();
            prop_assert!((got - expected).abs() <= 1e-13 * expected.abs().max(1.0));
        }
    }
}
