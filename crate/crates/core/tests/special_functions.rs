mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use common::{incomplete_f, quadrature_k, richardson_d1, rng, special};
use ellipsolve::special::{
    complete_k, jacobi, jacobi_ratio, weierstrass_p, JacobiRatio, Modulus, WeierstrassInvariants, WeierstrassLattice,
};
use ellipsolve::Error;
use proptest::prelude::*;
use rand::Rng;

fn md(m: f64) -> Modulus {
    Modulus::new(m).unwrap()
}

#[test]
fn jacobi_identities_on_ten_thousand_samples() {
    let worst = special::identity_residual(10_000, 7);
    assert!(worst <= 1e-12, "{worst}");
}

#[test]
fn degenerate_limits() {
    let (circ, hyp) = special::limit_errors();
    assert!(circ <= 1e-12, "m=0: {circ}");
    assert!(hyp <= 1e-10, "m=1: {hyp}");
}

#[test]
fn sn_at_quarter_period() {
    assert!(special::quarter_period_error() <= 1e-10);
}

#[test]
fn complete_k_matches_quadrature() {
    for m in [0.0, 0.1, 0.3, 0.5, 0.8, 0.9, 0.99] {
        let k = complete_k(md(m)).unwrap();
        let q = quadrature_k(m);
        assert!((k - q).abs() <= 1e-12 * q, "m={m}: {k} vs {q}");
    }
    assert!(matches!(complete_k(md(1.0)), Err(Error::Divergent)));
}

#[test]
fn sn_inverts_the_incomplete_integral() {
    // u = F(am u | m) on the first quarter period, with am u = asin(sn u).
    let mut r = rng(11);
    for _ in 0..200 {
        let m = r.gen_range(0.0..0.95);
        let k = complete_k(md(m)).unwrap();
        let u = r.gen_range(0.0..0.98 * k);
        let phi = jacobi(u, md(m)).unwrap().sn.asin();
        assert!((incomplete_f(phi, m) - u).abs() <= 1e-11, "u={u} m={m}");
    }
}

#[test]
fn printed_values() {
    let t = jacobi(0.0, md(0.7)).unwrap();
    assert_eq!((t.sn, t.cn, t.dn), (0.0, 1.0, 1.0));
    let t = jacobi(PI / 2.0, md(0.0)).unwrap();
    assert!((t.sn - 1.0).abs() < 1e-15 && t.cn.abs() < 1e-15 && t.dn == 1.0);
    let t = jacobi(1.0, md(1.0)).unwrap();
    assert!((t.sn - 0.761_594_2).abs() < 1e-7);
    assert!((t.cn - 0.648_054_3).abs() < 1e-7 && (t.dn - 0.648_054_3).abs() < 1e-7);

    assert!((jacobi_ratio(JacobiRatio::Ns, PI / 2.0, md(0.0)).unwrap() - 1.0).abs() < 1e-15);
    let ds = jacobi_ratio(JacobiRatio::Ds, 0.001, md(0.5)).unwrap();
    assert!((ds * 0.001 - 1.0).abs() < 1e-5);
    let m = md(FRAC_1_SQRT_2);
    let t = jacobi(1.0, m).unwrap();
    assert!((jacobi_ratio(JacobiRatio::Cs, 1.0, m).unwrap() - t.cn / t.sn).abs() < 1e-15);

    assert!((complete_k(md(0.0)).unwrap() - PI / 2.0).abs() < 1e-15);
}

#[test]
fn ratio_pole_carries_location() {
    let m = md(0.4);
    match jacobi_ratio(JacobiRatio::Ns, 1e-9, m) {
        Err(Error::Pole { location, .. }) => assert_eq!(location, 0.0),
        other => panic!("{other:?}"),
    }
}

#[test]
fn weierstrass_printed_values() {
    let inv = |g2, g3| WeierstrassInvariants::new(g2, g3).unwrap();
    assert_eq!(weierstrass_p(2.0, inv(0.0, 0.0)).unwrap(), 0.25);
    // Laurent series z^-2 + g2 z^2/20 + g3 z^4/28; next term g2^2 z^6/1200.
    let p = weierstrass_p(0.1, inv(1.0, 0.0)).unwrap();
    assert!((p - 100.0005).abs() < 1e-8, "{p}");
}

#[test]
fn weierstrass_differential_equation_on_the_box() {
    let (worst, checked) = special::weierstrass_box();
    assert!(checked > 10_000);
    assert!(worst <= 1e-8, "{worst}");
}

#[test]
fn weierstrass_printed_de_point() {
    let lat = WeierstrassLattice::new(WeierstrassInvariants::new(2.0, 1.0).unwrap());
    assert!(special::weierstrass_de_residual(&lat, 0.7, 1e-3) <= 1e-8);
}

proptest! {
    #[test]
    fn k_is_monotone(a in 0.0f64..0.999, b in 0.0f64..0.999) {
        prop_assume!(a < b);
        prop_assert!(complete_k(md(a)).unwrap() < complete_k(md(b)).unwrap());
    }

    #[test]
    fn derivative_of_sn_is_cn_dn(u in -6.0f64..6.0, m in 0.0f64..0.99) {
        let d = richardson_d1(|x| jacobi(x, md(m)).unwrap().sn, u, 1e-3);
        let t = jacobi(u, md(m)).unwrap();
        prop_assert!((d - t.cn * t.dn).abs() < 1e-9);
    }

    #[test]
    fn quarter_period_shift(u in -4.0f64..4.0, m in 0.05f64..0.95) {
        // sn(u + K) = cd(u)
        let k = complete_k(md(m)).unwrap();
        let a = jacobi(u + k, md(m)).unwrap();
        let b = jacobi(u, md(m)).unwrap();
        prop_assert!((a.sn - b.cn / b.dn).abs() < 1e-12);
    }

    #[test]
    fn continuous_at_the_limits(u in -5.0f64..5.0) {
        // Leading corrections are O(m^2) at m -> 0 and O(1 - m^2) at m -> 1.
        let small = jacobi(u, md(1e-4)).unwrap();
        prop_assert!((small.sn - u.sin()).abs() <= 1e-8 * (1.0 + u.abs()));
        prop_assert!((small.cn - u.cos()).abs() <= 1e-8 * (1.0 + u.abs()));
        let near = jacobi(u, md((1.0f64 - 1e-10).sqrt())).unwrap();
        prop_assert!((near.sn - u.tanh()).abs() <= 1e-8);
        prop_assert!((near.dn - 1.0 / u.cosh()).abs() <= 1e-8);
    }
}
