//! Oracles and measurements shared by the integration suites. The oracles
//! (quadrature, differencing) never call into the library's numerics.

#![allow(dead_code)]

use std::f64::consts::PI;

/// `K` at modulus `m` (parameter `m^2`) by the trapezoid rule on the full period of the integrand, which
/// converges geometrically for a smooth periodic function.
pub fn quadrature_k(m: f64) -> f64 {
    let n = 4096;
    let h = PI / n as f64;
    let sum: f64 = (0..n)
        .map(|i| {
            let s = (i as f64 * h).sin();
            1.0 / (1.0 - m * m * s * s).sqrt()
        })
        .sum();
    sum * h / 2.0
}

/// Incomplete integral `F(phi, m)` at modulus `m` by composite Gauss-Legendre, 5 nodes per panel.
pub fn incomplete_f(phi: f64, m: f64) -> f64 {
    const X: [f64; 5] = [
        0.0,
        -0.538_469_310_105_683_1,
        0.538_469_310_105_683_1,
        -0.906_179_845_938_664,
        0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let panels = 64;
    let h = phi / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (x, w) in X.iter().zip(W) {
            let s = (mid + 0.5 * h * x).sin();
            total += w / (1.0 - m * m * s * s).sqrt();
        }
    }
    total * h / 2.0
}

/// First derivative by two levels of Richardson extrapolation on the central
/// difference, O(h^6).
pub fn richardson_d1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    let (d0, d1, d2) = (d(h), d(h / 2.0), d(h / 4.0));
    let r0 = (4.0 * d1 - d0) / 3.0;
    let r1 = (4.0 * d2 - d1) / 3.0;
    (16.0 * r1 - r0) / 15.0
}

/// Second derivative, same scheme.
pub fn richardson_d2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    let (d0, d1, d2) = (d(h), d(h / 2.0), d(h / 4.0));
    let r0 = (4.0 * d1 - d0) / 3.0;
    let r1 = (4.0 * d2 - d1) / 3.0;
    (16.0 * r1 - r0) / 15.0
}

/// Quartic right-hand side evaluated independently of the library.
pub fn quartic(c: [f64; 5], f: f64) -> f64 {
    c[0] + f * (c[1] + f * (c[2] + f * (c[3] + f * c[4])))
}

/// Worst two-form residual of `profile` against `c` on `n` points of `[a, b]`,
/// normalized by `1 + |rhs|`. `scale` is the profile's length scale.
pub fn two_form_residual(profile: impl Fn(f64) -> f64, c: [f64; 5], a: f64, b: f64, n: usize, scale: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let xi = a + (b - a) * i as f64 / (n - 1) as f64;
        let f = profile(xi);
        let d1 = richardson_d1(&profile, xi, 1e-3 * scale);
        let d2 = richardson_d2(&profile, xi, 1e-2 * scale);
        let rhs1 = quartic(c, f);
        let rhs2 = c[1] / 2.0 + c[2] * f + 1.5 * c[3] * f * f + 2.0 * c[4] * f * f * f;
        worst = worst
            .max((d1 * d1 - rhs1).abs() / (1.0 + rhs1.abs()))
            .max((d2 - rhs2).abs() / (1.0 + rhs2.abs()));
    }
    worst
}

/// Seeded generator for oracle sample points.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub mod special {
    use ellipsolve::special::{complete_k, jacobi, Modulus, WeierstrassInvariants, WeierstrassLattice};
    use rand::Rng;

    use super::{richardson_d1, rng};

    fn md(m: f64) -> Modulus {
        Modulus::new(m).unwrap()
    }

    /// Worst of `|sn^2 + cn^2 - 1|` and `|dn^2 + m^2 sn^2 - 1|` over `n` draws
    /// of `u` in `[-20, 20]`, `m` in `[0, 1]`.
    pub fn identity_residual(n: usize, seed: u64) -> f64 {
        let mut r = rng(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..n {
            let u = r.gen_range(-20.0..20.0);
            let m = r.gen_range(0.0..=1.0);
            let t = jacobi(u, md(m)).unwrap();
            worst = worst
                .max((t.sn * t.sn + t.cn * t.cn - 1.0).abs())
                .max((t.dn * t.dn + m * m * t.sn * t.sn - 1.0).abs());
        }
        worst
    }

    /// Sup errors against `(sin, cos, 1)` at m = 0 and `(tanh, sech, sech)` at
    /// m = 1 on `[-5, 5]`.
    pub fn limit_errors() -> (f64, f64) {
        let mut circ: f64 = 0.0;
        let mut hyp: f64 = 0.0;
        for i in 0..=1000 {
            let u = -5.0 + 10.0 * i as f64 / 1000.0;
            let a = jacobi(u, md(0.0)).unwrap();
            circ = circ
                .max((a.sn - u.sin()).abs())
                .max((a.cn - u.cos()).abs())
                .max((a.dn - 1.0).abs());
            let b = jacobi(u, md(1.0)).unwrap();
            let sech = 1.0 / u.cosh();
            hyp = hyp
                .max((b.sn - u.tanh()).abs())
                .max((b.cn - sech).abs())
                .max((b.dn - sech).abs());
        }
        (circ, hyp)
    }

    /// Worst `|sn(K(m), m) - 1|` over m = 0.1 .. 0.9.
    pub fn quarter_period_error() -> f64 {
        (1..=9)
            .map(|i| {
                let m = md(i as f64 / 10.0);
                (jacobi(complete_k(m).unwrap(), m).unwrap().sn - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }

    /// `|p'^2 - (4p^3 - g2 p - g3)|` relative to the size of its terms, with
    /// `p'` from Richardson differencing of `p` itself.
    pub fn weierstrass_de_residual(lat: &WeierstrassLattice, z: f64, h: f64) -> f64 {
        let inv = lat.invariants();
        let f = |z: f64| lat.eval_unchecked(z).0;
        let p = f(z);
        let dp = richardson_d1(f, z, h);
        let rhs = 4.0 * p * p * p - inv.g2 * p - inv.g3;
        let scale = (dp * dp).abs() + (4.0 * p * p * p).abs() + (inv.g2 * p).abs() + inv.g3.abs();
        (dp * dp - rhs).abs() / scale
    }

    /// Worst relative residual over `z` in `[0.05, 3]` and integer `g2, g3` in
    /// `[-10, 10]`, skipping points within 0.05 of a lattice point. Returns the
    /// residual and the number of points checked.
    pub fn weierstrass_box() -> (f64, usize) {
        let mut worst: f64 = 0.0;
        let mut checked = 0;
        for i in 0..=20 {
            for j in 0..=20 {
                let (g2, g3) = (-10.0 + i as f64, -10.0 + j as f64);
                let lat = WeierstrassLattice::new(WeierstrassInvariants::new(g2, g3).unwrap());
                for k in 0..60 {
                    let z = 0.05 + (3.0 - 0.05) * k as f64 / 59.0;
                    let dist = (z - lat.nearest_pole(z)).abs();
                    if dist < 0.05 {
                        continue;
                    }
                    worst = worst.max(weierstrass_de_residual(&lat, z, 0.02 * dist));
                    checked += 1;
                }
            }
        }
        (worst, checked)
    }
}
