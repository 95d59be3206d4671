//! Weierstrass `℘(z; g2, g3)` on the real axis.
//!
//! The cubic `4t^3 - g2 t - g3` is solved once per invariant pair and `℘` is
//! expressed through Jacobi functions of its roots. Close to the origin the
//! Laurent series is used instead.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::jacobi::{complete_k, jacobi_unchecked, Modulus};
use crate::error::{Error, Result};

pub const DEFAULT_POLE_RADIUS: f64 = 1e-6;

/// Laurent terms kept near the origin (powers up to z^(2*LAURENT_TERMS)).
const LAURENT_TERMS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeierstrassInvariants {
    pub g2: f64,
    pub g3: f64,
}

impl WeierstrassInvariants {
    pub fn new(g2: f64, g3: f64) -> Result<Self> {
        if g2.is_finite() && g3.is_finite() {
            Ok(WeierstrassInvariants { g2, g3 })
        } else {
            Err(Error::Domain(format!("non-finite invariants ({g2}, {g3})")))
        }
    }

    /// Modular discriminant `g2^3 - 27 g3^2`.
    pub fn discriminant(&self) -> f64 {
        self.g2.powi(3) - 27.0 * self.g3 * self.g3
    }
}

#[derive(Debug, Clone, Copy)]
enum Reduction {
    /// g2 = g3 = 0: ℘ = 1/z^2.
    Degenerate,
    /// Three real roots e1 >= e2 >= e3: ℘ = e3 + (e1 - e3) / sn^2(z sqrt(e1 - e3), k).
    ThreeReal { e3: f64, spread: f64, k: f64 },
    /// One real root e2: ℘ = e2 + H (1 + cn(2 sqrt(H) z, k)) / (1 - cn(2 sqrt(H) z, k)).
    OneReal { e2: f64, h: f64, k: f64 },
}

/// Precomputed roots and real period for one invariant pair.
///
/// Construction does all the root finding; evaluation is read-only.
#[derive(Debug, Clone)]
pub struct WeierstrassLattice {
    inv: WeierstrassInvariants,
    reduction: Reduction,
    /// Real period 2ω; `None` when the real axis holds a single pole.
    real_period: Option<f64>,
    laurent: [f64; LAURENT_TERMS + 1],
    laurent_radius: f64,
}

fn polish_root(t: f64, g2: f64, g3: f64) -> f64 {
    let mut t = t;
    for _ in 0..3 {
        let f = 4.0 * t * t * t - g2 * t - g3;
        let df = 12.0 * t * t - g2;
        if df.abs() < 1e-300 {
            break;
        }
        let next = t - f / df;
        if !next.is_finite() || (next - t).abs() > 1e-3 * (1.0 + t.abs()) {
            break;
        }
        t = next;
    }
    t
}

/// Laurent coefficients c_k of ℘ = z^-2 + sum_{k>=2} c_k z^(2k-2).
fn laurent_coefficients(g2: f64, g3: f64) -> [f64; LAURENT_TERMS + 1] {
    let mut c = [0.0; LAURENT_TERMS + 1];
    c[2] = g2 / 20.0;
    c[3] = g3 / 28.0;
    for k in 4..=LAURENT_TERMS {
        let s: f64 = (2..=k - 2).map(|j| c[j] * c[k - j]).sum();
        c[k] = 3.0 * s / (((2 * k + 1) * (k - 3)) as f64);
    }
    c
}

impl WeierstrassLattice {
    pub fn new(inv: WeierstrassInvariants) -> Self {
        let WeierstrassInvariants { g2, g3 } = inv;
        let disc = inv.discriminant();
        let (reduction, real_period) = if g2 == 0.0 && g3 == 0.0 {
            (Reduction::Degenerate, None)
        } else if disc >= 0.0 {
            // t^3 + p t + q = 0 with p = -g2/4, q = -g3/4; trigonometric roots.
            let p = -g2 / 4.0;
            let q = -g3 / 4.0;
            let r = (-p / 3.0).sqrt();
            let arg = ((3.0 * q) / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            let mut roots = [
                polish_root(2.0 * r * theta.cos(), g2, g3),
                polish_root(2.0 * r * (theta - 2.0 * PI / 3.0).cos(), g2, g3),
                polish_root(2.0 * r * (theta - 4.0 * PI / 3.0).cos(), g2, g3),
            ];
            roots.sort_by(|a, b| b.total_cmp(a));
            let [e1, e2, e3] = roots;
            let spread = e1 - e3;
            let k = ((e2 - e3) / spread).clamp(0.0, 1.0).sqrt();
            let period = if k < 1.0 {
                Modulus::new(k)
                    .ok()
                    .and_then(|m| complete_k(m).ok())
                    .map(|kk| 2.0 * kk / spread.sqrt())
            } else {
                None
            };
            (Reduction::ThreeReal { e3, spread, k }, period)
        } else {
            let p = -g2 / 4.0;
            let q = -g3 / 4.0;
            let s = (q * q / 4.0 + p * p * p / 27.0).sqrt();
            let e2 = polish_root((-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt(), g2, g3);
            let h = (3.0 * e2 * e2 - g2 / 4.0).sqrt();
            let k = (0.5 - 3.0 * e2 / (4.0 * h)).clamp(0.0, 1.0).sqrt();
            let period = Modulus::new(k)
                .ok()
                .and_then(|m| complete_k(m).ok())
                .map(|kk| 2.0 * kk / h.sqrt());
            (Reduction::OneReal { e2, h, k }, period)
        };
        let scale = 1.0 + g2.abs().powf(0.25) + g3.abs().powf(1.0 / 6.0);
        WeierstrassLattice {
            inv,
            reduction,
            real_period,
            laurent: laurent_coefficients(g2, g3),
            laurent_radius: 0.05 / scale,
        }
    }

    pub fn invariants(&self) -> WeierstrassInvariants {
        self.inv
    }

    /// Real period 2ω of ℘ along the real axis, if the lattice has one.
    pub fn real_period(&self) -> Option<f64> {
        self.real_period
    }

    /// Closest lattice point on the real axis.
    pub fn nearest_pole(&self, z: f64) -> f64 {
        match self.real_period {
            Some(p) => p * (z / p).round(),
            None => 0.0,
        }
    }

    fn laurent_eval(&self, z: f64) -> (f64, f64) {
        let z2 = z * z;
        let mut p = 0.0;
        let mut dp = 0.0;
        for k in (2..=LAURENT_TERMS).rev() {
            // term c_k z^(2k-2); derivative (2k-2) c_k z^(2k-3)
            p = p * z2 + self.laurent[k];
            dp = dp * z2 + (2 * k - 2) as f64 * self.laurent[k];
        }
        // p currently holds sum c_k z^(2k-4); scale back
        let value = 1.0 / z2 + p * z2;
        let deriv = -2.0 / (z2 * z) + dp * z;
        (value, deriv)
    }

    /// ℘ and ℘' at real `z`, without a pole check.
    pub fn eval_unchecked(&self, z: f64) -> (f64, f64) {
        let zr = match self.real_period {
            Some(p) => z - p * (z / p).round(),
            None => z,
        };
        if zr.abs() < self.laurent_radius {
            return self.laurent_eval(zr);
        }
        match self.reduction {
            Reduction::Degenerate => (1.0 / (zr * zr), -2.0 / (zr * zr * zr)),
            Reduction::ThreeReal { e3, spread, k } => {
                let root = spread.sqrt();
                let t = jacobi_unchecked(zr * root, k);
                let s2 = t.sn * t.sn;
                let value = e3 + spread / s2;
                let deriv = -2.0 * spread * root * t.cn * t.dn / (s2 * t.sn);
                (value, deriv)
            }
            Reduction::OneReal { e2, h, k } => {
                let root = h.sqrt();
                let t = jacobi_unchecked(2.0 * root * zr, k);
                // 1 - cn loses accuracy near cn = 1; use 1 - cn = sn^2 / (1 + cn).
                let one_minus = if t.cn > 0.0 {
                    t.sn * t.sn / (1.0 + t.cn)
                } else {
                    1.0 - t.cn
                };
                let value = e2 + h * (1.0 + t.cn) / one_minus;
                let deriv = -4.0 * h * root * t.sn * t.dn / (one_minus * one_minus);
                (value, deriv)
            }
        }
    }

    pub fn eval(&self, z: f64, radius: f64) -> Result<(f64, f64)> {
        if !z.is_finite() {
            return Err(Error::Domain(format!("non-finite argument {z}")));
        }
        let pole = self.nearest_pole(z);
        if (z - pole).abs() < radius {
            return Err(Error::Pole {
                location: pole,
                requested: z,
                radius,
            });
        }
        Ok(self.eval_unchecked(z))
    }
}

/// ℘(z; g2, g3) with the default pole-exclusion radius.
pub fn weierstrass_p(z: f64, inv: WeierstrassInvariants) -> Result<f64> {
    WeierstrassLattice::new(inv)
        .eval(z, DEFAULT_POLE_RADIUS)
        .map(|(p, _)| p)
}

/// (℘, ℘') with the default pole-exclusion radius.
pub fn weierstrass_p_with_derivative(z: f64, inv: WeierstrassInvariants) -> Result<(f64, f64)> {
    WeierstrassLattice::new(inv).eval(z, DEFAULT_POLE_RADIUS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(g2: f64, g3: f64) -> WeierstrassInvariants {
        WeierstrassInvariants::new(g2, g3).unwrap()
    }

    #[test]
    fn degenerate_lattice() {
        assert_eq!(weierstrass_p(2.0, inv(0.0, 0.0)).unwrap(), 0.25);
    }

    #[test]
    fn laurent_leading_terms() {
        // z^-2 + g2 z^2/20 + O(z^6) for g3 = 0
        let p = weierstrass_p(0.1, inv(1.0, 0.0)).unwrap();
        let series = 100.0 + 0.01 / 20.0;
        assert!((p - series).abs() < 1e-9, "{p}");
    }

    #[test]
    fn pole_at_origin_and_lattice() {
        assert!(matches!(weierstrass_p(0.0, inv(1.0, 0.5)), Err(Error::Pole { .. })));
        let lat = WeierstrassLattice::new(inv(2.0, 1.0));
        let period = lat.real_period().unwrap();
        assert!(matches!(lat.eval(period + 1e-9, 1e-6), Err(Error::Pole { .. })));
        // periodic
        let (a, _) = lat.eval(0.7, 1e-6).unwrap();
        let (b, _) = lat.eval(0.7 + period, 1e-6).unwrap();
        assert!((a - b).abs() < 1e-10 * a.abs());
    }

    #[test]
    fn double_root_limits() {
        // g3 < 0 with Δ = 0: ℘ = c + 3c csch^2(sqrt(3c) z), c = sqrt(g2/12)
        let c: f64 = 0.5;
        let g2 = 12.0 * c * c;
        let g3 = -8.0 * c * c * c;
        let z: f64 = 0.9;
        let expected = c + 3.0 * c / ((3.0 * c).sqrt() * z).sinh().powi(2);
        let got = weierstrass_p(z, inv(g2, g3)).unwrap();
        assert!((got - expected).abs() < 1e-9, "{got} vs {expected}");
        // g3 > 0 with Δ = 0: ℘ = -c + 3c csc^2(sqrt(3c) z)
        let expected = -c + 3.0 * c / ((3.0 * c).sqrt() * z).sin().powi(2);
        let got = weierstrass_p(z, inv(g2, -g3)).unwrap();
        assert!((got - expected).abs() < 1e-9, "{got} vs {expected}");
    }

    #[test]
    fn analytic_derivative_satisfies_cubic() {
        for &(g2, g3) in &[(2.0, 1.0), (-3.0, 2.0), (5.0, -7.0), (1.0, 0.0), (-1.0, -1.0)] {
            let lat = WeierstrassLattice::new(inv(g2, g3));
            for &z in &[0.01, 0.05, 0.3, 0.7, 1.3] {
                let Ok((p, dp)) = lat.eval(z, 1e-3) else { continue };
                let rhs = 4.0 * p * p * p - g2 * p - g3;
                let scale = 1.0 + (4.0 * p * p * p).abs() + (g2 * p).abs() + g3.abs();
                assert!((dp * dp - rhs).abs() / scale < 1e-12, "g=({g2},{g3}) z={z}");
            }
        }
    }
}
