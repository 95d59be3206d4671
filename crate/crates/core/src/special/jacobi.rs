//! Jacobi elliptic functions sn, cn, dn and their ratios for real argument.
//!
//! The modulus convention is used throughout: the second argument is the
//! modulus `m` (not the parameter `m^2`), so `dn^2 + m^2 sn^2 = 1`.
//!
//! Evaluation runs the arithmetic-geometric mean down to a vanishing modulus
//! and then climbs back with the descending Landen recurrence. The `m = 1`
//! limit is a separate hyperbolic branch because the AGM stagnates there.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stop the AGM once `c_n / a_n` drops below this.
const AGM_TOL: f64 = 1e-14;
const AGM_MAX_ITER: usize = 64;

/// Default pole-exclusion radius (in argument units) for ratio functions.
pub const DEFAULT_POLE_RADIUS: f64 = 1e-6;

/// Elliptic modulus `m` with `0 <= m <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Modulus(f64);

impl Modulus {
    pub fn new(m: f64) -> Result<Self> {
        if m.is_finite() && (0.0..=1.0).contains(&m) {
            Ok(Modulus(m))
        } else {
            Err(Error::Domain(format!("modulus {m} outside [0, 1]")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Complementary modulus `sqrt(1 - m^2)`, computed without cancellation.
    pub fn complement(self) -> f64 {
        ((1.0 - self.0) * (1.0 + self.0)).sqrt()
    }
}

impl TryFrom<f64> for Modulus {
    type Error = Error;
    fn try_from(m: f64) -> Result<Self> {
        Modulus::new(m)
    }
}

impl From<Modulus> for f64 {
    fn from(m: Modulus) -> f64 {
        m.0
    }
}

/// Values of sn, cn, dn at a common argument and modulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// Ratio (and reciprocal) Jacobi functions in Glaisher notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JacobiRatio {
    Ns,
    Cs,
    Ds,
    Sc,
    Sd,
    Nd,
    Cd,
    Dc,
    Nc,
}

impl JacobiRatio {
    pub const ALL: [JacobiRatio; 9] = [
        JacobiRatio::Ns,
        JacobiRatio::Cs,
        JacobiRatio::Ds,
        JacobiRatio::Sc,
        JacobiRatio::Sd,
        JacobiRatio::Nd,
        JacobiRatio::Cd,
        JacobiRatio::Dc,
        JacobiRatio::Nc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            JacobiRatio::Ns => "ns",
            JacobiRatio::Cs => "cs",
            JacobiRatio::Ds => "ds",
            JacobiRatio::Sc => "sc",
            JacobiRatio::Sd => "sd",
            JacobiRatio::Nd => "nd",
            JacobiRatio::Cd => "cd",
            JacobiRatio::Dc => "dc",
            JacobiRatio::Nc => "nc",
        }
    }

    /// Quotient from a precomputed triple. No pole check.
    pub fn apply(self, t: JacobiTriple) -> f64 {
        match self {
            JacobiRatio::Ns => 1.0 / t.sn,
            JacobiRatio::Cs => t.cn / t.sn,
            JacobiRatio::Ds => t.dn / t.sn,
            JacobiRatio::Sc => t.sn / t.cn,
            JacobiRatio::Sd => t.sn / t.dn,
            JacobiRatio::Nd => 1.0 / t.dn,
            JacobiRatio::Cd => t.cn / t.dn,
            JacobiRatio::Dc => t.dn / t.cn,
            JacobiRatio::Nc => 1.0 / t.cn,
        }
    }

    /// Where the denominator vanishes on the real axis.
    fn pole_family(self) -> PoleFamily {
        match self {
            JacobiRatio::Ns | JacobiRatio::Cs | JacobiRatio::Ds => PoleFamily::EvenK,
            JacobiRatio::Sc | JacobiRatio::Dc | JacobiRatio::Nc => PoleFamily::OddK,
            JacobiRatio::Sd | JacobiRatio::Nd | JacobiRatio::Cd => PoleFamily::None,
        }
    }
}

impl fmt::Display for JacobiRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for JacobiRatio {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        JacobiRatio::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown Jacobi ratio {s:?}")))
    }
}

enum PoleFamily {
    /// Zeros of sn: u = 2jK.
    EvenK,
    /// Zeros of cn: u = (2j+1)K.
    OddK,
    None,
}

/// Result of the AGM descent, reusable for K(m) and for sn/cn/dn.
struct AgmChain {
    a: [f64; AGM_MAX_ITER + 1],
    c: [f64; AGM_MAX_ITER + 1],
    n: usize,
}

fn agm_chain(m: f64) -> AgmChain {
    let mut chain = AgmChain {
        a: [0.0; AGM_MAX_ITER + 1],
        c: [0.0; AGM_MAX_ITER + 1],
        n: 0,
    };
    let mut a = 1.0;
    let mut b = ((1.0 - m) * (1.0 + m)).sqrt();
    let mut c = m;
    chain.a[0] = a;
    chain.c[0] = c;
    let mut n = 0;
    while n < AGM_MAX_ITER && (c / a).abs() >= AGM_TOL {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        n += 1;
        chain.a[n] = a;
        chain.c[n] = c;
    }
    chain.n = n;
    chain
}

/// Complete elliptic integral of the first kind, `K(m) = pi / (2 agm(1, m'))`.
pub fn complete_k(m: Modulus) -> Result<f64> {
    let m = m.value();
    if m == 1.0 {
        return Err(Error::Divergent);
    }
    let chain = agm_chain(m);
    Ok(PI / (2.0 * chain.a[chain.n]))
}

/// sn, cn, dn at real `u` for modulus `m`.
pub fn jacobi(u: f64, m: Modulus) -> Result<JacobiTriple> {
    if !u.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {u}")));
    }
    Ok(jacobi_unchecked(u, m.value()))
}

/// Same as [`jacobi`] for an already validated modulus value; returns NaNs for
/// invalid input instead of an error. Used on hot evaluation paths.
pub fn jacobi_unchecked(u: f64, m: f64) -> JacobiTriple {
    if !(0.0..=1.0).contains(&m) || !u.is_finite() {
        return JacobiTriple {
            sn: f64::NAN,
            cn: f64::NAN,
            dn: f64::NAN,
        };
    }
    if m == 0.0 {
        let (s, c) = u.sin_cos();
        return JacobiTriple { sn: s, cn: c, dn: 1.0 };
    }
    if m == 1.0 {
        let sech = 1.0 / u.cosh();
        return JacobiTriple {
            sn: u.tanh(),
            cn: sech,
            dn: sech,
        };
    }

    let chain = agm_chain(m);
    let n = chain.n;
    let a_n = chain.a[n];

    // Reduce to one real period 4K = 2 pi / a_n.
    let period = 2.0 * PI / a_n;
    let u = u - period * (u / period).round();

    let mut phi = (2f64).powi(n as i32) * a_n * u;
    for i in (1..=n).rev() {
        let ratio = chain.c[i] / chain.a[i];
        phi = 0.5 * (phi + (ratio * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    let ms = m * sn;
    let dn = ((1.0 - ms) * (1.0 + ms)).sqrt();
    let m_comp = ((1.0 - m) * (1.0 + m)).sqrt();
    JacobiTriple {
        sn,
        cn,
        dn: dn.clamp(m_comp, 1.0),
    }
}

/// Nearest real pole of `kind` to `u`, or `None` if the ratio is entire on the real line.
pub fn nearest_ratio_pole(kind: JacobiRatio, u: f64, m: Modulus) -> Option<f64> {
    let family = kind.pole_family();
    if m.value() == 1.0 {
        // cn = dn = sech never vanish; sn = tanh vanishes only at the origin.
        return match family {
            PoleFamily::EvenK => Some(0.0),
            _ => None,
        };
    }
    let k = complete_k(m).ok()?;
    match family {
        PoleFamily::EvenK => Some(2.0 * k * (u / (2.0 * k)).round()),
        PoleFamily::OddK => Some(2.0 * k * ((u - k) / (2.0 * k)).round() + k),
        PoleFamily::None => None,
    }
}

/// Ratio function with the default pole-exclusion radius.
pub fn jacobi_ratio(kind: JacobiRatio, u: f64, m: Modulus) -> Result<f64> {
    jacobi_ratio_with_radius(kind, u, m, DEFAULT_POLE_RADIUS)
}

pub fn jacobi_ratio_with_radius(kind: JacobiRatio, u: f64, m: Modulus, radius: f64) -> Result<f64> {
    let triple = jacobi(u, m)?;
    if let Some(p) = nearest_ratio_pole(kind, u, m) {
        if (u - p).abs() < radius {
            return Err(Error::Pole {
                location: p,
                requested: u,
                radius,
            });
        }
    }
    Ok(kind.apply(triple))
}

/// `ns(u) + cs(u) = (1 + cn) / sn`, evaluated so that the removable
/// singularities at `u = (4j+2)K` stay finite. Only `u = 4jK` are poles.
pub fn ns_plus_cs_unchecked(t: JacobiTriple) -> f64 {
    if t.cn >= 0.0 {
        (1.0 + t.cn) / t.sn
    } else {
        t.sn / (1.0 - t.cn)
    }
}

/// Checked variant of [`ns_plus_cs_unchecked`].
pub fn ns_plus_cs(u: f64, m: Modulus, radius: f64) -> Result<f64> {
    let triple = jacobi(u, m)?;
    let pole = if m.value() == 1.0 {
        Some(0.0)
    } else {
        complete_k(m).ok().map(|k| 4.0 * k * (u / (4.0 * k)).round())
    };
    if let Some(p) = pole {
        if (u - p).abs() < radius {
            return Err(Error::Pole {
                location: p,
                requested: u,
                radius,
            });
        }
    }
    Ok(ns_plus_cs_unchecked(triple))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(m: f64) -> Modulus {
        Modulus::new(m).unwrap()
    }

    #[test]
    fn values_at_zero() {
        let t = jacobi(0.0, md(0.7)).unwrap();
        assert_eq!((t.sn, t.cn, t.dn), (0.0, 1.0, 1.0));
    }

    #[test]
    fn circular_limit() {
        let t = jacobi(PI / 2.0, md(0.0)).unwrap();
        assert!((t.sn - 1.0).abs() < 1e-15);
        assert!(t.cn.abs() < 1e-15);
        assert_eq!(t.dn, 1.0);
    }

    #[test]
    fn hyperbolic_limit() {
        let t = jacobi(1.0, md(1.0)).unwrap();
        assert!((t.sn - 0.761_594_155_955_764_9).abs() < 1e-15);
        assert!((t.cn - 0.648_054_273_663_885_4).abs() < 1e-15);
        assert_eq!(t.cn, t.dn);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(Modulus::new(1.5).is_err());
        assert!(Modulus::new(-0.1).is_err());
        assert!(Modulus::new(f64::NAN).is_err());
        assert!(jacobi(f64::INFINITY, md(0.5)).is_err());
        assert!(matches!(complete_k(md(1.0)), Err(Error::Divergent)));
    }

    #[test]
    fn k_circular() {
        assert!((complete_k(md(0.0)).unwrap() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn periodicity() {
        for &m in &[0.2, 0.5, 0.8, 0.99] {
            let k = complete_k(md(m)).unwrap();
            for &u in &[0.3, -1.1, 2.7] {
                let a = jacobi(u, md(m)).unwrap();
                let b = jacobi(u + 4.0 * k, md(m)).unwrap();
                let c = jacobi(u + 2.0 * k, md(m)).unwrap();
                assert!((a.sn - b.sn).abs() < 1e-12);
                assert!((a.cn - b.cn).abs() < 1e-12);
                assert!((a.dn - c.dn).abs() < 1e-12);
                // half period flips sn and cn
                assert!((a.sn + c.sn).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ratio_values_and_poles() {
        assert!((jacobi_ratio(JacobiRatio::Ns, PI / 2.0, md(0.0)).unwrap() - 1.0).abs() < 1e-15);
        let ds = jacobi_ratio(JacobiRatio::Ds, 0.001, md(0.5)).unwrap();
        assert!((ds * 0.001 - 1.0).abs() < 1e-5);

        let m = md(0.6);
        let k = complete_k(m).unwrap();
        match jacobi_ratio(JacobiRatio::Sc, k + 1e-8, m) {
            Err(Error::Pole { location, .. }) => assert!((location - k).abs() < 1e-14),
            other => panic!("expected pole, got {other:?}"),
        }
        assert!(jacobi_ratio(JacobiRatio::Cs, 2.0 * k, m).is_err());
        assert!(jacobi_ratio(JacobiRatio::Nd, 2.0 * k, m).is_ok());
    }

    #[test]
    fn ns_plus_cs_removable_point() {
        let m = md(std::f64::consts::FRAC_1_SQRT_2);
        let k = complete_k(m).unwrap();
        // (1 + cn)/sn -> 0 at u = 2K
        let v = ns_plus_cs(2.0 * k, m, 1e-6).unwrap();
        assert!(v.abs() < 1e-12);
        assert!(ns_plus_cs(4.0 * k, m, 1e-6).is_err());
        let t = jacobi(0.8, m).unwrap();
        let direct = 1.0 / t.sn + t.cn / t.sn;
        assert!((ns_plus_cs(0.8, m, 1e-6).unwrap() - direct).abs() < 1e-14);
    }
}
