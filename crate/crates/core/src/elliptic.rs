//! The general elliptic equation `F'^2 = c0 + c1 F + c2 F^2 + c3 F^3 + c4 F^4`
//! and its differentiated second form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EllipticCoefficients {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

/// Case-selection quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discriminants {
    /// `c3^2 - 4 c2 c4`
    pub delta_case1: f64,
    /// `c1^2 - 4 c0 c2`
    pub delta_case2: f64,
    /// `c2^2 - 4 c0 c4`
    pub delta_case3: f64,
}

impl EllipticCoefficients {
    pub fn new(c0: f64, c1: f64, c2: f64, c3: f64, c4: f64) -> Result<Self> {
        let c = EllipticCoefficients { c0, c1, c2, c3, c4 };
        if c.as_array().iter().all(|v| v.is_finite()) {
            Ok(c)
        } else {
            Err(Error::Domain(format!("non-finite elliptic coefficients {c:?}")))
        }
    }

    pub fn from_array(c: [f64; 5]) -> Result<Self> {
        Self::new(c[0], c[1], c[2], c[3], c[4])
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.c0, self.c1, self.c2, self.c3, self.c4]
    }

    /// True when `c1..c4` all vanish, so the equation reduces to `F'^2 = c0`.
    pub fn is_constant_rhs(&self) -> bool {
        self.c1 == 0.0 && self.c2 == 0.0 && self.c3 == 0.0 && self.c4 == 0.0
    }

    pub fn discriminants(&self) -> Discriminants {
        discriminants(self)
    }
}

/// Right-hand side of the first form (Horner).
pub fn rhs_quartic(f: f64, c: &EllipticCoefficients) -> f64 {
    (((c.c4 * f + c.c3) * f + c.c2) * f + c.c1) * f + c.c0
}

/// `d/dF` of [`rhs_quartic`].
pub fn rhs_quartic_derivative(f: f64, c: &EllipticCoefficients) -> f64 {
    ((4.0 * c.c4 * f + 3.0 * c.c3) * f + 2.0 * c.c2) * f + c.c1
}

/// Right-hand side of the second form `u'' = c1/2 + c2 u + (3 c3/2) u^2 + 2 c4 u^3`.
pub fn rhs_second_form(u: f64, c: &EllipticCoefficients) -> f64 {
    ((2.0 * c.c4 * u + 1.5 * c.c3) * u + c.c2) * u + 0.5 * c.c1
}

pub fn discriminants(c: &EllipticCoefficients) -> Discriminants {
    Discriminants {
        delta_case1: c.c3 * c.c3 - 4.0 * c.c2 * c.c4,
        delta_case2: c.c1 * c.c1 - 4.0 * c.c0 * c.c2,
        delta_case3: c.c2 * c.c2 - 4.0 * c.c0 * c.c4,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v: [f64; 5]) -> EllipticCoefficients {
        EllipticCoefficients::from_array(v).unwrap()
    }

    #[test]
    fn quartic_values() {
        assert_eq!(rhs_quartic(0.0, &c([3.5, 1.0, 2.0, 3.0, 4.0])), 3.5);
        assert_eq!(rhs_quartic(1.0, &c([1.0; 5])), 5.0);
        assert_eq!(rhs_quartic(2.0, &c([0.0, 0.0, 1.0, 0.0, -1.0])), -12.0);
    }

    #[test]
    fn second_form_values() {
        assert_eq!(rhs_second_form(0.0, &c([9.0, 3.0, 1.0, 1.0, 1.0])), 1.5);
        assert_eq!(rhs_second_form(1.0, &c([0.0, 2.0, 3.0, 4.0, 5.0])), 20.0);
    }

    #[test]
    fn discriminant_values() {
        let d = discriminants(&c([0.0, 0.0, 1.0, 0.0, -1.0]));
        assert_eq!((d.delta_case1, d.delta_case2, d.delta_case3), (4.0, 0.0, 1.0));
        assert_eq!(discriminants(&c([0.0, 0.0, 1.0, 2.0, 1.0])).delta_case1, 0.0);
        assert_eq!(discriminants(&c([1.0, 0.0, -2.0, 0.0, 1.0])).delta_case3, 0.0);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(EllipticCoefficients::new(0.0, f64::NAN, 0.0, 0.0, 0.0).is_err());
        assert!(c([1.0, 0.0, 0.0, 0.0, 0.0]).is_constant_rhs());
    }

    proptest! {
        #[test]
        fn second_form_is_half_derivative(
            v in proptest::array::uniform5(-10.0f64..10.0),
            u in -3.0f64..3.0,
        ) {
            let c = c(v);
            let lhs = rhs_second_form(u, &c);
            let rhs = 0.5 * rhs_quartic_derivative(u, &c);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
        }

        #[test]
        fn integer_discriminants_are_exact(v in proptest::array::uniform5(-1000i64..1000)) {
            let f = v.map(|x| x as f64);
            let d = discriminants(&c(f));
            prop_assert_eq!(d.delta_case1, (v[3] * v[3] - 4 * v[2] * v[4]) as f64);
            prop_assert_eq!(d.delta_case2, (v[1] * v[1] - 4 * v[0] * v[2]) as f64);
            prop_assert_eq!(d.delta_case3, (v[2] * v[2] - 4 * v[0] * v[4]) as f64);
        }
    }
}
