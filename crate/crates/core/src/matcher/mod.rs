//! Coefficient matching between a reduced cubic ODE and the second form of
//! the elliptic equation.

pub mod constrained;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::elliptic::{rhs_second_form, EllipticCoefficients};
use crate::error::{Error, Result};
use crate::pde::PdeId;

pub use constrained::{
    kdv_discrepancy_log, kdv_subcase, kdv_subcase_params, resolve_constrained_match, ConstrainedMatch, Discrepancy,
    Method,
};

/// Where a reduced ODE came from.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// `None` for a raw reduction supplied by the user.
    pub pde: Option<PdeId>,
    pub bindings: BTreeMap<String, f64>,
}

/// `u'' = a0 + a1 u + a2 u^2 + a3 u^3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedOde {
    pub a: [f64; 4],
    pub provenance: Provenance,
}

impl ReducedOde {
    pub fn new(a: [f64; 4], provenance: Provenance) -> Result<Self> {
        if a.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "reduced ODE coefficients must be finite, got {a:?}"
            )));
        }
        Ok(ReducedOde { a, provenance })
    }

    /// A user-supplied reduction with no PDE attached.
    pub fn raw(a: [f64; 4]) -> Result<Self> {
        Self::new(a, Provenance::default())
    }

    pub fn rhs(&self, u: f64) -> f64 {
        let [a0, a1, a2, a3] = self.a;
        a0 + u * (a1 + u * (a2 + u * a3))
    }
}

/// State of `c0` after matching.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum C0 {
    /// Matching leaves `c0` undetermined.
    Free,
    Bound(f64),
}

/// The matching rule as applied.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mapping {
    pub c1: &'static str,
    pub c2: &'static str,
    pub c3: &'static str,
    pub c4: &'static str,
}

pub const MAPPING: Mapping = Mapping {
    c1: "2 a0",
    c2: "a1",
    c3: "2 a2 / 3",
    c4: "a3 / 2",
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchResult {
    /// `c1..c4`.
    pub c: [f64; 4],
    pub c0: C0,
    pub mapping: Mapping,
}

impl MatchResult {
    /// Coefficients with `c0` bound (or replaced) by `c0`.
    pub fn with_c0(&self, c0: f64) -> Result<EllipticCoefficients> {
        EllipticCoefficients::new(c0, self.c[0], self.c[1], self.c[2], self.c[3])
    }

    /// Coefficients using the bound `c0`, or 0 when it is free. The second
    /// form does not involve `c0`, so this is exact for second-form checks.
    pub fn coefficients(&self) -> EllipticCoefficients {
        let c0 = match self.c0 {
            C0::Bound(v) => v,
            C0::Free => 0.0,
        };
        EllipticCoefficients::new(c0, self.c[0], self.c[1], self.c[2], self.c[3])
            .expect("matched coefficients of a finite ODE are finite")
    }

    pub fn bind_c0(mut self, c0: f64) -> Self {
        self.c0 = C0::Bound(c0);
        self
    }
}

/// `c1 = 2 a0, c2 = a1, c3 = 2 a2 / 3, c4 = a3 / 2`, with `c0` free.
pub fn match_coefficients(ode: &ReducedOde) -> MatchResult {
    let [a0, a1, a2, a3] = ode.a;
    MatchResult {
        c: [2.0 * a0, a1, 2.0 * a2 / 3.0, a3 / 2.0],
        c0: C0::Free,
        mapping: MAPPING,
    }
}

/// Largest `|second form - ODE rhs|` over four points, which pins a cubic.
pub fn round_trip_error(ode: &ReducedOde, m: &MatchResult) -> f64 {
    let c = m.coefficients();
    [-2.0, -1.0, 1.0, 3.0]
        .iter()
        .map(|&u| (rhs_second_form(u, &c) - ode.rhs(u)).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn raw_matching() {
        let ode = ReducedOde::raw([0.0, -0.5, 0.0, 1.0 / 6.0]).unwrap();
        let m = match_coefficients(&ode);
        assert_eq!(m.c, [0.0, -0.5, 0.0, 1.0 / 12.0]);
        assert_eq!(m.c0, C0::Free);
        assert!(ReducedOde::raw([f64::NAN, 0.0, 0.0, 1.0]).is_err());
    }

    proptest! {
        #[test]
        fn second_form_reproduces_the_ode(a in prop::array::uniform4(-1.0f64..1.0)) {
            let ode = ReducedOde::raw(a).unwrap();
            let m = match_coefficients(&ode);
            prop_assert!(round_trip_error(&ode, &m) <= 1e-13);
        }
    }
}
