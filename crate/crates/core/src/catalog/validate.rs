//! Pointwise evaluation and first-form validation of resolved families.

use serde::Serialize;

use super::resolve::ResolvedFamily;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::report::ResidualReport;
use crate::special::DEFAULT_POLE_RADIUS;
use crate::verify::ode::{ode_report, Forms};

/// Where and how densely to sample a family in `ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleSpec {
    /// Defaults to `[-3 scale, 3 scale]`.
    pub range: Option<(f64, f64)>,
    pub points: usize,
    pub tol: f64,
    /// Cut zones out of the range around poles instead of failing on them.
    pub exclude_poles: bool,
    #[serde(skip)]
    pub execution: Execution,
}

/// Smallest grid accepted for a certificate.
pub const MIN_POINTS: usize = 32;

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            range: None,
            points: 64,
            tol: 1e-6,
            exclude_poles: true,
            execution: Execution::default(),
        }
    }
}

impl SampleSpec {
    pub fn with_range(mut self, a: f64, b: f64) -> Self {
        self.range = Some((a, b));
        self
    }

    pub fn with_points(mut self, n: usize) -> Self {
        self.points = n;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_exclusion(mut self, on: bool) -> Self {
        self.exclude_poles = on;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

/// `F(ξ)` for a resolved family, refusing points within 1e-6 of a pole.
pub fn evaluate_family(rf: &ResolvedFamily, xi: f64) -> Result<f64> {
    if !xi.is_finite() {
        return Err(Error::Domain(format!("ξ = {xi} is not finite")));
    }
    if let Some((location, dist)) = rf.poles().nearest(xi) {
        if dist <= DEFAULT_POLE_RADIUS {
            return Err(Error::Pole {
                location,
                requested: xi,
                radius: DEFAULT_POLE_RADIUS,
            });
        }
    }
    let v = rf.family.eval_unchecked(&rf.params, xi);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!(
            "{} is not real-valued at ξ = {xi}",
            rf.family.id
        )))
    }
}

/// Check `F'^2 = c0 + c1 F + ... + c4 F^4` on the sample grid.
pub fn validate_family(rf: &ResolvedFamily, spec: &SampleSpec) -> Result<ResidualReport> {
    ode_report(rf, spec, Forms::First)
}
