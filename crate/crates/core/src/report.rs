//! Certification records shared by the ODE and PDE checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    /// Process exit code for this verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 2,
            Verdict::Inconclusive => 3,
        }
    }

    /// Combine verdicts over a sweep: any fail wins, then any inconclusive.
    pub fn combine(self, other: Verdict) -> Verdict {
        self.max(other)
    }
}

/// Max and median of a set of normalized residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualNorms {
    /// Largest finite residual.
    pub max: f64,
    pub median: f64,
    pub samples: usize,
    /// Samples whose residual was NaN or infinite. Any such sample fails the check.
    pub nonfinite: usize,
}

impl ResidualNorms {
    pub fn from_values(values: &[f64]) -> Self {
        let mut finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
        finite.sort_by(f64::total_cmp);
        let median = match finite.len() {
            0 => f64::NAN,
            n if n % 2 == 1 => finite[n / 2],
            n => 0.5 * (finite[n / 2 - 1] + finite[n / 2]),
        };
        ResidualNorms {
            max: finite.last().copied().unwrap_or(f64::NAN),
            median,
            samples: values.len(),
            nonfinite: values.len() - finite.len(),
        }
    }

    /// Max residual with non-finite samples counted as infinite.
    pub fn effective_max(&self) -> f64 {
        if self.nonfinite > 0 || self.max.is_nan() {
            f64::INFINITY
        } else {
            self.max
        }
    }

    pub fn within(&self, tol: f64) -> bool {
        self.effective_max() <= tol
    }

    /// The norms with the larger effective max.
    pub fn worse(self, other: ResidualNorms) -> ResidualNorms {
        if other.effective_max() > self.effective_max() {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(name: &str, start: f64, end: f64, count: usize) -> Self {
        Axis {
            name: name.to_string(),
            start,
            end,
            count,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    /// `count` equally spaced points including both ends.
    Uniform,
    /// `count` points spread evenly over the range minus the excluded zones.
    PoleAvoiding,
}

/// Exact description of the sample set, enough to rebuild it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub axes: Vec<Axis>,
    pub spacing: Spacing,
    /// Half-width of each excluded zone around a pole, in the wave variable.
    pub exclusion_radius: f64,
    /// Excluded intervals in the wave variable.
    pub excluded: Vec<[f64; 2]>,
    /// Points actually evaluated.
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `F'^2` against the quartic only.
    OdeFirstForm,
    /// `F''` against the cubic only.
    OdeSecondForm,
    /// Both `F'^2` against the quartic and `F''` against the cubic.
    OdeBothForms,
    Pde,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub subject: String,
    pub check: Check,
    pub parameters: BTreeMap<String, f64>,
    pub grid: GridSpec,
    pub tolerance: f64,
    /// Worse of the first and second form, when an ODE check ran.
    pub ode_residual: Option<ResidualNorms>,
    pub first_form: Option<ResidualNorms>,
    pub second_form: Option<ResidualNorms>,
    pub pde_residual: Option<ResidualNorms>,
    /// Coarse/fine estimate of the stencil error in the PDE residual.
    pub truncation_estimate: Option<f64>,
    pub verdict: Verdict,
    pub pass: bool,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

impl ResidualReport {
    /// The residual the verdict was judged on.
    pub fn max_residual(&self) -> f64 {
        self.pde_residual
            .or(self.ode_residual)
            .map(|n| n.effective_max())
            .unwrap_or(f64::NAN)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
