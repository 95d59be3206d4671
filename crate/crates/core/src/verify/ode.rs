//! Residuals of a profile against the first and second forms of the elliptic equation.

use crate::catalog::{PoleSet, ResolvedFamily, SampleSpec};
use crate::elliptic::{rhs_quartic, rhs_second_form, EllipticCoefficients};
use crate::error::{Error, Result};
use crate::report::{Axis, Check, GridSpec, ResidualNorms, ResidualReport, Spacing, Verdict};
use crate::verify::derivative::{numeric_derivative, numeric_derivative_avoiding};
use crate::verify::grid;

/// First-derivative step as a fraction of the profile scale.
pub const FIRST_STEP: f64 = 1e-4;
/// Second-derivative step as a fraction of the profile scale.
pub const SECOND_STEP: f64 = 2e-3;
/// Pole exclusion radius as a fraction of the profile scale.
pub const POLE_FRACTION: f64 = 0.02;
/// Near a pole the step shrinks to this fraction of the pole distance.
const NEAR_POLE_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Forms {
    First,
    /// The second form only; independent of `c0`.
    Second,
    Both,
}

/// A profile `F(ξ)` with its singularities and natural length scale.
pub trait Profile: Sync {
    fn value(&self, xi: f64) -> f64;
    fn poles(&self) -> PoleSet;
    fn scale(&self) -> f64;
}

impl Profile for ResolvedFamily {
    fn value(&self, xi: f64) -> f64 {
        self.family.eval_unchecked(&self.params, xi)
    }

    fn poles(&self) -> PoleSet {
        ResolvedFamily::poles(self)
    }

    fn scale(&self) -> f64 {
        ResolvedFamily::scale(self)
    }
}

/// Pole exclusion radius for a profile of the given scale.
pub fn pole_radius(scale: f64) -> f64 {
    (POLE_FRACTION * scale).max(1e-6)
}

fn step(base: f64, poles: &PoleSet, xi: f64) -> f64 {
    match poles.nearest(xi) {
        Some((_, d)) => base.min(NEAR_POLE_STEP * d),
        None => base,
    }
}

/// Pointwise normalized residuals `(first, second)` at `xi`.
fn residuals_at(
    profile: &dyn Profile,
    c: &EllipticCoefficients,
    poles: &PoleSet,
    scale: f64,
    radius: f64,
    strict: bool,
    xi: f64,
) -> Result<(f64, f64)> {
    let f = |x: f64| profile.value(x);
    let h1 = step(FIRST_STEP * scale, poles, xi);
    let h2 = step(SECOND_STEP * scale, poles, xi);
    let (d1, d2) = if strict {
        (
            numeric_derivative_avoiding(f, xi, 1, h1, poles, radius),
            numeric_derivative_avoiding(f, xi, 2, h2, poles, radius),
        )
    } else {
        (numeric_derivative(f, xi, 1, h1), numeric_derivative(f, xi, 2, h2))
    };
    if let (Err(e @ Error::Pole { .. }), _) | (_, Err(e @ Error::Pole { .. })) = (&d1, &d2) {
        return Err(e.clone());
    }
    let v = profile.value(xi);
    let q = rhs_quartic(v, c);
    let s = rhs_second_form(v, c);
    let r1 = d1.map(|d| (d * d - q).abs() / (1.0 + q.abs())).unwrap_or(f64::NAN);
    let r2 = d2.map(|d| (d - s).abs() / (1.0 + s.abs())).unwrap_or(f64::NAN);
    Ok((r1, r2))
}

/// Residual report of any profile against the coefficients `c`.
pub fn profile_report(
    subject: String,
    profile: &dyn Profile,
    c: &EllipticCoefficients,
    spec: &SampleSpec,
    forms: Forms,
) -> Result<ResidualReport> {
    if spec.points < crate::catalog::validate::MIN_POINTS {
        return Err(Error::InvalidGrid(format!(
            "a certificate needs at least {} points, got {}",
            crate::catalog::validate::MIN_POINTS,
            spec.points
        )));
    }
    let scale = profile.scale();
    let (a, b) = spec.range.unwrap_or((-3.0 * scale, 3.0 * scale));
    let poles = profile.poles();
    let radius = pole_radius(scale);
    let (points, excluded, halfwidth, spacing) = if spec.exclude_poles {
        let hw = radius + 4.0 * (SECOND_STEP * scale).min(NEAR_POLE_STEP * radius);
        let g = grid::pole_avoiding(a, b, spec.points, &poles, hw)?;
        (g.points, g.excluded, hw, Spacing::PoleAvoiding)
    } else {
        (grid::uniform(a, b, spec.points)?, Vec::new(), 0.0, Spacing::Uniform)
    };
    let strict = !spec.exclude_poles;
    let pointwise = spec.execution.map(&points, |&xi| {
        residuals_at(profile, c, &poles, scale, radius, strict, xi)
    });
    let mut first = Vec::with_capacity(points.len());
    let mut second = Vec::with_capacity(points.len());
    for r in pointwise {
        let (r1, r2) = r?;
        first.push(r1);
        second.push(r2);
    }
    let first = ResidualNorms::from_values(&first);
    let second = ResidualNorms::from_values(&second);
    let (ode, check, second_form) = match forms {
        Forms::First => (first, Check::OdeFirstForm, None),
        Forms::Second => (second, Check::OdeSecondForm, Some(second)),
        Forms::Both => (first.worse(second), Check::OdeBothForms, Some(second)),
    };
    let first = (forms != Forms::Second).then_some(first);
    let verdict = if ode.within(spec.tol) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(ResidualReport {
        subject,
        check,
        parameters: Default::default(),
        grid: GridSpec {
            axes: vec![Axis::new("xi", a, b, spec.points)],
            spacing,
            exclusion_radius: halfwidth,
            excluded,
            samples: points.len(),
        },
        tolerance: spec.tol,
        ode_residual: Some(ode),
        first_form: first,
        second_form,
        pde_residual: None,
        truncation_estimate: None,
        verdict,
        pass: verdict == Verdict::Pass,
        seed: None,
        notes: Vec::new(),
    })
}

pub(crate) fn ode_report(rf: &ResolvedFamily, spec: &SampleSpec, forms: Forms) -> Result<ResidualReport> {
    let c = rf.coefficients()?;
    let mut report = profile_report(rf.family.id.to_string(), rf, &c, spec, forms)?;
    report.parameters = rf.parameter_map();
    Ok(report)
}

/// Check both the first form `F'^2 = Q(F)` and the second form `F'' = Q'(F)/2`.
pub fn verify_ode(rf: &ResolvedFamily, spec: &SampleSpec) -> Result<ResidualReport> {
    ode_report(rf, spec, Forms::Both)
}
