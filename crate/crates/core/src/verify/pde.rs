//! Residuals of spacetime fields against the original evolution equations.
//!
//! Space derivatives use 6th-order central stencils, time derivatives a
//! 4th-order one, and `u_xxt` is the space stencil applied to the time
//! stencil. Each point is evaluated at steps `h` and `2h`; the difference
//! bounds the stencil error.

use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::PoleSet;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::expr::{Env, Symbol};
use crate::pde::{PdeId, TravelingWaveSolution};
use crate::report::{Axis, Check, GridSpec, ResidualNorms, ResidualReport, Spacing, Verdict};
use crate::verify::grid::exclusion_zones;

pub const DEFAULT_PDE_TOL: f64 = 1e-5;

const D1: [f64; 7] = [
    -1.0 / 60.0,
    3.0 / 20.0,
    -3.0 / 4.0,
    0.0,
    3.0 / 4.0,
    -3.0 / 20.0,
    1.0 / 60.0,
];
const D2: [f64; 7] = [
    1.0 / 90.0,
    -3.0 / 20.0,
    3.0 / 2.0,
    -49.0 / 18.0,
    3.0 / 2.0,
    -3.0 / 20.0,
    1.0 / 90.0,
];
const D3: [f64; 9] = [
    -7.0 / 240.0,
    3.0 / 10.0,
    -169.0 / 120.0,
    61.0 / 30.0,
    0.0,
    -61.0 / 30.0,
    169.0 / 120.0,
    -3.0 / 10.0,
    7.0 / 240.0,
];
const DT: [f64; 5] = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];

/// Space reach and time reach of the operator, in steps.
pub const X_REACH: f64 = 4.0;
pub const T_REACH: f64 = 2.0;

/// Rectangular sample grid `x0..x1` by `t0..t1`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PdeGrid {
    pub x: (f64, f64),
    pub t: (f64, f64),
    pub nx: usize,
    pub nt: usize,
}

impl Default for PdeGrid {
    fn default() -> Self {
        PdeGrid {
            x: (-5.0, 5.0),
            t: (0.0, 1.0),
            nx: 512,
            nt: 64,
        }
    }
}

impl PdeGrid {
    pub fn new(x: (f64, f64), t: (f64, f64), nx: usize, nt: usize) -> Result<Self> {
        let g = PdeGrid { x, t, nx, nt };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let ok = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && b > a;
        if !ok(self.x) || !ok(self.t) || self.nx < 2 || self.nt < 2 {
            return Err(Error::InvalidGrid(format!(
                "grid needs finite increasing ranges and at least 2 points per axis, got {self:?}"
            )));
        }
        Ok(())
    }

    pub fn hx(&self) -> f64 {
        (self.x.1 - self.x.0) / (self.nx - 1) as f64
    }

    pub fn ht(&self) -> f64 {
        (self.t.1 - self.t.0) / (self.nt - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PdeSpec {
    pub grid: PdeGrid,
    pub tol: f64,
    /// Skip points whose stencil comes near a pole; otherwise such points are errors.
    pub exclude_poles: bool,
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for PdeSpec {
    fn default() -> Self {
        PdeSpec {
            grid: PdeGrid::default(),
            tol: DEFAULT_PDE_TOL,
            exclude_poles: true,
            execution: Execution::default(),
        }
    }
}

impl PdeSpec {
    pub fn with_grid(mut self, grid: PdeGrid) -> Self {
        self.grid = grid;
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

/// Operator value at one point: the residual and the sum of the magnitudes
/// of its terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorValue {
    pub residual: Complex64,
    pub magnitude: f64,
}

impl OperatorValue {
    /// `|R| / (1 + Σ|terms|)`.
    pub fn normalized(&self) -> f64 {
        self.residual.norm() / (1.0 + self.magnitude)
    }
}

/// Physical constants of `pde` from `params` (missing ones are an error).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Constants {
    pub fn from_env(pde: PdeId, params: &Env) -> Result<Self> {
        let get = |s: Symbol| -> Result<f64> {
            if pde.physical().contains(&s) {
                let v = params.get(s);
                if v.is_nan() {
                    return Err(Error::MissingParameter(s.key().to_string()));
                }
                Ok(v)
            } else {
                Ok(0.0)
            }
        };
        Ok(Constants {
            alpha: get(Symbol::Alpha)?,
            beta: get(Symbol::Beta)?,
            gamma: get(Symbol::Gamma)?,
        })
    }
}

/// The equation's operator applied to `u` at `(x, t)` with steps `hx`, `ht`.
pub fn operator_residual(
    pde: PdeId,
    k: &Constants,
    u: &dyn Fn(f64, f64) -> Complex64,
    x: f64,
    t: f64,
    hx: f64,
    ht: f64,
) -> OperatorValue {
    let at_x = |i: i32| u(x + i as f64 * hx, t);
    let u0 = at_x(0);
    let ux: Complex64 = (-3..=3).map(|i| D1[(i + 3) as usize] * at_x(i)).sum::<Complex64>() / hx;
    let ut: Complex64 = (-2..=2)
        .filter(|j| *j != 0)
        .map(|j| DT[(j + 2) as usize] * u(x, t + j as f64 * ht))
        .sum::<Complex64>()
        / ht;
    match pde {
        PdeId::Mbbm => {
            let uxxt: Complex64 = (-3..=3)
                .map(|i| {
                    let xi = x + i as f64 * hx;
                    let dt: Complex64 = (-2..=2)
                        .filter(|j| *j != 0)
                        .map(|j| DT[(j + 2) as usize] * u(xi, t + j as f64 * ht))
                        .sum::<Complex64>()
                        / ht;
                    D2[(i + 3) as usize] * dt
                })
                .sum::<Complex64>()
                / (hx * hx);
            let nonlinear = u0 * u0 * ux;
            OperatorValue {
                residual: ut + ux + nonlinear + uxxt,
                magnitude: ut.norm() + ux.norm() + nonlinear.norm() + uxxt.norm(),
            }
        }
        PdeId::Nls => {
            let uxx: Complex64 = (-3..=3).map(|i| D2[(i + 3) as usize] * at_x(i)).sum::<Complex64>() / (hx * hx);
            let a = Complex64::i() * ut;
            let b = k.alpha * uxx;
            let c = k.beta * u0.norm_sqr() * u0;
            OperatorValue {
                residual: a + b + c,
                magnitude: a.norm() + b.norm() + c.norm(),
            }
        }
        PdeId::KdvMkdv => {
            let uxxx: Complex64 = (-4..=4).map(|i| D3[(i + 4) as usize] * at_x(i)).sum::<Complex64>() / (hx * hx * hx);
            let a = 6.0 * k.alpha * u0 * ux;
            let b = 6.0 * k.beta * u0 * u0 * ux;
            let c = k.gamma * uxxx;
            OperatorValue {
                residual: ut + a + b + c,
                magnitude: ut.norm() + a.norm() + b.norm() + c.norm(),
            }
        }
    }
}

/// Where a field's singularities lie: poles of the profile in
/// `ξ = x - speed t + shift`.
#[derive(Debug, Clone, PartialEq)]
pub struct Singularities {
    pub poles: PoleSet,
    pub speed: f64,
    pub shift: f64,
    /// Profile length scale.
    pub scale: f64,
}

impl Singularities {
    pub fn none() -> Self {
        Singularities {
            poles: PoleSet::none(),
            speed: 0.0,
            shift: 0.0,
            scale: 1.0,
        }
    }
}

/// Exclusion half-width in `ξ` around each pole for steps `hx`, `ht`:
/// a safety radius plus the reach of the coarse (`2h`) stencil.
pub fn pde_exclusion_halfwidth(scale: f64, speed: f64, hx: f64, ht: f64) -> f64 {
    let radius = (0.02 * scale).max(20.0 * hx).max(50.0 * speed.abs() * ht);
    radius + 2.0 * (X_REACH * hx + T_REACH * speed.abs() * ht)
}

/// PDE residual report for an arbitrary field.
pub fn verify_field(
    subject: String,
    pde: PdeId,
    params: &Env,
    field: &(dyn Fn(f64, f64) -> Complex64 + Sync),
    sing: &Singularities,
    spec: &PdeSpec,
) -> Result<ResidualReport> {
    spec.grid.validate()?;
    let k = Constants::from_env(pde, params)?;
    let g = spec.grid;
    let (hx, ht) = (g.hx(), g.ht());
    let halfwidth = pde_exclusion_halfwidth(sing.scale, sing.speed, hx, ht);
    let xi_of = |x: f64, t: f64| x - sing.speed * t + sing.shift;
    // Range of ξ covered by the grid and stencils.
    let corners = [(g.x.0, g.t.0), (g.x.0, g.t.1), (g.x.1, g.t.0), (g.x.1, g.t.1)].map(|(x, t)| xi_of(x, t));
    let lo = corners.iter().copied().fold(f64::INFINITY, f64::min) - halfwidth;
    let hi = corners.iter().copied().fold(f64::NEG_INFINITY, f64::max) + halfwidth;
    let excluded = exclusion_zones(lo, hi, &sing.poles, halfwidth)?;
    let blocked = |xi: f64| excluded.iter().any(|z| xi >= z[0] && xi <= z[1]);
    let n = g.nx * g.nt;
    let pointwise = spec.execution.map_range(n, |idx| -> Result<Option<(f64, f64)>> {
        let (i, j) = (idx % g.nx, idx / g.nx);
        let x = g.x.0 + i as f64 * hx;
        let t = g.t.0 + j as f64 * ht;
        let xi = xi_of(x, t);
        if blocked(xi) {
            if spec.exclude_poles {
                return Ok(None);
            }
            let (location, _) = sing.poles.nearest(xi).unwrap_or((xi, 0.0));
            return Err(Error::Pole {
                location,
                requested: xi,
                radius: halfwidth,
            });
        }
        let fine = operator_residual(pde, &k, field, x, t, hx, ht);
        let r = fine.normalized();
        if !r.is_finite() {
            // A non-real or overflowing field is a failure, not a stencil issue.
            return Ok(Some((f64::NAN, 0.0)));
        }
        let coarse = operator_residual(pde, &k, field, x, t, 2.0 * hx, 2.0 * ht);
        let est = (coarse.residual - fine.residual).norm() / (15.0 * (1.0 + fine.magnitude));
        Ok(Some((r, est)))
    });
    let mut residuals = Vec::with_capacity(n);
    let mut truncation: f64 = 0.0;
    for p in pointwise {
        if let Some((r, est)) = p? {
            residuals.push(r);
            truncation = if est.is_nan() {
                f64::INFINITY
            } else {
                truncation.max(est)
            };
        }
    }
    if residuals.is_empty() {
        return Err(Error::InvalidGrid(format!(
            "every grid point lies within {halfwidth:.3e} of a pole"
        )));
    }
    let norms = ResidualNorms::from_values(&residuals);
    let max = norms.effective_max();
    let verdict = if max <= spec.tol && truncation <= spec.tol / 10.0 {
        Verdict::Pass
    } else if max > spec.tol && (truncation <= spec.tol / 10.0 || max - truncation > spec.tol) {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };
    let mut notes = Vec::new();
    if norms.nonfinite > 0 {
        notes.push(format!(
            "field not finite at {} of {} points",
            norms.nonfinite, norms.samples
        ));
    }
    if verdict == Verdict::Inconclusive {
        notes.push(format!(
            "stencil error estimate {truncation:.3e} exceeds tol/10 = {:.3e}; refine the grid",
            spec.tol / 10.0
        ));
    }
    let samples = residuals.len();
    Ok(ResidualReport {
        subject,
        check: Check::Pde,
        parameters: params
            .bindings()
            .into_iter()
            .filter(|(s, _)| *s != Symbol::Xi)
            .map(|(s, v)| (s.key().to_string(), v))
            .collect(),
        grid: GridSpec {
            axes: vec![Axis::new("x", g.x.0, g.x.1, g.nx), Axis::new("t", g.t.0, g.t.1, g.nt)],
            spacing: Spacing::Uniform,
            exclusion_radius: halfwidth,
            excluded,
            samples,
        },
        tolerance: spec.tol,
        ode_residual: None,
        first_form: None,
        second_form: None,
        pde_residual: Some(norms),
        truncation_estimate: Some(truncation),
        verdict,
        pass: verdict == Verdict::Pass,
        seed: None,
        notes,
    })
}

impl TravelingWaveSolution {
    pub fn singularities(&self) -> Singularities {
        Singularities {
            poles: self.poles(),
            speed: self.lift.speed,
            shift: self.lift.shift,
            scale: self.scale(),
        }
    }
}

/// Residual of a table solution against its original equation.
pub fn verify_pde(sol: &TravelingWaveSolution, spec: &PdeSpec) -> Result<ResidualReport> {
    let field = |x: f64, t: f64| sol.eval(x, t);
    let mut r = verify_field(sol.subject(), sol.pde, &sol.params, &field, &sol.singularities(), spec)?;
    r.parameters = sol.parameter_map();
    r.notes.extend(sol.notes.iter().cloned());
    Ok(r)
}

/// `verify_pde` on the solution with its amplitude scaled by `factor`.
pub fn verify_scaled(sol: &TravelingWaveSolution, factor: f64, spec: &PdeSpec) -> Result<ResidualReport> {
    let field = |x: f64, t: f64| sol.eval(x, t) * factor;
    let mut r = verify_field(
        format!("{} x {factor}", sol.subject()),
        sol.pde,
        &sol.params,
        &field,
        &sol.singularities(),
        spec,
    )?;
    r.parameters = sol.parameter_map();
    Ok(r)
}

/// Stencil calibration against a smooth field with a known operator value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Calibration {
    pub samples: usize,
    pub max_abs_error: f64,
    pub max_analytic: f64,
    /// `max |R_numeric - R_exact| / max |R_exact|`.
    pub relative_error: f64,
}

/// Applies the mBBM operator to `u = exp(-x^2) cos t` on `grid` and compares
/// with the exact value
/// `-e sin t + (1 + e^2 cos^2 t)(-2x e cos t) - (4x^2 - 2) e sin t`, `e = exp(-x^2)`.
pub fn manufactured_calibration(grid: &PdeGrid, execution: Execution) -> Result<Calibration> {
    grid.validate()?;
    let k = Constants {
        alpha: 0.0,
        beta: 0.0,
        gamma: 0.0,
    };
    let field = |x: f64, t: f64| Complex64::new((-x * x).exp() * t.cos(), 0.0);
    let exact = |x: f64, t: f64| {
        let e = (-x * x).exp();
        let (s, c) = t.sin_cos();
        let ux = -2.0 * x * e * c;
        -e * s + ux + e * e * c * c * ux - (4.0 * x * x - 2.0) * e * s
    };
    let (hx, ht) = (grid.hx(), grid.ht());
    let n = grid.nx * grid.nt;
    let pairs = execution.map_range(n, |idx| {
        let x = grid.x.0 + (idx % grid.nx) as f64 * hx;
        let t = grid.t.0 + (idx / grid.nx) as f64 * ht;
        let r = operator_residual(PdeId::Mbbm, &k, &field, x, t, hx, ht).residual;
        let e = exact(x, t);
        ((r - e).norm(), e.abs())
    });
    let (err, mag) = pairs
        .into_iter()
        .fold((0.0f64, 0.0f64), |(a, b), (e, m)| (a.max(e), b.max(m)));
    Ok(Calibration {
        samples: n,
        max_abs_error: err,
        max_analytic: mag,
        relative_error: err / mag,
    })
}
