//! The three registered evolution equations, their traveling-wave
//! reductions and solution tables.

mod solution;
mod table;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{Env, Symbol};
use crate::matcher::{Provenance, ReducedOde};

pub use solution::{
    draw_entry_params, entry_errata, solution_errata, sweep_entry, InstantiateOptions, TravelingWaveSolution,
};
pub use table::{find_entry, solution_table, Correction, SolutionEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PdeId {
    Mbbm,
    Nls,
    KdvMkdv,
}

impl PdeId {
    pub const ALL: [PdeId; 3] = [PdeId::Mbbm, PdeId::Nls, PdeId::KdvMkdv];

    pub fn key(self) -> &'static str {
        match self {
            PdeId::Mbbm => "mbbm",
            PdeId::Nls => "nls",
            PdeId::KdvMkdv => "kdv_mkdv",
        }
    }

    /// Physical constants of the equation.
    pub fn physical(self) -> &'static [Symbol] {
        match self {
            PdeId::Mbbm => &[],
            PdeId::Nls => &[Symbol::Alpha, Symbol::Beta],
            PdeId::KdvMkdv => &[Symbol::Alpha, Symbol::Beta, Symbol::Gamma],
        }
    }

    /// The second free wave parameter next to `ω`: the integration
    /// constant, or the phase frequency for NLS.
    pub fn second_wave_param(self) -> Symbol {
        match self {
            PdeId::Mbbm => Symbol::B,
            PdeId::Nls => Symbol::Freq,
            PdeId::KdvMkdv => Symbol::C,
        }
    }

    pub fn is_complex(self) -> bool {
        self == PdeId::Nls
    }
}

impl fmt::Display for PdeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for PdeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "mbbm" => Ok(PdeId::Mbbm),
            "nls" => Ok(PdeId::Nls),
            "kdv_mkdv" | "kdv" => Ok(PdeId::KdvMkdv),
            _ => Err(Error::UnknownPde(s.to_string())),
        }
    }
}

/// Stencil recipe used by the residual operator.
#[derive(Debug, Clone, Serialize)]
pub struct StencilSpec {
    pub x_order: u8,
    pub t_order: u8,
    pub mixed: &'static str,
}

/// Static description of a registered equation.
#[derive(Debug, Clone, Serialize)]
pub struct PdeDefinition {
    pub id: PdeId,
    pub equation: &'static str,
    pub physical_params: Vec<&'static str>,
    pub wave_params: Vec<&'static str>,
    pub derived_params: Vec<&'static str>,
    pub wave_transform: &'static str,
    pub reduction: &'static str,
    pub nonzero: &'static str,
    pub complex: bool,
    pub residual_operator: StencilSpec,
}

pub fn definition(id: PdeId) -> PdeDefinition {
    let stencil = StencilSpec {
        x_order: 6,
        t_order: 4,
        mixed: "x stencil applied to the t stencil",
    };
    match id {
        PdeId::Mbbm => PdeDefinition {
            id,
            equation: "u_t + u_x + u^2 u_x + u_xxt = 0",
            physical_params: vec![],
            wave_params: vec!["omega", "B"],
            derived_params: vec![],
            wave_transform: "u = F(ξ), ξ = x - ω t",
            reduction: "u'' = B/ω + (1-ω)/ω u + u^3/(3ω)",
            nonzero: "ω ≠ 0",
            complex: false,
            residual_operator: stencil,
        },
        PdeId::Nls => PdeDefinition {
            id,
            equation: "i u_t + α u_xx + β |u|^2 u = 0",
            physical_params: vec!["alpha", "beta"],
            wave_params: vec!["omega", "c"],
            derived_params: vec!["k = ω/(2α)"],
            wave_transform: "u = F(ξ) e^{i(k x + c t)}, ξ = x - ω t",
            reduction: "v'' = (ω^2 + 4αc)/(4α^2) v - (β/α) v^3",
            nonzero: "α ≠ 0",
            complex: true,
            residual_operator: stencil,
        },
        PdeId::KdvMkdv => PdeDefinition {
            id,
            equation: "u_t + 6(α u + β u^2) u_x + γ u_xxx = 0",
            physical_params: vec!["alpha", "beta", "gamma"],
            wave_params: vec!["omega", "C"],
            derived_params: vec![],
            wave_transform: "u = F(ξ), ξ = x - ω t",
            reduction: "u'' = C/γ + (ω/γ) u - (3α/γ) u^2 - (2β/γ) u^3",
            nonzero: "γ ≠ 0",
            complex: false,
            residual_operator: stencil,
        },
    }
}

fn need(params: &Env, s: Symbol) -> Result<f64> {
    let v = params.get(s);
    if v.is_nan() {
        Err(Error::MissingParameter(s.key().to_string()))
    } else if !v.is_finite() {
        Err(Error::Domain(format!("{} must be finite", s.key())))
    } else {
        Ok(v)
    }
}

/// Reduction denominators that must not vanish.
pub fn check_nonzero(id: PdeId, params: &Env) -> Result<()> {
    let (s, text) = match id {
        PdeId::Mbbm => (Symbol::Omega, "ω ≠ 0"),
        PdeId::Nls => (Symbol::Alpha, "α ≠ 0"),
        PdeId::KdvMkdv => (Symbol::Gamma, "γ ≠ 0"),
    };
    if params.get(s) == 0.0 {
        Err(Error::Parameter(format!("{id}: reduction requires {text}")))
    } else {
        Ok(())
    }
}

/// The cubic ODE obtained from the traveling-wave ansatz.
pub fn reduce(id: PdeId, params: &Env) -> Result<ReducedOde> {
    check_nonzero(id, params)?;
    let mut bindings = BTreeMap::new();
    let mut take = |s: Symbol| -> Result<f64> {
        let v = need(params, s)?;
        bindings.insert(s.key().to_string(), v);
        Ok(v)
    };
    let a = match id {
        PdeId::Mbbm => {
            let (w, b) = (take(Symbol::Omega)?, take(Symbol::B)?);
            [b / w, (1.0 - w) / w, 0.0, 1.0 / (3.0 * w)]
        }
        PdeId::Nls => {
            let (al, be) = (take(Symbol::Alpha)?, take(Symbol::Beta)?);
            let (w, c) = (take(Symbol::Omega)?, take(Symbol::Freq)?);
            [0.0, (w * w + 4.0 * al * c) / (4.0 * al * al), 0.0, -be / al]
        }
        PdeId::KdvMkdv => {
            let (al, be, ga) = (take(Symbol::Alpha)?, take(Symbol::Beta)?, take(Symbol::Gamma)?);
            let (w, c) = (take(Symbol::Omega)?, take(Symbol::C)?);
            [c / ga, w / ga, -3.0 * al / ga, -2.0 * be / ga]
        }
    };
    ReducedOde::new(
        a,
        Provenance {
            pde: Some(id),
            bindings,
        },
    )
}

/// NLS carrier wavenumber `k = ω/(2α)`.
pub fn nls_wavenumber(alpha: f64, omega: f64) -> Result<f64> {
    if alpha == 0.0 {
        return Err(Error::Parameter("nls: reduction requires α ≠ 0".to_string()));
    }
    Ok(omega / (2.0 * alpha))
}

/// Wave transform from a profile to a spacetime field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lift {
    /// `ξ = x - speed t + shift`.
    pub speed: f64,
    pub shift: f64,
    /// Carrier `e^{i(k x + freq t)}`; zero for real equations.
    pub k: f64,
    pub freq: f64,
}

impl Lift {
    pub fn real(speed: f64, shift: f64) -> Self {
        Lift {
            speed,
            shift,
            k: 0.0,
            freq: 0.0,
        }
    }

    pub fn xi(&self, x: f64, t: f64) -> f64 {
        x - self.speed * t + self.shift
    }

    pub fn apply(&self, v: f64, x: f64, t: f64) -> Complex64 {
        if self.k == 0.0 && self.freq == 0.0 {
            Complex64::new(v, 0.0)
        } else {
            Complex64::from_polar(1.0, self.k * x + self.freq * t) * v
        }
    }
}

/// `u(x, t)` from a profile `F(ξ)`: `F(x - ω t)`, times `e^{i(k x + c t)}` for NLS.
pub fn lift(id: PdeId, profile: impl Fn(f64) -> f64, params: &Env) -> Result<impl Fn(f64, f64) -> Complex64> {
    let speed = need(params, Symbol::Omega)?;
    let shift = if params.is_bound(Symbol::Xi0) {
        params.get(Symbol::Xi0)
    } else {
        0.0
    };
    let l = match id {
        PdeId::Nls => {
            let k = nls_wavenumber(need(params, Symbol::Alpha)?, speed)?;
            Lift {
                speed,
                shift,
                k,
                freq: need(params, Symbol::Freq)?,
            }
        }
        _ => Lift::real(speed, shift),
    };
    Ok(move |x: f64, t: f64| l.apply(profile(l.xi(x, t)), x, t))
}

/// Machine-readable registry: definitions and solution inventories.
#[derive(Debug, Clone, Serialize)]
pub struct RegistryExport {
    pub pdes: Vec<RegistryPde>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegistryPde {
    #[serde(flatten)]
    pub definition: PdeDefinition,
    pub solutions: Vec<table::EntryListing>,
}

pub fn registry_export() -> RegistryExport {
    RegistryExport {
        pdes: PdeId::ALL
            .iter()
            .map(|&id| RegistryPde {
                definition: definition(id),
                solutions: solution_table(id).iter().map(|e| e.listing()).collect(),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(Symbol, f64)]) -> Env {
        pairs.iter().fold(Env::new(), |e, (s, v)| e.with(*s, *v))
    }

    #[test]
    fn reductions() {
        let m = reduce(PdeId::Mbbm, &env(&[(Symbol::Omega, 2.0), (Symbol::B, 0.0)])).unwrap();
        assert_eq!(m.a, [0.0, -0.5, 0.0, 1.0 / 6.0]);
        let k = reduce(
            PdeId::KdvMkdv,
            &env(&[
                (Symbol::Alpha, 1.0),
                (Symbol::Beta, 1.0),
                (Symbol::Gamma, 1.0),
                (Symbol::Omega, 1.0),
                (Symbol::C, 0.0),
            ]),
        )
        .unwrap();
        assert_eq!(k.a, [0.0, 1.0, -3.0, -2.0]);
        assert_eq!(nls_wavenumber(1.0, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn zero_denominators_and_missing_params() {
        let e = reduce(PdeId::Mbbm, &env(&[(Symbol::Omega, 0.0), (Symbol::B, 0.0)])).unwrap_err();
        assert!(matches!(e, Error::Parameter(ref s) if s.contains("ω ≠ 0")));
        let e = reduce(PdeId::Nls, &env(&[(Symbol::Alpha, 0.0)])).unwrap_err();
        assert!(matches!(e, Error::Parameter(_)));
        let e = reduce(PdeId::KdvMkdv, &env(&[(Symbol::Alpha, 1.0), (Symbol::Gamma, 1.0)])).unwrap_err();
        assert!(matches!(e, Error::MissingParameter(_)));
    }

    #[test]
    fn ids_round_trip() {
        for id in PdeId::ALL {
            assert_eq!(id.key().parse::<PdeId>().unwrap(), id);
        }
        assert!("burgers".parse::<PdeId>().is_err());
    }

    #[test]
    fn constant_profile_lifts_to_constant() {
        let p = env(&[(Symbol::Omega, 3.0), (Symbol::Alpha, 1.0), (Symbol::Freq, 0.5)]);
        let u = lift(PdeId::Mbbm, |_| 2.5, &p).unwrap();
        assert_eq!(u(1.0, 2.0), Complex64::new(2.5, 0.0));
        let v = lift(PdeId::Nls, |_| 2.5, &p).unwrap();
        assert!((v(1.0, 2.0).norm() - 2.5).abs() < 1e-15);
    }
}
