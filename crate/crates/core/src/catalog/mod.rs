//! The 38 solution families of the general elliptic equation (41 evaluators
//! counting the a/b branches of F3, F10 and F16), with their side conditions,
//! pole rules, parameter resolution, validation and errata adjudication.

pub mod check;
pub mod errata;
mod families;
mod poles;
pub mod resolve;
pub mod sample;
pub mod validate;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::elliptic::EllipticCoefficients;
use crate::error::{Error, Result};
use crate::expr::{Env, Expr, Symbol};

pub use check::{check_families, check_family, FamilyCheck};
pub use errata::{corrected_catalog, family_errata, ErrataEntry, ErrataKind, ErrataOptions, Evidence};
pub use poles::{PoleLattice, PoleSet};
pub use resolve::{applicable_families, classify, C0Mode, Classification, Exclusion, ResolveOptions, ResolvedFamily};
pub use sample::draw_admissible;
pub use validate::{evaluate_family, validate_family, SampleSpec};

/// Relative tolerance for equality side conditions.
pub const EQUALITY_TOL: f64 = 1e-9;

/// Family index 1..=38 with an optional a/b branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId {
    pub index: u8,
    pub branch: Option<char>,
}

impl FamilyId {
    pub const fn new(index: u8) -> Self {
        FamilyId { index, branch: None }
    }

    pub const fn branch(index: u8, branch: char) -> Self {
        FamilyId {
            index,
            branch: Some(branch),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.branch {
            Some(b) => write!(f, "F{}{}", self.index, b),
            None => write!(f, "F{}", self.index),
        }
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('F').or_else(|| t.strip_prefix('f')).unwrap_or(t);
        let (digits, branch) = match t.chars().last() {
            Some(c @ ('a' | 'b')) => (&t[..t.len() - 1], Some(c)),
            _ => (t, None),
        };
        let index: u8 = digits.parse().map_err(|_| Error::UnknownFamily(s.to_string()))?;
        let id = FamilyId { index, branch };
        if catalog().iter().any(|f| f.id == id) {
            Ok(id)
        } else {
            Err(Error::UnknownFamily(s.to_string()))
        }
    }
}

impl Serialize for FamilyId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilyId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
    NonZero,
}

/// One side condition.
#[derive(Debug, Clone, PartialEq)]
pub enum Constraint {
    /// `symbol = value`; during resolution the symbol is computed from the
    /// value when it is free, otherwise the equality is checked.
    Assign { symbol: Symbol, value: Expr },
    /// Sign condition on an expression.
    Sign { expr: Expr, sign: Sign },
}

impl Constraint {
    pub fn assign(symbol: Symbol, value: impl Into<Expr>) -> Self {
        Constraint::Assign {
            symbol,
            value: value.into(),
        }
    }

    pub fn positive(expr: impl Into<Expr>) -> Self {
        Constraint::Sign {
            expr: expr.into(),
            sign: Sign::Positive,
        }
    }

    pub fn negative(expr: impl Into<Expr>) -> Self {
        Constraint::Sign {
            expr: expr.into(),
            sign: Sign::Negative,
        }
    }

    pub fn nonzero(expr: impl Into<Expr>) -> Self {
        Constraint::Sign {
            expr: expr.into(),
            sign: Sign::NonZero,
        }
    }

    /// Whether the constraint holds under `env` (equalities to [`EQUALITY_TOL`]).
    pub fn holds(&self, env: &Env) -> bool {
        match self {
            Constraint::Assign { symbol, value } => equal_within(env.get(*symbol), value.eval(env), EQUALITY_TOL),
            Constraint::Sign { expr, sign } => {
                let v = expr.eval(env);
                match sign {
                    Sign::Positive => v > 0.0,
                    Sign::Negative => v < 0.0,
                    Sign::NonZero => v != 0.0 && !v.is_nan(),
                }
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            Constraint::Assign { symbol, value } => format!("{symbol} = {value}"),
            Constraint::Sign { expr, sign } => match sign {
                Sign::Positive => format!("{expr} > 0"),
                Sign::Negative => format!("{expr} < 0"),
                Sign::NonZero => format!("{expr} ≠ 0"),
            },
        }
    }
}

/// Relative comparison with an absolute floor of `tol * 1e-3` for zeros.
pub fn equal_within(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (a.abs().max(b.abs()) + 1e-3)
}

/// A labelled side condition as it appears in a listing.
#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub constraint: Constraint,
    /// Text as printed (for example `Δ>0`).
    pub label: String,
    /// Not printed but required for a real-valued form.
    pub inferred: bool,
}

impl Condition {
    pub fn printed(label: &str, constraint: Constraint) -> Self {
        Condition {
            constraint,
            label: label.to_string(),
            inferred: false,
        }
    }

    pub fn inferred(label: &str, constraint: Constraint) -> Self {
        Condition {
            constraint,
            label: label.to_string(),
            inferred: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum ModulusRule {
    None,
    Free,
    Fixed(f64),
}

pub type PoleRule = fn(&Env) -> PoleSet;

/// One catalog entry.
#[derive(Debug, Clone)]
pub struct SolutionFamily {
    pub id: FamilyId,
    pub case_id: u8,
    /// Closed form in `ξ` and the parameters.
    pub form: Expr,
    pub conditions: Vec<Condition>,
    pub modulus: ModulusRule,
    /// Carries the sign choice `ε = ±1`.
    pub epsilon: bool,
    /// Multiplier of `ξ` in the form's argument; sets the length scale.
    pub rate: Option<Expr>,
    pub poles: PoleRule,
    /// Description of the pole rule for listings.
    pub pole_text: &'static str,
}

impl SolutionFamily {
    /// Free symbols among `{ε, m, c0}`.
    pub fn free_symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        if self.epsilon {
            out.push(Symbol::Eps);
        }
        if self.modulus == ModulusRule::Free {
            out.push(Symbol::M);
        }
        if !self.assigns(Symbol::C0) {
            out.push(Symbol::C0);
        }
        out
    }

    pub fn assigns(&self, s: Symbol) -> bool {
        self.conditions
            .iter()
            .any(|c| matches!(&c.constraint, Constraint::Assign { symbol, .. } if *symbol == s))
    }

    /// Evaluate the form at `xi` under `params` with no pole check.
    pub fn eval_unchecked(&self, params: &Env, xi: f64) -> f64 {
        let mut env = *params;
        env.set(Symbol::Xi, xi);
        self.form.eval(&env)
    }

    pub fn pole_set(&self, params: &Env) -> PoleSet {
        (self.poles)(params)
    }

    /// Characteristic length `1/|rate|`, clamped to `[0.05, 20]`.
    pub fn scale(&self, params: &Env) -> f64 {
        let r = self.rate.as_ref().map(|r| r.eval(params).abs()).unwrap_or(1.0);
        if r.is_finite() && r > 0.0 {
            (1.0 / r).clamp(0.05, 20.0)
        } else {
            1.0
        }
    }

    /// True when every condition holds.
    pub fn admits(&self, params: &Env) -> bool {
        self.conditions.iter().all(|c| c.constraint.holds(params))
    }

    pub fn violated(&self, params: &Env) -> Vec<&Condition> {
        self.conditions.iter().filter(|c| !c.constraint.holds(params)).collect()
    }
}

/// JSON listing row for one family.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyListing {
    pub id: FamilyId,
    pub case: u8,
    pub form: String,
    pub constraints: Vec<String>,
    pub inferred_constraints: Vec<String>,
    pub free_symbols: Vec<String>,
    pub modulus: ModulusRule,
    pub poles: String,
    pub errata: Option<ErrataKind>,
}

impl SolutionFamily {
    pub fn listing(&self, errata: Option<ErrataKind>) -> FamilyListing {
        FamilyListing {
            id: self.id,
            case: self.case_id,
            form: self.form.to_string(),
            constraints: self
                .conditions
                .iter()
                .filter(|c| !c.inferred)
                .map(|c| c.label.clone())
                .collect(),
            inferred_constraints: self
                .conditions
                .iter()
                .filter(|c| c.inferred)
                .map(|c| c.label.clone())
                .collect(),
            free_symbols: self.free_symbols().iter().map(|s| s.glyph().to_string()).collect(),
            modulus: self.modulus,
            poles: self.pole_text.to_string(),
            errata,
        }
    }
}

/// The printed catalog, in family order.
pub fn catalog() -> &'static [Arc<SolutionFamily>] {
    static CATALOG: OnceLock<Vec<Arc<SolutionFamily>>> = OnceLock::new();
    CATALOG.get_or_init(|| families::all().into_iter().map(Arc::new).collect())
}

pub fn family(id: FamilyId) -> Result<Arc<SolutionFamily>> {
    catalog()
        .iter()
        .find(|f| f.id == id)
        .cloned()
        .ok_or_else(|| Error::UnknownFamily(id.to_string()))
}

/// Bind the five coefficients into an environment.
pub fn coefficient_env(c: &EllipticCoefficients) -> Env {
    let mut env = Env::new();
    for (s, v) in Symbol::COEFFICIENTS.iter().zip(c.as_array()) {
        env.set(*s, v);
    }
    env
}

pub fn coefficients_from_env(env: &Env) -> Result<EllipticCoefficients> {
    EllipticCoefficients::new(
        env.get(Symbol::C0),
        env.get(Symbol::C1),
        env.get(Symbol::C2),
        env.get(Symbol::C3),
        env.get(Symbol::C4),
    )
}
