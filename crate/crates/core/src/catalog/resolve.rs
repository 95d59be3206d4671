//! Classification of a coefficient set against the catalog.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{
    coefficient_env, coefficients_from_env, equal_within, errata::corrected_catalog, Constraint, FamilyId, ModulusRule,
    PoleSet, SolutionFamily, EQUALITY_TOL,
};
use crate::elliptic::EllipticCoefficients;
use crate::error::{Error, Result};
use crate::expr::{Env, Expr, Symbol};

/// How `c0` enters classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum C0Mode {
    /// `c0` is the given coefficient.
    Bound,
    /// `c0` is free: families that fix it compute it, the rest use `hint`.
    Free { hint: Option<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResolveOptions {
    /// Caller-supplied modulus; otherwise solved from the family's relations.
    pub modulus: Option<f64>,
    pub epsilon: f64,
    pub c0: C0Mode,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions {
            modulus: None,
            epsilon: 1.0,
            c0: C0Mode::Bound,
        }
    }
}

/// A family with every parameter bound.
#[derive(Debug, Clone)]
pub struct ResolvedFamily {
    pub family: Arc<SolutionFamily>,
    /// Bindings for `c0..c4` and, where used, `ε` and `m`.
    pub params: Env,
    /// Max residual from the last validation, if any ran.
    pub residual_bound: Option<f64>,
}

impl ResolvedFamily {
    /// Bind `params`, failing with the violated condition labels.
    pub fn new(family: Arc<SolutionFamily>, params: Env) -> Result<Self> {
        let violated = family.violated(&params);
        if !violated.is_empty() {
            let labels: Vec<&str> = violated.iter().map(|c| c.label.as_str()).collect();
            return Err(Error::Condition(format!("{}: {}", family.id, labels.join(", "))));
        }
        Ok(Self::unchecked(family, params))
    }

    /// Bind without checking conditions.
    pub fn unchecked(family: Arc<SolutionFamily>, params: Env) -> Self {
        ResolvedFamily {
            family,
            params,
            residual_bound: None,
        }
    }

    pub fn id(&self) -> FamilyId {
        self.family.id
    }

    pub fn coefficients(&self) -> Result<EllipticCoefficients> {
        coefficients_from_env(&self.params)
    }

    pub fn poles(&self) -> PoleSet {
        self.family.pole_set(&self.params)
    }

    pub fn scale(&self) -> f64 {
        self.family.scale(&self.params)
    }

    /// Same family with `ε` replaced.
    pub fn with_epsilon(&self, eps: f64) -> Self {
        let mut params = self.params;
        params.set(Symbol::Eps, eps);
        Self::unchecked(self.family.clone(), params)
    }

    pub fn parameter_map(&self) -> BTreeMap<String, f64> {
        self.params
            .bindings()
            .into_iter()
            .map(|(s, v)| (s.key().to_string(), v))
            .collect()
    }
}

impl Serialize for ResolvedFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ResolvedFamily", 5)?;
        st.serialize_field("id", &self.family.id)?;
        st.serialize_field("case", &self.family.case_id)?;
        st.serialize_field("form", &self.family.form.to_string())?;
        st.serialize_field("params", &self.parameter_map())?;
        st.serialize_field("residual_bound", &self.residual_bound)?;
        st.end()
    }
}

/// A family that could not be resolved, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Exclusion {
    pub id: FamilyId,
    pub reason: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Classification {
    pub admitted: Vec<ResolvedFamily>,
    pub excluded: Vec<Exclusion>,
}

/// Every family of the errata-corrected catalog that `c` admits.
pub fn applicable_families(c: &EllipticCoefficients, opts: &ResolveOptions) -> Result<Vec<ResolvedFamily>> {
    Ok(classify(c, opts)?.admitted)
}

/// Admitted and excluded families of the errata-corrected catalog, in family order.
pub fn classify(c: &EllipticCoefficients, opts: &ResolveOptions) -> Result<Classification> {
    classify_in(corrected_catalog(), c, opts)
}

/// As [`classify`] over an explicit family list.
pub fn classify_in(
    families: &[Arc<SolutionFamily>],
    c: &EllipticCoefficients,
    opts: &ResolveOptions,
) -> Result<Classification> {
    if let Some(m) = opts.modulus {
        if !(m > 0.0 && m < 1.0) {
            return Err(Error::Domain(format!("modulus must lie in (0, 1), got {m}")));
        }
    }
    if opts.epsilon != 1.0 && opts.epsilon != -1.0 {
        return Err(Error::Domain(format!("ε must be +1 or -1, got {}", opts.epsilon)));
    }
    let mut out = Classification::default();
    for f in families {
        match resolve_one(f, c, opts) {
            Ok(list) => out.admitted.extend(list),
            Err(reason) => out.excluded.push(Exclusion { id: f.id, reason }),
        }
    }
    Ok(out)
}

fn base_env(f: &SolutionFamily, c: &EllipticCoefficients, opts: &ResolveOptions) -> Env {
    let mut env = coefficient_env(c);
    if matches!(opts.c0, C0Mode::Free { .. }) {
        env.unset(Symbol::C0);
    }
    if f.epsilon {
        env.set(Symbol::Eps, opts.epsilon);
    }
    match f.modulus {
        ModulusRule::Fixed(m) => env.set(Symbol::M, m),
        ModulusRule::Free => {
            if let Some(m) = opts.modulus {
                env.set(Symbol::M, m);
            }
        }
        ModulusRule::None => {}
    }
    env
}

fn all_bound_except(e: &Expr, env: &Env, skip: Symbol) -> bool {
    e.symbols()
        .into_iter()
        .all(|s| s == skip || s == Symbol::Xi || env.is_bound(s))
}

fn resolve_one(
    f: &Arc<SolutionFamily>,
    c: &EllipticCoefficients,
    opts: &ResolveOptions,
) -> std::result::Result<Vec<ResolvedFamily>, String> {
    let env = base_env(f, c, opts);
    let candidates = if f.modulus == ModulusRule::Free && !env.is_bound(Symbol::M) {
        let relation = f.conditions.iter().find_map(|cond| match &cond.constraint {
            Constraint::Assign { symbol, value }
                if env.is_bound(*symbol)
                    && value.contains_symbol(Symbol::M)
                    && all_bound_except(value, &env, Symbol::M) =>
            {
                Some((cond.label.as_str(), *symbol, value))
            }
            _ => None,
        });
        let Some((label, symbol, value)) = relation else {
            return Err("modulus is not fixed by the coefficients; supply m".to_string());
        };
        let roots = solve_modulus(&env, symbol, value);
        if roots.is_empty() {
            return Err(format!("no m in (0, 1) satisfies {label}"));
        }
        roots
            .into_iter()
            .map(|m| {
                let mut e = env;
                e.set(Symbol::M, m);
                e
            })
            .collect()
    } else {
        vec![env]
    };

    let mut admitted = Vec::new();
    let mut first_reason = None;
    for mut env in candidates {
        for cond in &f.conditions {
            if let Constraint::Assign { symbol, value } = &cond.constraint {
                if !env.is_bound(*symbol) {
                    let v = value.eval(&env);
                    if v.is_finite() {
                        env.set(*symbol, v);
                    }
                }
            }
        }
        if !env.is_bound(Symbol::C0) {
            match opts.c0 {
                C0Mode::Free { hint: Some(h) } => env.set(Symbol::C0, h),
                _ => {
                    first_reason.get_or_insert_with(|| "c0 is free for this family; supply a value".to_string());
                    continue;
                }
            }
        }
        let violated = f.violated(&env);
        if violated.is_empty() {
            admitted.push(ResolvedFamily::unchecked(f.clone(), env));
        } else {
            let labels: Vec<&str> = violated.iter().map(|c| c.label.as_str()).collect();
            first_reason.get_or_insert_with(|| format!("violates {}", labels.join(", ")));
        }
    }
    if admitted.is_empty() {
        Err(first_reason.unwrap_or_else(|| "no admissible parameters".to_string()))
    } else {
        Ok(admitted)
    }
}

const SCAN_POINTS: usize = 400;

/// Roots in `(0, 1)` of `env[symbol] - value(m)`, ascending.
fn solve_modulus(env: &Env, symbol: Symbol, value: &Expr) -> Vec<f64> {
    let target = env.get(symbol);
    let g = |m: f64| {
        let mut e = *env;
        e.set(Symbol::M, m);
        target - value.eval(&e)
    };
    let ms: Vec<f64> = (0..=SCAN_POINTS)
        .map(|i| (i as f64 + 0.5) / (SCAN_POINTS as f64 + 1.0))
        .collect();
    let vals: Vec<f64> = ms.iter().map(|&m| g(m)).collect();
    let mut roots = Vec::new();
    for i in 0..ms.len() - 1 {
        let (a, b) = (ms[i], ms[i + 1]);
        let (ga, gb) = (vals[i], vals[i + 1]);
        if !(ga.is_finite() && gb.is_finite()) {
            continue;
        }
        let root = if ga == 0.0 {
            a
        } else if ga.signum() != gb.signum() && gb != 0.0 {
            bisect(&g, a, b, ga)
        } else {
            continue;
        };
        let mut e = *env;
        e.set(Symbol::M, root);
        // Sign changes across a pole of the relation are not roots.
        if equal_within(target, value.eval(&e), EQUALITY_TOL) && roots.last() != Some(&root) {
            roots.push(root);
        }
    }
    roots
}

fn bisect(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut ga: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if gm.signum() == ga.signum() {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;

    fn ids(list: &[ResolvedFamily]) -> Vec<String> {
        list.iter().map(|r| r.id().to_string()).collect()
    }

    #[test]
    fn sech_coefficients() {
        let c = EllipticCoefficients::new(0.0, 0.0, 1.0, 0.0, -1.0).unwrap();
        let cls = classify_in(catalog(), &c, &ResolveOptions::default()).unwrap();
        let admitted = ids(&cls.admitted);
        assert!(admitted.contains(&"F1".to_string()));
        assert!(!admitted.contains(&"F2".to_string()));
        assert!(cls.excluded.iter().any(|e| e.id.to_string() == "F2"));
    }

    #[test]
    fn delta1_zero_admits_f14_f15() {
        let c = EllipticCoefficients::new(1.0, 0.0, -2.0, 0.0, 1.0).unwrap();
        let admitted = ids(&classify_in(catalog(), &c, &ResolveOptions::default()).unwrap().admitted);
        assert!(admitted.contains(&"F14".to_string()));
        assert!(admitted.contains(&"F15".to_string()));
    }

    #[test]
    fn free_c0_is_computed_by_the_relation() {
        let c = EllipticCoefficients::new(0.0, 0.0, -2.0, 0.0, 1.0).unwrap();
        let opts = ResolveOptions {
            c0: C0Mode::Free { hint: None },
            ..Default::default()
        };
        let cls = classify_in(catalog(), &c, &opts).unwrap();
        let f14 = cls.admitted.iter().find(|r| r.id().to_string() == "F14").unwrap();
        assert_eq!(f14.params.get(Symbol::C0), 1.0);
    }

    #[test]
    fn modulus_from_relation() {
        // F17: c0 = c2^2 m^2 / (c4 (1 + m^2)^2) with m = 0.6.
        let (c2, c4, m) = (-1.0, 1.0, 0.6f64);
        let c0 = c2 * c2 * m * m / (c4 * (1.0 + m * m).powi(2));
        let c = EllipticCoefficients::new(c0, 0.0, c2, 0.0, c4).unwrap();
        let cls = classify_in(catalog(), &c, &ResolveOptions::default()).unwrap();
        let f17 = cls.admitted.iter().find(|r| r.id().to_string() == "F17").unwrap();
        assert!((f17.params.get(Symbol::M) - m).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_options() {
        let c = EllipticCoefficients::new(0.0, 0.0, 1.0, 0.0, -1.0).unwrap();
        let bad = ResolveOptions {
            modulus: Some(1.5),
            ..Default::default()
        };
        assert!(classify_in(catalog(), &c, &bad).is_err());
    }
}
