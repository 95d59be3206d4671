//! The full pipeline: reduce, match, classify, resolve constraints and list
//! the table solutions, each with a quick residual certificate.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::{classify, corrected_catalog, C0Mode, ResolveOptions, SampleSpec};
use crate::error::{Error, Result};
use crate::expr::{Env, Symbol};
use crate::matcher::{
    match_coefficients, resolve_constrained_match, ConstrainedMatch, MatchResult, Method, ReducedOde,
};
use crate::pde::{reduce, solution_table, InstantiateOptions, PdeId};
use crate::report::Verdict;
use crate::verify::ode::verify_ode;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source {
    Pde(PdeId),
    /// Coefficients `a0..a3` of `u'' = a0 + a1 u + a2 u^2 + a3 u^3`.
    Raw([f64; 4]),
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Source::Pde(p) => write!(f, "{p}"),
            Source::Raw(a) => write!(f, "raw {:?}", a),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolveRequest {
    pub source: Source,
    pub params: Env,
    /// Binds `c0`; otherwise families that fix `c0` compute it.
    pub c0: Option<f64>,
    pub modulus: Option<f64>,
    pub certificate: SampleSpec,
}

impl SolveRequest {
    pub fn new(source: Source, params: Env) -> Self {
        SolveRequest {
            source,
            params,
            c0: None,
            modulus: None,
            certificate: SampleSpec::default(),
        }
    }
}

/// Residual summary attached to every listed solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certificate {
    pub max_residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilySolution {
    pub family: String,
    pub case: u8,
    pub form: String,
    pub conditions: Vec<String>,
    pub params: BTreeMap<String, f64>,
    pub certificate: Option<Certificate>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExcludedFamily {
    pub family: String,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstrainedSolution {
    #[serde(flatten)]
    pub matched: ConstrainedMatch,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntrySolution {
    pub name: &'static str,
    pub family: String,
    pub profile: String,
    pub conditions: Vec<String>,
    pub admissible: bool,
    /// Why the entry is not admissible or cannot be bound.
    pub reason: Option<String>,
    pub notes: Vec<String>,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub source: String,
    pub parameters: BTreeMap<String, f64>,
    /// `a0..a3`, absent when a wave parameter is unbound.
    pub reduced: Option<[f64; 4]>,
    pub matched: Option<MatchResult>,
    pub c0_mode: C0Mode,
    pub families: Vec<FamilySolution>,
    pub excluded: Vec<ExcludedFamily>,
    pub constrained: Vec<ConstrainedSolution>,
    pub entries: Vec<EntrySolution>,
    pub notes: Vec<String>,
}

fn certificate(r: &crate::report::ResidualReport) -> Certificate {
    Certificate {
        max_residual: r.max_residual(),
        tolerance: r.tolerance,
        verdict: r.verdict,
    }
}

fn param_map(env: &Env) -> BTreeMap<String, f64> {
    env.bindings()
        .into_iter()
        .map(|(s, v)| (s.key().to_string(), v))
        .collect()
}

/// Runs the pipeline for `req`.
///
/// Violated reduction denominators are errors. Missing wave parameters only
/// skip the steps that need them.
pub fn solve(req: &SolveRequest) -> Result<SolveReport> {
    let mut params = req.params;
    if let Some(c0) = req.c0 {
        params.set(Symbol::C0, c0);
    }
    let mut notes = Vec::new();
    let reduced = match req.source {
        Source::Raw(a) => Some(ReducedOde::raw(a)?),
        Source::Pde(p) => match reduce(p, &params) {
            Ok(r) => Some(r),
            Err(Error::MissingParameter(s)) => {
                notes.push(format!("reduction needs {s}; unconstrained classification skipped"));
                None
            }
            Err(e) => return Err(e),
        },
    };
    let c0_mode = match req.c0 {
        Some(_) => C0Mode::Bound,
        None => C0Mode::Free { hint: None },
    };
    let mut families = Vec::new();
    let mut excluded = Vec::new();
    let matched = reduced.as_ref().map(match_coefficients);
    if let Some(m) = &matched {
        let c = m.with_c0(req.c0.unwrap_or(0.0))?;
        let opts = ResolveOptions {
            modulus: req.modulus,
            epsilon: 1.0,
            c0: c0_mode,
        };
        let cls = classify(&c, &opts)?;
        for rf in cls.admitted {
            let (cert, error) = match verify_ode(&rf, &req.certificate) {
                Ok(r) => (Some(certificate(&r)), None),
                Err(e) => (None, Some(e.to_string())),
            };
            families.push(FamilySolution {
                family: rf.family.id.to_string(),
                case: rf.family.case_id,
                form: rf.family.form.to_string(),
                conditions: rf.family.conditions.iter().map(|c| c.label.clone()).collect(),
                params: rf.parameter_map(),
                certificate: cert,
                error,
            });
        }
        excluded = cls
            .excluded
            .into_iter()
            .map(|e| ExcludedFamily {
                family: e.id.to_string(),
                reason: e.reason,
            })
            .collect();
    }
    let mut constrained = Vec::new();
    let mut entries = Vec::new();
    if let Source::Pde(pde) = req.source {
        if let Some(m) = req.modulus {
            params.set(Symbol::M, m);
        }
        for family in corrected_catalog() {
            let found = match resolve_constrained_match(pde, &params, family) {
                Ok(v) => v,
                Err(Error::MissingParameter(_)) | Err(Error::NonConvergence { .. }) => continue,
                Err(e) => return Err(e),
            };
            for cm in found.into_iter().filter(|c| c.method != Method::Unconstrained) {
                let cert = cm
                    .admissible()
                    .then(|| verify_ode(&cm.resolved(family.clone()), &req.certificate).ok())
                    .flatten()
                    .map(|r| certificate(&r));
                constrained.push(ConstrainedSolution {
                    matched: cm,
                    certificate: cert,
                });
            }
        }
        for entry in solution_table(pde) {
            let listing = entry.listing();
            let mut out = EntrySolution {
                name: entry.name,
                family: entry.family.to_string(),
                profile: listing.profile,
                conditions: listing.conditions,
                admissible: false,
                reason: None,
                notes: Vec::new(),
                certificate: None,
            };
            match entry.instantiate(&params, InstantiateOptions::default()) {
                Ok(sol) => {
                    out.admissible = true;
                    out.profile = sol.entry.profile.to_string();
                    out.notes = sol.notes.clone();
                    match sol.ode_report(&req.certificate) {
                        Ok(r) => out.certificate = Some(certificate(&r)),
                        Err(e) => out.reason = Some(e.to_string()),
                    }
                }
                Err(e) => out.reason = Some(e.to_string()),
            }
            entries.push(out);
        }
    }
    Ok(SolveReport {
        source: req.source.to_string(),
        parameters: param_map(&params),
        reduced: reduced.map(|r| r.a),
        matched,
        c0_mode,
        families,
        excluded,
        constrained,
        entries,
        notes,
    })
}
