//! Checks of the claim that some table entries hold for an arbitrary `c0`.
//!
//! None of the audited profiles contains `c0`, so their PDE residual cannot
//! depend on it. What does depend on it is the first form: the family behind
//! each profile ties `c0` to the other coefficients, and the audit records the
//! first-form residual and the family side conditions at every sample.

use serde::Serialize;

use crate::catalog::{coefficients_from_env, SampleSpec};
use crate::error::Result;
use crate::expr::{Env, Symbol};
use crate::pde::{find_entry, InstantiateOptions, PdeId};
use crate::report::Verdict;
use crate::verify::ode::{profile_report, Forms};
use crate::verify::pde::{verify_pde, PdeSpec};

/// Entries the audit is meant for.
pub fn audited_entries(pde: PdeId) -> &'static [&'static str] {
    match pde {
        PdeId::Mbbm => &["u5", "u6", "u7", "u8", "u9"],
        PdeId::Nls => &["u10", "u11", "u12"],
        PdeId::KdvMkdv => &[],
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct C0Sample {
    pub c0: f64,
    pub first_form_max: f64,
    pub second_form_max: f64,
    /// Family side conditions that fail with this `c0`.
    pub violated: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct C0AuditEntry {
    pub subject: String,
    pub parameters: std::collections::BTreeMap<String, f64>,
    pub c0_in_profile: bool,
    /// `c0` implied by the family relations at these parameters.
    pub family_c0: f64,
    pub pde_verdict: Verdict,
    pub pde_residual: f64,
    pub samples: Vec<C0Sample>,
    pub finding: String,
}

/// Runs the audit for `solutions` of `pde` at `params`, once per `c0` sample.
pub fn arbitrary_c0_audit(
    pde: PdeId,
    solutions: &[&str],
    params: &Env,
    c0_samples: &[f64],
    pde_spec: &PdeSpec,
    ode_spec: &SampleSpec,
) -> Result<Vec<C0AuditEntry>> {
    let mut out = Vec::with_capacity(solutions.len());
    for name in solutions {
        let entry = find_entry(pde, name)?;
        let c0_in_profile = entry.profile.contains_symbol(Symbol::C0);
        let sol = entry.instantiate(params, InstantiateOptions::default())?;
        let pde_report = verify_pde(&sol, pde_spec)?;
        let family_c0 = sol.family_params.get(Symbol::C0);
        let mut samples = Vec::with_capacity(c0_samples.len());
        for &c0 in c0_samples {
            let mut env = sol.family_params;
            env.set(Symbol::C0, c0);
            let c = coefficients_from_env(&env)?;
            let r = profile_report(sol.subject(), &sol, &c, ode_spec, Forms::Both)?;
            samples.push(C0Sample {
                c0,
                first_form_max: r.first_form.map_or(f64::NAN, |n| n.effective_max()),
                second_form_max: r.second_form.map_or(f64::NAN, |n| n.effective_max()),
                violated: sol.family.violated(&env).iter().map(|c| c.label.clone()).collect(),
            });
        }
        let first_ok = samples.iter().filter(|s| s.first_form_max <= ode_spec.tol).count();
        let finding = if c0_in_profile {
            "profile depends on c0; samples are not interchangeable".to_string()
        } else {
            format!(
                "profile free of c0; PDE {:?} for every c0; second form holds at all {} samples, first form at {} (only where c0 matches the family relation)",
                pde_report.verdict,
                samples.len(),
                first_ok
            )
        };
        out.push(C0AuditEntry {
            subject: sol.subject(),
            parameters: sol.parameter_map(),
            c0_in_profile,
            family_c0,
            pde_verdict: pde_report.verdict,
            pde_residual: pde_report.max_residual(),
            samples,
            finding,
        });
    }
    Ok(out)
}

/// Default `c0` samples for [`default_c0_audit`].
pub const DEFAULT_C0_SAMPLES: [f64; 3] = [-1.0, 0.5, 2.0];

/// Parameters inside each audited entry's printed region.
pub fn audit_params(pde: PdeId, name: &str) -> Env {
    use Symbol::*;
    let base = Env::new();
    match (pde, name) {
        (PdeId::Mbbm, "u7" | "u8") => base.with(Omega, 0.5),
        (PdeId::Mbbm, _) => base.with(Omega, 2.0).with(M, 0.5),
        (PdeId::Nls, "u10") => base
            .with(Alpha, 1.0)
            .with(Beta, 1.0)
            .with(Omega, 1.0)
            .with(Freq, 1.0)
            .with(M, 0.8),
        (PdeId::Nls, "u11") => base
            .with(Alpha, 1.0)
            .with(Beta, -1.0)
            .with(Omega, 1.0)
            .with(Freq, -1.0)
            .with(M, 0.5),
        (PdeId::Nls, _) => base
            .with(Alpha, 1.0)
            .with(Beta, 1.0)
            .with(Omega, 1.0)
            .with(Freq, 1.0)
            .with(M, 0.3),
        (PdeId::KdvMkdv, _) => base,
    }
}

/// The audit over every audited entry at [`audit_params`].
pub fn default_c0_audit(c0_samples: &[f64], pde_spec: &PdeSpec, ode_spec: &SampleSpec) -> Result<Vec<C0AuditEntry>> {
    let mut out = Vec::new();
    for pde in [PdeId::Mbbm, PdeId::Nls] {
        for name in audited_entries(pde) {
            out.extend(arbitrary_c0_audit(
                pde,
                &[name],
                &audit_params(pde, name),
                c0_samples,
                pde_spec,
                ode_spec,
            )?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mbbm_u5_independent_of_c0() {
        let params = Env::new().with(Symbol::Omega, 3.0);
        let r = arbitrary_c0_audit(
            PdeId::Mbbm,
            &["u5"],
            &params,
            &[-1.0, 0.5, 2.0],
            &PdeSpec::default(),
            &SampleSpec::default(),
        )
        .unwrap();
        let e = &r[0];
        assert!(!e.c0_in_profile);
        assert_eq!(e.pde_verdict, Verdict::Pass);
        assert!(e.samples.iter().all(|s| s.second_form_max <= 1e-6));
        // ω=3 gives c2=-2/3, c4=1/18, so the tanh family needs c0 = c2²/(4c4) = 2.
        assert!((e.family_c0 - 2.0).abs() < 1e-12);
        for s in &e.samples {
            let matches = (s.c0 - e.family_c0).abs() < 1e-12;
            assert_eq!(s.first_form_max <= 1e-6, matches, "{s:?}");
            assert_eq!(s.violated.is_empty(), matches, "{s:?}");
        }
    }
}
