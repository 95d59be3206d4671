use std::collections::BTreeMap;
use std::sync::Arc;

use ellipsolve::catalog::errata::errata_kind;
use ellipsolve::catalog::{
    check_families, corrected_catalog, evaluate_family, Constraint, ErrataOptions, FamilyId, ModulusRule,
    ResolvedFamily, SampleSpec, SolutionFamily,
};
use ellipsolve::errata::errata_ledger;
use ellipsolve::expr::{Env, Symbol};
use ellipsolve::pde::{find_entry, InstantiateOptions, PdeId};
use ellipsolve::report::{ResidualReport, Verdict};
use ellipsolve::solve::{solve, SolveRequest, Source};
use ellipsolve::verify::{default_c0_audit, verify_pde, PdeGrid, PdeSpec, DEFAULT_C0_SAMPLES};
use ellipsolve::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{CatalogAction, Cli, Command, ErrataArgs, EvalArgs, SolveArgs, VerifyArgs};
use crate::output::{Cell, Output, Table};

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Catalog { action } => match action {
            CatalogAction::List => catalog_list(),
            CatalogAction::Check { family, samples } => catalog_check(cli, family.as_deref(), *samples),
        },
        Command::Solve(a) => cmd_solve(cli, a),
        Command::Verify(a) => cmd_verify(cli, a),
        Command::Eval(a) => cmd_eval(cli, a),
        Command::Errata(a) => cmd_errata(cli, a),
    }
}

fn catalog_list() -> Result<Output> {
    let rows: Vec<_> = corrected_catalog()
        .iter()
        .map(|f| f.listing(errata_kind(f.id)))
        .collect();
    let mut t = Table::new(&[
        "id",
        "case",
        "form",
        "constraints",
        "inferred",
        "modulus",
        "poles",
        "errata",
    ]);
    for r in &rows {
        t.push(vec![
            r.id.to_string().into(),
            (r.case as usize).into(),
            r.form.clone().into(),
            r.constraints.join("; ").into(),
            r.inferred_constraints.join("; ").into(),
            match r.modulus {
                ModulusRule::None => String::new(),
                ModulusRule::Free => "free".into(),
                ModulusRule::Fixed(m) => format!("m={m}"),
            }
            .into(),
            r.poles.clone().into(),
            r.errata
                .map(|k| {
                    serde_json::to_value(k)
                        .unwrap()
                        .as_str()
                        .unwrap_or_default()
                        .to_string()
                })
                .unwrap_or_default()
                .into(),
        ]);
    }
    Ok(Output::new(&rows, t, 0).with_summary(format!("{} families", rows.len())))
}

fn catalog_check(cli: &Cli, family: Option<&str>, samples: usize) -> Result<Output> {
    let families: Vec<Arc<SolutionFamily>> = match family {
        Some(id) => {
            let id: FamilyId = id.parse()?;
            corrected_catalog().iter().filter(|f| f.id == id).cloned().collect()
        }
        None => corrected_catalog().to_vec(),
    };
    let mut spec = SampleSpec::default();
    if let Some(tol) = cli.tol {
        spec = spec.with_tol(tol);
    }
    let checks = check_families(&families, samples, cli.seed, &spec)?;
    let verdict = checks.iter().fold(Verdict::Pass, |v, c| v.combine(c.verdict));
    let mut t = Table::new(&[
        "id",
        "draws",
        "max_residual",
        "tolerance",
        "failed_draws",
        "verdict",
        "errata",
    ]);
    for c in &checks {
        t.push(vec![
            c.id.to_string().into(),
            c.draws.into(),
            c.max_residual.into(),
            c.tolerance.into(),
            c.failed_draws.into(),
            verdict_text(c.verdict).into(),
            c.errata.map(|_| "corrected").unwrap_or("").into(),
        ]);
    }
    #[derive(Serialize)]
    struct Report<'a> {
        seed: u64,
        samples: usize,
        verdict: Verdict,
        families: &'a [ellipsolve::catalog::FamilyCheck],
    }
    let report = Report {
        seed: cli.seed,
        samples,
        verdict,
        families: &checks,
    };
    Ok(Output::new(&report, t, verdict.exit_code()).with_summary(format!(
        "{} families, seed {}, verdict {}",
        checks.len(),
        cli.seed,
        verdict_text(verdict)
    )))
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn cert_cells(c: Option<ellipsolve::solve::Certificate>) -> [Cell; 2] {
    match c {
        Some(c) => [c.max_residual.into(), verdict_text(c.verdict).into()],
        None => [Cell::Text(String::new()), Cell::Text(String::new())],
    }
}

fn cmd_solve(cli: &Cli, a: &SolveArgs) -> Result<Output> {
    let source = match (&a.pde, &a.raw) {
        (Some(p), _) => Source::Pde(p.parse()?),
        (None, Some(r)) if r.len() == 4 => Source::Raw([r[0], r[1], r[2], r[3]]),
        (None, Some(r)) => {
            return Err(Error::Domain(format!(
                "--raw needs 4 coefficients a0,a1,a2,a3, got {}",
                r.len()
            )))
        }
        (None, None) => return Err(Error::MissingParameter("--pde or --raw".into())),
    };
    let mut params = a.params.env();
    params.unset(Symbol::C0);
    params.unset(Symbol::M);
    let mut req = SolveRequest::new(source, params);
    req.c0 = a.params.c0;
    req.modulus = a.params.m;
    if let Some(tol) = cli.tol {
        req.certificate = req.certificate.with_tol(tol);
    }
    let r = solve(&req)?;
    let mut t = Table::new(&[
        "kind",
        "name",
        "family",
        "admissible",
        "max_residual",
        "verdict",
        "detail",
    ]);
    for f in &r.families {
        let [res, v] = cert_cells(f.certificate);
        t.push(vec![
            "family".into(),
            f.family.clone().into(),
            f.family.clone().into(),
            true.into(),
            res,
            v,
            f.form.clone().into(),
        ]);
    }
    for c in &r.constrained {
        let [res, v] = cert_cells(c.certificate);
        let m = &c.matched;
        t.push(vec![
            "constrained".into(),
            m.family.to_string().into(),
            m.family.to_string().into(),
            m.admissible().into(),
            res,
            v,
            format!(
                "ω={} {}={}{}",
                m.omega,
                m.wave_constant_name,
                m.wave_constant,
                m.m.map(|m| format!(" m={m}")).unwrap_or_default()
            )
            .into(),
        ]);
    }
    for e in &r.entries {
        let [res, v] = cert_cells(e.certificate);
        t.push(vec![
            "entry".into(),
            e.name.into(),
            e.family.clone().into(),
            e.admissible.into(),
            res,
            v,
            e.reason.clone().unwrap_or_else(|| e.profile.clone()).into(),
        ]);
    }
    t.preamble.push(format!("source {}", r.source));
    if let Some(a) = r.reduced {
        t.preamble.push(format!(
            "reduced u'' = {} + {} u + {} u^2 + {} u^3",
            a[0], a[1], a[2], a[3]
        ));
    }
    if let Some(m) = &r.matched {
        t.preamble.push(format!("matched c1..c4 = {:?}", m.c));
    }
    let admissible = r.entries.iter().filter(|e| e.admissible).count();
    let out = Output::new(&r, t, 0).with_summary(format!(
        "{} admitted families, {} constrained matches, {} admissible table entries",
        r.families.len(),
        r.constrained.len(),
        admissible
    ));
    Ok(r.notes.iter().fold(out, |o, n| o.with_summary(n.clone())))
}

fn parse_pair(s: &str, what: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::Domain(format!("{what} must be a:b, got {s:?}"));
    if parts.len() != 2 {
        return Err(bad());
    }
    Ok((
        parts[0].trim().parse().map_err(|_| bad())?,
        parts[1].trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_range(s: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::Domain(format!("range must be a:b:n, got {s:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !(a.is_finite() && b.is_finite()) || n == 0 || (n > 1 && b <= a) {
        return Err(Error::InvalidGrid(format!("range {s:?} needs finite a < b and n ≥ 1")));
    }
    Ok((a, b, n))
}

fn samples(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn report_table(r: &ResidualReport) -> Table {
    let mut t = Table::new(&[
        "subject",
        "check",
        "max",
        "median",
        "truncation",
        "tolerance",
        "samples",
        "verdict",
    ]);
    let norms = r.pde_residual.or(r.ode_residual);
    t.push(vec![
        r.subject.clone().into(),
        serde_json::to_value(r.check)
            .unwrap()
            .as_str()
            .unwrap_or_default()
            .to_string()
            .into(),
        r.max_residual().into(),
        norms.map(|n| n.median).into(),
        r.truncation_estimate.into(),
        r.tolerance.into(),
        r.grid.samples.into(),
        verdict_text(r.verdict).into(),
    ]);
    t.preamble.push(format!(
        "parameters {}",
        r.parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    t
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> Result<Output> {
    let pde: PdeId = a.pde.parse()?;
    let entry = find_entry(pde, &a.solution)?;
    let sol = entry.instantiate(
        &a.params.env(),
        InstantiateOptions {
            unchecked: a.unchecked,
            printed: a.printed,
        },
    )?;
    let grid = PdeGrid::new(
        parse_pair(&a.grid.x, "--x")?,
        parse_pair(&a.grid.t_range, "--t-range")?,
        a.grid.nx,
        a.grid.nt,
    )?;
    let mut spec = PdeSpec::default().with_grid(grid).with_exclusion(!a.grid.keep_poles);
    if let Some(tol) = cli.tol {
        spec = spec.with_tol(tol);
    }
    let r = verify_pde(&sol, &spec)?.with_seed(cli.seed);
    let t = report_table(&r);
    let mut out = Output::new(&r, t, r.verdict.exit_code());
    for n in &r.notes {
        out = out.with_summary(n.clone());
    }
    Ok(out)
}

/// Free parameters not given on the command line come from a seeded admissible draw.
fn bind_family(family: &Arc<SolutionFamily>, given: &Env, seed: u64) -> Result<(ResolvedFamily, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let drawn = ellipsolve::catalog::draw_admissible(family, &mut rng)?;
    let mut env = Env::new();
    let mut notes = Vec::new();
    for s in Symbol::COEFFICIENTS.into_iter().chain([Symbol::M, Symbol::Eps]) {
        if given.is_bound(s) {
            env.set(s, given.get(s));
        }
    }
    if family.epsilon && !env.is_bound(Symbol::Eps) {
        env.set(Symbol::Eps, 1.0);
    }
    for _ in 0..2 {
        for cond in &family.conditions {
            if let Constraint::Assign { symbol, value } = &cond.constraint {
                if !given.is_bound(*symbol) {
                    let v = value.eval(&env);
                    if v.is_finite() {
                        env.set(*symbol, v);
                    }
                }
            }
        }
    }
    for s in family.free_symbols().into_iter().chain(Symbol::COEFFICIENTS) {
        if !env.is_bound(s) && drawn.is_bound(s) {
            env.set(s, drawn.get(s));
            notes.push(format!("{} drawn = {}", s.key(), drawn.get(s)));
        }
    }
    for _ in 0..2 {
        for cond in &family.conditions {
            if let Constraint::Assign { symbol, value } = &cond.constraint {
                if !given.is_bound(*symbol) {
                    env.set(*symbol, value.eval(&env));
                }
            }
        }
    }
    Ok((ResolvedFamily::new(family.clone(), env)?, notes))
}

fn cmd_eval(cli: &Cli, a: &EvalArgs) -> Result<Output> {
    let (lo, hi, n) = parse_range(&a.range)?;
    let xs = samples(lo, hi, n);
    #[derive(Serialize)]
    struct Tabulation {
        subject: String,
        parameters: BTreeMap<String, f64>,
        columns: Vec<String>,
        rows: Vec<Vec<f64>>,
        skipped: usize,
        notes: Vec<String>,
    }
    let mut rows = Vec::with_capacity(n);
    let mut skipped = 0;
    let (subject, parameters, columns, notes) = if let Some(fid) = &a.family {
        let id: FamilyId = fid.parse()?;
        let family = corrected_catalog()
            .iter()
            .find(|f| f.id == id)
            .cloned()
            .ok_or_else(|| Error::UnknownFamily(fid.clone()))?;
        let (rf, notes) = bind_family(&family, &a.params.env(), cli.seed)?;
        for &xi in &xs {
            match evaluate_family(&rf, xi) {
                Ok(v) => rows.push(vec![xi, v]),
                Err(Error::Pole { .. }) | Err(Error::Domain(_)) if a.skip_poles => skipped += 1,
                Err(e) => return Err(e),
            }
        }
        (
            id.to_string(),
            rf.parameter_map(),
            vec!["xi".to_string(), "value".to_string()],
            notes,
        )
    } else {
        let pde: PdeId = a.pde.as_deref().unwrap_or_default().parse()?;
        let entry = find_entry(pde, a.solution.as_deref().unwrap_or_default())?;
        let sol = entry.instantiate(
            &a.params.env(),
            InstantiateOptions {
                unchecked: a.unchecked,
                printed: a.printed,
            },
        )?;
        let complex = pde.is_complex();
        for &x in &xs {
            match sol.eval_checked(x, a.t) {
                Ok(v) if complex => rows.push(vec![x, a.t, v.re, v.im]),
                Ok(v) => rows.push(vec![x, a.t, v.re]),
                Err(Error::Pole { .. }) | Err(Error::Domain(_)) if a.skip_poles => skipped += 1,
                Err(e) => return Err(e),
            }
        }
        let cols: &[&str] = if complex {
            &["x", "t", "re", "im"]
        } else {
            &["x", "t", "value"]
        };
        (
            sol.subject(),
            sol.parameter_map(),
            cols.iter().map(|c| c.to_string()).collect(),
            sol.notes.clone(),
        )
    };
    if rows.is_empty() {
        return Err(Error::InvalidGrid(format!("every point of {} lies at a pole", a.range)));
    }
    let mut t = Table::new(&columns.iter().map(String::as_str).collect::<Vec<_>>());
    t.preamble.push(format!(
        "{subject} {}",
        parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    for r in &rows {
        t.push(r.iter().map(|v| Cell::Num(*v)).collect());
    }
    let tab = Tabulation {
        subject,
        parameters,
        columns,
        rows,
        skipped,
        notes,
    };
    let mut out = Output::new(&tab, t, 0);
    if skipped > 0 {
        out = out.with_summary(format!("{skipped} points skipped at poles"));
    }
    Ok(out)
}

fn cmd_errata(cli: &Cli, a: &ErrataArgs) -> Result<Output> {
    let opts = ErrataOptions {
        seed: cli.seed,
        draws: a.draws,
        ..ErrataOptions::default()
    };
    let ledger = errata_ledger(&opts)?;
    let mut t = Table::new(&[
        "subject",
        "kind",
        "printed",
        "corrected",
        "printed_residual",
        "corrected_residual",
        "justified",
    ]);
    for e in ledger.families.iter().chain(&ledger.solutions) {
        t.push(vec![
            e.subject.clone().into(),
            serde_json::to_value(e.kind)
                .unwrap()
                .as_str()
                .unwrap_or_default()
                .to_string()
                .into(),
            e.printed.clone().into(),
            e.corrected.clone().into(),
            e.evidence.printed_residual.into(),
            e.evidence.corrected_residual.into(),
            e.evidence.is_forced().into(),
        ]);
    }
    for d in &ledger.kdv_discrepancies {
        t.push(vec![
            format!("kdv_mkdv subcase {} ({})", d.subcase, d.quantity).into(),
            "parameter".into(),
            d.printed.clone().into(),
            d.derived.clone().into(),
            d.printed_residual.into(),
            d.derived_residual.into(),
            d.justified.into(),
        ]);
    }
    let code = if ledger.all_justified() { 0 } else { 2 };
    #[derive(Serialize)]
    struct Report<'a> {
        #[serde(flatten)]
        ledger: &'a ellipsolve::errata::ErrataLedger,
        #[serde(skip_serializing_if = "Option::is_none")]
        c0_audit: Option<Vec<ellipsolve::verify::C0AuditEntry>>,
    }
    let audit = if a.c0_audit {
        let mut pde_spec = PdeSpec::default();
        if let Some(tol) = cli.tol {
            pde_spec = pde_spec.with_tol(tol);
        }
        Some(default_c0_audit(
            &DEFAULT_C0_SAMPLES,
            &pde_spec,
            &SampleSpec::default(),
        )?)
    } else {
        None
    };
    let mut out = Output::new(
        &Report {
            ledger: &ledger,
            c0_audit: audit.clone(),
        },
        t,
        code,
    );
    out = out.with_summary(format!(
        "{} family errata, {} solution errata, {} sub-case discrepancies; all justified: {}",
        ledger.families.len(),
        ledger.solutions.len(),
        ledger.kdv_discrepancies.len(),
        ledger.all_justified()
    ));
    for e in audit.iter().flatten() {
        out = out.with_summary(format!("c0 audit {}: {}", e.subject, e.finding));
    }
    Ok(out)
}
