use ellipsolve::catalog::{check_families, corrected_catalog, ErrataOptions, SampleSpec};
use ellipsolve::errata::errata_ledger;
use ellipsolve::exec::Execution;
use ellipsolve::expr::{Env, Symbol};
use ellipsolve::pde::{find_entry, PdeId};
use ellipsolve::solve::{solve, SolveRequest, Source};
use ellipsolve::verify::{verify_pde, PdeSpec};

fn in_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn pde_report_is_independent_of_execution_mode() {
    let s = find_entry(PdeId::Nls, "u1")
        .unwrap()
        .instantiate(
            &Env::new()
                .with(Symbol::Alpha, 1.0)
                .with(Symbol::Beta, 2.0)
                .with(Symbol::Omega, 2.0)
                .with(Symbol::Freq, 1.0),
            Default::default(),
        )
        .unwrap();
    let seq = verify_pde(&s, &PdeSpec::default().with_execution(Execution::Sequential))
        .unwrap()
        .to_json();
    let par = in_pool(4, || {
        verify_pde(&s, &PdeSpec::default().with_execution(Execution::Parallel))
            .unwrap()
            .to_json()
    });
    assert_eq!(seq, par);
}

#[test]
fn catalog_sweep_is_independent_of_execution_mode() {
    let run = |e: Execution| {
        let checks = check_families(corrected_catalog(), 5, 42, &SampleSpec::default().with_execution(e)).unwrap();
        serde_json::to_string(&checks).unwrap()
    };
    let seq = run(Execution::Sequential);
    assert_eq!(seq, in_pool(3, || run(Execution::Parallel)));
    assert_eq!(seq, run(Execution::Sequential));
}

#[test]
fn seed_changes_the_sweep() {
    let spec = SampleSpec::default();
    let a = check_families(&corrected_catalog()[..3], 5, 42, &spec).unwrap();
    let b = check_families(&corrected_catalog()[..3], 5, 43, &spec).unwrap();
    let worst = |v: &[ellipsolve::catalog::FamilyCheck]| v.iter().map(|c| c.max_residual).collect::<Vec<_>>();
    assert_ne!(worst(&a), worst(&b));
}

#[test]
fn errata_ledger_is_reproducible() {
    let opts = ErrataOptions {
        draws: 5,
        ..Default::default()
    };
    let a = errata_ledger(&opts).unwrap();
    let b = in_pool(2, || errata_ledger(&opts).unwrap());
    assert_eq!(a.to_json(), b.to_json());
    assert!(a.all_justified());
}

#[test]
fn solve_report_is_reproducible() {
    let params = Env::new().with(Symbol::Omega, 2.0).with(Symbol::B, 0.0);
    let mut req = SolveRequest::new(Source::Pde(PdeId::Mbbm), params);
    req.c0 = Some(0.0);
    let a = serde_json::to_string(&solve(&req).unwrap()).unwrap();
    let b = serde_json::to_string(&solve(&req).unwrap()).unwrap();
    assert_eq!(a, b);
}
