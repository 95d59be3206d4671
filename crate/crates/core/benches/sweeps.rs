use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ellipsolve::catalog::{check_families, corrected_catalog, SampleSpec};
use ellipsolve::exec::Execution;
use ellipsolve::expr::{Env, Symbol};
use ellipsolve::pde::{find_entry, InstantiateOptions, PdeId};
use ellipsolve::verify::{verify_pde, PdeSpec};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn pde_grid(c: &mut Criterion) {
    let sol = find_entry(PdeId::Mbbm, "u5")
        .unwrap()
        .instantiate(&Env::new().with(Symbol::Omega, 2.0), InstantiateOptions::default())
        .unwrap();
    let mut g = c.benchmark_group("verify_pde_mbbm_u5_512x64");
    g.sample_size(10);
    for (name, mode) in MODES {
        let spec = PdeSpec::default().with_execution(mode);
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(verify_pde(&sol, &spec).unwrap()))
        });
    }
    g.finish();
}

fn catalog_sweep(c: &mut Criterion) {
    let families = corrected_catalog();
    let mut g = c.benchmark_group("catalog_check_5_draws");
    g.sample_size(10);
    for (name, mode) in MODES {
        let spec = SampleSpec::default().with_execution(mode);
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(check_families(families, 5, 42, &spec).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, pde_grid, catalog_sweep);
criterion_main!(benches);
