//! Seeded certification sweeps over the corrected catalog.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::errata::{errata_kind, family_seed};
use super::{draw_admissible, ErrataKind, FamilyId, ResolvedFamily, SampleSpec, SolutionFamily};
use crate::error::Result;
use crate::report::Verdict;
use crate::verify::ode::verify_ode;

#[derive(Debug, Clone, Serialize)]
pub struct FamilyCheck {
    pub id: FamilyId,
    pub errata: Option<ErrataKind>,
    pub draws: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Worst two-form residual over the draws.
    pub max_residual: f64,
    pub failed_draws: usize,
    pub verdict: Verdict,
}

/// `verify_ode` on `draws` seeded admissible parameter sets of `family`.
pub fn check_family(family: &Arc<SolutionFamily>, draws: usize, seed: u64, spec: &SampleSpec) -> Result<FamilyCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(family_seed(seed, family.id));
    let mut worst: f64 = 0.0;
    let mut failed = 0;
    for _ in 0..draws {
        let env = draw_admissible(family, &mut rng)?;
        let r = verify_ode(&ResolvedFamily::unchecked(family.clone(), env), spec)?;
        let m = r.max_residual();
        worst = if m.is_nan() { f64::INFINITY } else { worst.max(m) };
        if r.verdict != Verdict::Pass {
            failed += 1;
        }
    }
    Ok(FamilyCheck {
        id: family.id,
        errata: errata_kind(family.id),
        draws,
        seed,
        tolerance: spec.tol,
        max_residual: worst,
        failed_draws: failed,
        verdict: if failed == 0 { Verdict::Pass } else { Verdict::Fail },
    })
}

/// [`check_family`] over `families`, in parallel across families when
/// `spec.execution` allows.
pub fn check_families(
    families: &[Arc<SolutionFamily>],
    draws: usize,
    seed: u64,
    spec: &SampleSpec,
) -> Result<Vec<FamilyCheck>> {
    let inner = spec.with_execution(crate::exec::Execution::Sequential);
    spec.execution
        .map(families, |f| check_family(f, draws, seed, &inner))
        .into_iter()
        .collect()
}
