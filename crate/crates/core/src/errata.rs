//! The complete errata ledger: catalog families, PDE table entries and the
//! KdV-mKdV sub-case parameter discrepancies.

use serde::Serialize;

use crate::catalog::{family_errata, ErrataEntry, ErrataOptions, SampleSpec};
use crate::error::Result;
use crate::matcher::{kdv_discrepancy_log, Discrepancy};
use crate::pde::solution_errata;

#[derive(Debug, Clone, Serialize)]
pub struct ErrataLedger {
    pub seed: u64,
    pub draws: usize,
    pub families: Vec<ErrataEntry>,
    pub solutions: Vec<ErrataEntry>,
    pub kdv_discrepancies: Vec<Discrepancy>,
}

impl ErrataLedger {
    /// Every entry has a printed residual above its threshold and a corrected
    /// one below, and every discrepancy is justified.
    pub fn all_justified(&self) -> bool {
        self.families
            .iter()
            .chain(&self.solutions)
            .all(|e| e.evidence.is_forced())
            && self.kdv_discrepancies.iter().all(|d| d.justified)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }
}

pub fn errata_ledger(opts: &ErrataOptions) -> Result<ErrataLedger> {
    let spec = SampleSpec::default()
        .with_points(opts.points)
        .with_execution(opts.execution);
    Ok(ErrataLedger {
        seed: opts.seed,
        draws: opts.draws,
        families: family_errata(opts)?,
        solutions: solution_errata(opts)?,
        kdv_discrepancies: kdv_discrepancy_log(&spec)?,
    })
}
