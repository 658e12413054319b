//! Operation-count formulas, machine profiles and the classical-vs-MPBSM
//! comparison.
//!
//! Running times are modeled as pure rate division: a machine that performs
//! `r_add` additions and `r_mul` multiplications per second needs
//! `mults / r_mul + adds / r_add` seconds. Instruction fetch, memory traffic
//! and I/O are not modeled.

mod formula;
mod machine;
mod tables;

use serde::{Deserialize, Serialize};

pub use formula::{count_formula, store_zechin_closed_form, AddsVariant, FormulaCount, Provenance};
pub use machine::{format_ms, load_profiles, round_half_up, runtime_ms, MachineProfile};
pub use tables::{
    build_attribution_table, build_count_table, build_runtime_table, build_table4, build_table5,
    build_tables123, table_by_number, Cell, CellValue, Table, TableFormat, DERIVED_NOTE,
    PUBLISHED_ORDERS,
};

use crate::algos::Algorithm;
use crate::error::{Error, Result};

/// Measured MPBSM sampling time for an `n`-photon task.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingReference {
    pub photons: usize,
    pub mpbsm_time_ms: f64,
}

pub const MPBSM_REFERENCE: [SamplingReference; 3] = [
    SamplingReference {
        photons: 3,
        mpbsm_time_ms: 0.2,
    },
    SamplingReference {
        photons: 4,
        mpbsm_time_ms: 6.6,
    },
    SamplingReference {
        photons: 5,
        mpbsm_time_ms: 248.8,
    },
];

pub fn mpbsm_time_ms(photons: usize) -> Result<f64> {
    MPBSM_REFERENCE
        .iter()
        .find(|r| r.photons == photons)
        .map(|r| r.mpbsm_time_ms)
        .ok_or(Error::NoReference(photons))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonVerdict {
    pub photons: usize,
    pub machine: String,
    /// Fastest classical algorithm on this machine.
    pub algorithm: Algorithm,
    pub classical_ms: f64,
    pub mpbsm_ms: f64,
    pub classical_wins: bool,
}

/// Compares the built-in machines against MPBSM.
pub fn verdict(photons: usize) -> Result<Vec<ComparisonVerdict>> {
    verdict_with(photons, &MachineProfile::builtin())
}

/// For each machine, picks the fastest of the three algorithms (exact
/// counts) and compares its unrounded time with the MPBSM reference.
pub fn verdict_with(photons: usize, machines: &[MachineProfile]) -> Result<Vec<ComparisonVerdict>> {
    let mpbsm_ms = mpbsm_time_ms(photons)?;
    machines
        .iter()
        .map(|machine| {
            let mut best: Option<(Algorithm, f64)> = None;
            for alg in Algorithm::ALL {
                let counts = count_formula(alg, photons, AddsVariant::Exact)?.counts;
                let ms = runtime_ms(machine, counts);
                if best.is_none_or(|(_, b)| ms < b) {
                    best = Some((alg, ms));
                }
            }
            let (algorithm, classical_ms) = best.expect("three algorithms");
            Ok(ComparisonVerdict {
                photons,
                machine: machine.name.clone(),
                algorithm,
                classical_ms,
                mpbsm_ms,
                classical_wins: classical_ms < mpbsm_ms,
            })
        })
        .collect()
}
