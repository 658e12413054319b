//! Permanent algorithms: naive enumeration, Ryser inclusion-exclusion and
//! Store-zechin memoized expansion.
//!
//! Each algorithm is written once, generic over a [`Tally`]. The
//! `*_permanent` entry points run it under an [`OpCounter`] and return the
//! value together with the measured operation counts.

mod naive;
mod ryser;
mod store_zechin;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::count::{OpCount, OpCounter, Tally, Uncounted};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::SquareMatrix;
use crate::ring::Ring;

pub use naive::naive_with;
pub use ryser::ryser_with;
pub use store_zechin::{
    repetition_report, store_zechin_attributed, store_zechin_with, AttributionReport,
    LayerRepetition, RepetitionReport, StoreZechinStats,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Naive,
    Ryser,
    StoreZechin,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Naive, Algorithm::Ryser, Algorithm::StoreZechin];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Ryser => "ryser",
            Algorithm::StoreZechin => "store-zechin",
        }
    }

    /// Name as printed in the comparison tables.
    pub fn display_name(self) -> &'static str {
        match self {
            Algorithm::Naive => "Naive",
            Algorithm::Ryser => "Ryser",
            Algorithm::StoreZechin => "Store-zechin",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "naive" => Ok(Algorithm::Naive),
            "ryser" => Ok(Algorithm::Ryser),
            "store-zechin" | "storezechin" | "store_zechin" => Ok(Algorithm::StoreZechin),
            _ => Err(Error::UnknownAlgorithm(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PermanentResult<R> {
    pub value: R,
    pub counts: OpCount,
    pub algorithm: Algorithm,
}

fn check_order<R: Ring>(a: &SquareMatrix<R>, algorithm: Algorithm, limits: &Limits) -> Result<()> {
    let (what, limit) = match algorithm {
        Algorithm::Naive => ("naive order", limits.naive_order_limit),
        Algorithm::Ryser | Algorithm::StoreZechin => ("subset order", limits.subset_order_limit),
    };
    if a.order() > limit {
        return Err(Error::OrderLimit {
            what,
            order: a.order(),
            limit,
        });
    }
    Ok(())
}

fn run_with<R: Ring, T: Tally>(
    a: &SquareMatrix<R>,
    algorithm: Algorithm,
    limits: &Limits,
    tally: &T,
) -> Result<R> {
    check_order(a, algorithm, limits)?;
    match algorithm {
        Algorithm::Naive => Ok(naive_with(a, tally)),
        Algorithm::Ryser => Ok(ryser_with(a, tally)),
        Algorithm::StoreZechin => store_zechin_with(a, tally, limits).map(|(v, _)| v),
    }
}

/// Permanent with measured operation counts.
pub fn permanent<R: Ring>(
    a: &SquareMatrix<R>,
    algorithm: Algorithm,
    limits: &Limits,
) -> Result<PermanentResult<R>> {
    let counter = OpCounter::new();
    let value = run_with(a, algorithm, limits, &counter)?;
    Ok(PermanentResult {
        value,
        counts: counter.snapshot(),
        algorithm,
    })
}

/// Permanent value only, without instrumentation overhead.
pub fn permanent_value<R: Ring>(
    a: &SquareMatrix<R>,
    algorithm: Algorithm,
    limits: &Limits,
) -> Result<R> {
    run_with(a, algorithm, limits, &Uncounted)
}

pub fn naive_permanent<R: Ring>(a: &SquareMatrix<R>) -> Result<PermanentResult<R>> {
    permanent(a, Algorithm::Naive, &Limits::default())
}

pub fn ryser_permanent<R: Ring>(a: &SquareMatrix<R>) -> Result<PermanentResult<R>> {
    permanent(a, Algorithm::Ryser, &Limits::default())
}

pub fn store_zechin_permanent<R: Ring>(a: &SquareMatrix<R>) -> Result<PermanentResult<R>> {
    permanent(a, Algorithm::StoreZechin, &Limits::default())
}
