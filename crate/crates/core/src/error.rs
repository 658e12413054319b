use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix order must be at least 1")]
    EmptyMatrix,
    #[error("expected {expected} entries for a square matrix, found {found}")]
    NotSquare { expected: usize, found: usize },
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("row set has {rows} indices but column set has {cols}")]
    RemovalMismatch { rows: usize, cols: usize },
    #[error("cannot remove every row of an order-{0} matrix")]
    RemovesEverything(usize),
    #[error("duplicate index {0} in index set")]
    DuplicateIndex(usize),
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("order {order} exceeds the {what} limit of {limit}")]
    OrderLimit {
        what: &'static str,
        order: usize,
        limit: usize,
    },
    #[error("memo table for order {order} needs {needed} bytes, budget is {budget}")]
    MemoBudget {
        order: usize,
        needed: u128,
        budget: u128,
    },
    #[error("operation count overflows 64 bits at order {0}")]
    CountOverflow(usize),
    #[error("order {0} is too small for this operation")]
    OrderTooSmall(usize),
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("the claimed addition count only exists for Ryser")]
    ClaimedVariant,
    #[error("machine `{0}`: rates must be strictly positive")]
    BadRate(String),
    #[error("unknown machine `{0}`")]
    UnknownMachine(String),
    #[error("no MPBSM reference time for {0} photons (only 3, 4, 5)")]
    NoReference(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is not unitary: |(U^dagger U - I)[{row}][{col}]| = {deviation:e}")]
    NotUnitary {
        row: usize,
        col: usize,
        deviation: f64,
    },
    #[error("photon count mismatch: {inputs} input photons, {outputs} detected")]
    PhotonMismatch { inputs: usize, outputs: usize },
    #[error("pattern has {found} modes, interferometer has {modes}")]
    PatternWidth { found: usize, modes: usize },
    #[error("{outcomes} outcomes for {photons} photons exceed the enumeration cap of {cap}")]
    EnumerationCap {
        photons: usize,
        outcomes: u128,
        cap: u128,
    },
    #[error("{0} photons exceed the exhaustive-distribution limit of 6")]
    TooManyPhotons(usize),
    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch {
        expected: &'static str,
        found: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
