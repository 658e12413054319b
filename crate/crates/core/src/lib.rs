//! Exact matrix permanents with arithmetic-operation instrumentation.
//!
//! The crate provides three permanent algorithms (naive enumeration, Ryser
//! inclusion-exclusion and the memoized Store-zechin expansion), a cost model
//! that turns operation counts into running times on historical machines,
//! and a small boson-sampling engine that maps photon patterns through an
//! interferometer to submatrix permanents.

pub mod algos;
pub mod boson;
pub mod cost;
pub mod count;
pub mod error;
pub mod io;
pub mod limits;
pub mod matrix;
pub mod ring;

pub use algos::{Algorithm, PermanentResult};
pub use count::{OpCount, OpCounter, Tally, Uncounted};
pub use error::{Error, Result};
pub use limits::Limits;
pub use matrix::{ColumnSubset, SquareMatrix};
pub use ring::{Ring, RingTag};

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;
