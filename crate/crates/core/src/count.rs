//! Arithmetic instrumentation.
//!
//! Every algorithm performs its entry-domain arithmetic through a [`Tally`].
//! [`Uncounted`] forwards to the ring, [`OpCounter`] also increments a pair
//! of counters, so plain and instrumented runs share one code path.
//!
//! What counts: one ring `*` of two entry-domain values (including a
//! coefficient times a sub-permanent) and one ring `+`. Negations, sign
//! flips by `+-1` and index arithmetic are free.

use std::cell::Cell;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};

use serde::{Deserialize, Serialize};

use crate::ring::Ring;

/// Number of multiplications and additions performed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpCount {
    pub multiplications: u64,
    pub additions: u64,
}

impl OpCount {
    pub const ZERO: OpCount = OpCount {
        multiplications: 0,
        additions: 0,
    };

    pub const fn new(multiplications: u64, additions: u64) -> Self {
        OpCount {
            multiplications,
            additions,
        }
    }
}

impl Add for OpCount {
    type Output = OpCount;
    fn add(self, rhs: OpCount) -> OpCount {
        OpCount::new(
            self.multiplications + rhs.multiplications,
            self.additions + rhs.additions,
        )
    }
}

impl AddAssign for OpCount {
    fn add_assign(&mut self, rhs: OpCount) {
        *self = *self + rhs;
    }
}

impl Sub for OpCount {
    type Output = OpCount;
    fn sub(self, rhs: OpCount) -> OpCount {
        OpCount::new(
            self.multiplications - rhs.multiplications,
            self.additions - rhs.additions,
        )
    }
}

impl Sum for OpCount {
    fn sum<I: Iterator<Item = OpCount>>(iter: I) -> OpCount {
        iter.fold(OpCount::ZERO, Add::add)
    }
}

impl fmt::Display for OpCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} x, {} +)", self.multiplications, self.additions)
    }
}

/// Performs ring arithmetic on behalf of an algorithm.
pub trait Tally {
    fn mul<R: Ring>(&self, a: &R, b: &R) -> R;
    fn add<R: Ring>(&self, a: &R, b: &R) -> R;
}

/// Plain arithmetic.
#[derive(Debug, Default, Clone, Copy)]
pub struct Uncounted;

impl Tally for Uncounted {
    #[inline]
    fn mul<R: Ring>(&self, a: &R, b: &R) -> R {
        a.mul(b)
    }
    #[inline]
    fn add<R: Ring>(&self, a: &R, b: &R) -> R {
        a.add(b)
    }
}

/// Arithmetic that records how many operations it performed.
#[derive(Debug, Default)]
pub struct OpCounter {
    mults: Cell<u64>,
    adds: Cell<u64>,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn snapshot(&self) -> OpCount {
        OpCount::new(self.mults.get(), self.adds.get())
    }
}

impl Tally for OpCounter {
    #[inline]
    fn mul<R: Ring>(&self, a: &R, b: &R) -> R {
        self.mults.set(self.mults.get() + 1);
        a.mul(b)
    }
    #[inline]
    fn add<R: Ring>(&self, a: &R, b: &R) -> R {
        self.adds.set(self.adds.get() + 1);
        a.add(b)
    }
}
