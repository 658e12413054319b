//! Entry domains for matrices.
//!
//! Three rings are supported: arbitrary-precision integers, exact rationals
//! and double-precision complex numbers. `f64` is also a [`Ring`] so that
//! operation counts can be measured cheaply on large orders.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Relative tolerance used by complex equality.
pub const COMPLEX_REL_TOL: f64 = 1e-9;
/// Absolute tolerance used by complex equality.
pub const COMPLEX_ABS_TOL: f64 = 1e-12;

/// Tag naming the entry domain of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingTag {
    Int,
    Rational,
    Complex,
    Real,
}

impl RingTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RingTag::Int => "int",
            RingTag::Rational => "rational",
            RingTag::Complex => "complex",
            RingTag::Real => "real",
        }
    }
}

/// A commutative ring usable as a matrix entry type.
pub trait Ring: Clone + Debug + Send + Sync + 'static {
    const TAG: RingTag;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Equality for exact rings, tolerance comparison for floating rings.
    fn approx_eq(&self, rhs: &Self) -> bool;
    /// Lossy conversion used by property tests that build random matrices.
    fn from_i64(v: i64) -> Self;
}

impl Ring for BigInt {
    const TAG: RingTag = RingTag::Int;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn approx_eq(&self, rhs: &Self) -> bool {
        self == rhs
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Ring for BigRational {
    const TAG: RingTag = RingTag::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn approx_eq(&self, rhs: &Self) -> bool {
        self == rhs
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Ring for Complex64 {
    const TAG: RingTag = RingTag::Complex;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn approx_eq(&self, rhs: &Self) -> bool {
        let diff = (self - rhs).norm();
        diff <= COMPLEX_ABS_TOL || diff <= COMPLEX_REL_TOL * self.norm().max(rhs.norm())
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
}

impl Ring for f64 {
    const TAG: RingTag = RingTag::Real;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn approx_eq(&self, rhs: &Self) -> bool {
        let diff = (self - rhs).abs();
        diff <= COMPLEX_ABS_TOL || diff <= COMPLEX_REL_TOL * self.abs().max(rhs.abs())
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}
