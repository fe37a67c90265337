//! Exact integer-polynomial arithmetic and real-root machinery.
//!
//! Nothing here touches floating point: interval endpoints are rationals and
//! every comparison is an exact sign evaluation.

mod int_poly;
mod roots;
mod sturm;

use num_bigint::BigInt;
use thiserror::Error;

pub use int_poly::IntPoly;
pub use num_rational::BigRational as Rational;
pub use roots::{
    cauchy_bound, integer_roots, isolate_kth_largest, IsolatingInterval, SpectrumSummary,
};
pub use sturm::{count_roots_open, RootCount, RootCounter, SturmChain};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("divisor does not divide the polynomial over the integers")]
    NotDivisible,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not of the form x^h q(x^2)")]
    SymmetryViolation,
    #[error("requested root {k} but only {available} real roots exist")]
    RootIndexOutOfRange { k: usize, available: usize },
    #[error("interval must satisfy lo < hi")]
    InvalidInterval,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// `q(y - r)`
pub fn shift(q: &IntPoly, r: &BigInt) -> IntPoly {
    q.taylor_shift(&-r)
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn integer(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}
