use thiserror::Error;

use crate::arith::Integer;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("arity mismatch: expected {expected} indeterminates, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(Integer, Integer),

    #[error("{a} is not invertible modulo {p}")]
    NotInvertible { a: Integer, p: Integer },

    #[error("prime {p} divides the denominator {den} of the input")]
    BadPrimeForInput { p: u64, den: Integer },

    #[error("prime {p} is {ordering}-bad: it divides the denominator {den}")]
    SigmaBad { p: u64, ordering: String, den: Integer },

    #[error("prime {p} divides the universal denominator {delta}")]
    DividesUniversalDenominator { p: u64, delta: Integer },

    #[error("{0} is not a prime")]
    NotPrime(Integer),

    #[error("invalid term ordering: {0}")]
    Ordering(String),

    #[error("orderings differ: {0} vs {1}")]
    OrderingMismatch(String, String),

    #[error("element is not in the ideal generated by the given polynomials")]
    NotInIdeal,

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("fan enumeration stopped after {cones} cones: {reason}")]
    PartialFan { cones: usize, reason: String },

    #[error("tuples of the supplied runs differ")]
    TupleMismatch,

    #[error("ran out of primes after {used} primes without a verified basis")]
    OutOfPrimes { used: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
