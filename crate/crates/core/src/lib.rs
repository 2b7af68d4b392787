//! Gröbner bases over the rationals, the integers and prime fields, with the
//! machinery to study how an ideal of `QQ[x1, ..., xn]` behaves modulo primes:
//! ordering-dependent denominators, good/bad and Pauer-lucky primes, purely
//! modular detection of bad primes through leading-term tuples, Gröbner fan
//! enumeration for the universal denominator, and a modular Gröbner basis
//! pipeline built on that detection test.

pub mod arith;
pub mod coeff;
pub mod error;
pub mod fan;
pub mod groebner;
pub mod io;
pub mod modular;
pub mod poly;
pub mod primes;
pub mod strong;
pub mod tuples;

pub use arith::{Integer, Rational};
pub use coeff::{Coeff, FieldCoeff, Fp};
pub use error::{Error, Result};
pub use poly::{Ideal, Polynomial, PowerProduct, TermOrdering};
