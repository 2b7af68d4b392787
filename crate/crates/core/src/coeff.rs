//! Coefficient domains: the rationals, the integers and prime fields.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{mod_inverse_u64, Integer, Rational};

/// Arithmetic every coefficient domain supports. Prime field elements carry
/// their modulus, so constants are produced relative to an existing element.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Whether the printed form needs a leading minus sign.
    fn is_negative_display(&self) -> bool {
        false
    }
}

pub trait FieldCoeff: Coeff {
    fn inv(&self) -> Self;
}

impl Coeff for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_negative_display(&self) -> bool {
        self.is_negative()
    }
}

impl FieldCoeff for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Coeff for Integer {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn zero_like(&self) -> Self {
        Integer::zero()
    }
    fn one_like(&self) -> Self {
        Integer::one()
    }
    fn is_negative_display(&self) -> bool {
        self.is_negative()
    }
}

/// Element of the prime field with `modulus` elements, `0 <= value < modulus`.
///
/// Moduli are limited to 63 bits so products fit in `u128`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus >= 2 && modulus < 1 << 63);
        Fp { value: value % modulus, modulus }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        Fp { value: value.rem_euclid(modulus as i64) as u64, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn symmetric(&self) -> i128 {
        if self.value > self.modulus / 2 {
            self.value as i128 - self.modulus as i128
        } else {
            self.value as i128
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl Coeff for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value as u128 + rhs.value as u128;
        Fp { value: (s % self.modulus as u128) as u64, modulus: self.modulus }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.modulus - (rhs.value - self.value)
        };
        Fp { value: v, modulus: self.modulus }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Fp { value: v as u64, modulus: self.modulus }
    }
    fn neg_ref(&self) -> Self {
        let v = if self.value == 0 { 0 } else { self.modulus - self.value };
        Fp { value: v, modulus: self.modulus }
    }
    fn zero_like(&self) -> Self {
        Fp { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1, modulus: self.modulus }
    }
    fn is_negative_display(&self) -> bool {
        self.symmetric() < 0
    }
}

impl FieldCoeff for Fp {
    fn inv(&self) -> Self {
        let v = mod_inverse_u64(self.value, self.modulus).expect("inverse of zero in a prime field");
        Fp { value: v, modulus: self.modulus }
    }
}
