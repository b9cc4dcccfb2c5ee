use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact field arithmetic used by the dense and sparse linear algebra.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;

    /// Complex conjugation. Identity on real fields.
    fn conj(&self) -> Self {
        self.clone()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}
