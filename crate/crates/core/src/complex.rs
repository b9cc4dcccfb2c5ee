//! Complex numbers over an exact real field, `re + i*im`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Field;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cx<F> {
    pub re: F,
    pub im: F,
}

/// Gaussian numbers over the exact scalars; `Q(i)` when both parts are rational.
pub type Gaussian = Cx<Scalar>;

impl<F: Field> Cx<F> {
    pub fn new(re: F, im: F) -> Self {
        Cx { re, im }
    }

    pub fn real(re: F) -> Self {
        Cx { re, im: F::zero() }
    }

    pub fn i() -> Self {
        Cx { re: F::zero(), im: F::one() }
    }

    /// `|z|^2`.
    pub fn norm_sq(&self) -> F {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl<F: Field> Add for Cx<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cx { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<F: Field> Sub for Cx<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cx { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<F: Field> Mul for Cx<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone();
        let im = self.re * o.im + self.im * o.re;
        Cx { re, im }
    }
}

impl<F: Field> Neg for Cx<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Cx { re: -self.re, im: -self.im }
    }
}

impl<F: Field> Field for Cx<F> {
    fn zero() -> Self {
        Cx::real(F::zero())
    }

    fn one() -> Self {
        Cx::real(F::one())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        let n = self.norm_sq().inv()?;
        Some(Cx { re: self.re.clone() * n.clone(), im: -(self.im.clone() * n) })
    }

    fn from_i64(n: i64) -> Self {
        Cx::real(F::from_i64(n))
    }

    fn conj(&self) -> Self {
        Cx { re: self.re.clone(), im: -self.im.clone() }
    }
}

impl<F: Field> fmt::Display for Cx<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "({})i", self.im)
        } else {
            write!(f, "{}+({})i", self.re, self.im)
        }
    }
}

impl<F: Field> fmt::Debug for Cx<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared() {
        let i = Gaussian::i();
        assert_eq!(i.clone() * i, -Gaussian::one());
    }

    #[test]
    fn inverse_and_conjugate() {
        let z = Gaussian::new(Scalar::int(3), Scalar::int(4));
        let w = z.inv().unwrap();
        assert_eq!(z.clone() * w, Gaussian::one());
        assert_eq!(z.conj().conj(), z);
        assert_eq!(z.clone() * z.conj(), Gaussian::real(Scalar::int(25)));
    }
}
