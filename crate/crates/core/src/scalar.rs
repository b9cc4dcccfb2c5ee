//! Exact scalars: rationals and elements of a real quadratic field `Q(sqrt(D))`.
//!
//! A `Scalar` stores `a + b*sqrt(D)`. Rational values always carry `d == 0`,
//! so two scalars compare equal exactly when they denote the same real number.
//! Mixing two different radicands panics in the operator impls; use
//! [`Scalar::try_mul`] and friends where the radicands are not known to agree.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

fn rat(n: i64, m: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(m))
}

/// Largest `s` and squarefree `r` with `n = s^2 * r`, for `n > 0`.
pub fn squarefree_decomposition(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "squarefree decomposition needs a positive integer");
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        for _ in 0..count / 2 {
            square *= &p;
        }
        if count % 2 == 1 {
            free *= &p;
        }
        p += 1;
    }
    free *= rest;
    (square, free)
}

pub fn is_squarefree(n: u64) -> bool {
    let (s, _) = squarefree_decomposition(&BigInt::from(n));
    s.is_one()
}

impl Scalar {
    pub fn rational(q: BigRational) -> Self {
        Scalar { a: q, b: BigRational::zero(), d: 0 }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, m: i64) -> Self {
        Self::rational(rat(n, m))
    }

    /// `a + b*sqrt(d)`; `d` must be squarefree and greater than one.
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        if d <= 1 || !is_squarefree(d) {
            return Err(Error::InvalidParameters(format!("radicand {d} is not squarefree > 1")));
        }
        Ok(Self::normalized(a, b, d))
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_of(d: u64) -> Result<Self> {
        Self::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    fn normalized(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() {
            Scalar { a, b, d: 0 }
        } else {
            Scalar { a, b, d }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    /// Radicand, or `None` for a rational value.
    pub fn radicand(&self) -> Option<u64> {
        (self.d != 0).then_some(self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.a.clone())
    }

    fn join(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(Error::FieldMismatch(x, y)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.join(other)?;
        Ok(Self::normalized(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let d = self.join(other)?;
        Ok(Self::normalized(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.join(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::normalized(a, b, d))
    }

    /// Field norm `a^2 - D b^2` (the square for rationals).
    pub fn norm(&self) -> BigRational {
        let dd = BigRational::from_integer(BigInt::from(self.d));
        &self.a * &self.a - &self.b * &self.b * dd
    }

    /// Galois conjugate `a - b*sqrt(D)`.
    pub fn galois_conjugate(&self) -> Self {
        Self::normalized(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Sign as a real number: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 against b^2 D
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * dd;
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Real ordering; panics when the radicands disagree.
    pub fn cmp_real(&self, other: &Self) -> Ordering {
        match self.try_sub(other).expect("compare scalars over one field").signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Square root of a nonnegative rational, exact in `Q` or `Q(sqrt(D))`.
    pub fn sqrt_rational(q: &BigRational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::NegativeDiscriminant(q.to_string()));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // sqrt(n/m) = sqrt(n m) / m
        let prod = q.numer() * q.denom();
        let (s, r) = squarefree_decomposition(&prod);
        let coeff = BigRational::new(s, q.denom().clone());
        if r.is_one() {
            Ok(Self::rational(coeff))
        } else {
            let d = r.to_u64().ok_or_else(|| Error::InvalidParameters("radicand too large".into()))?;
            Ok(Self::normalized(BigRational::zero(), coeff, d))
        }
    }

    /// Exact square root when it exists in the current field.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.signum() < 0 {
            return None;
        }
        if self.is_rational() {
            let r = Self::sqrt_rational(&self.a).ok()?;
            return r.is_rational().then_some(r);
        }
        // (p + q sqrt D)^2 = p^2 + D q^2 + 2 p q sqrt D; p^2 solves x^2 - a x + D b^2 / 4 = 0
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let disc = &self.a * &self.a - &self.b * &self.b * &dd;
        let root = Self::sqrt_rational(&disc).ok()?.to_rational()?;
        for cand in [(&self.a + &root) / rat(2, 1), (&self.a - &root) / rat(2, 1)] {
            if let Some(p) = Self::sqrt_rational(&cand).ok().and_then(|s| s.to_rational()) {
                if p.is_zero() {
                    continue;
                }
                let q = &self.b / (&p * rat(2, 1));
                let s = Self::normalized(p, q, self.d);
                if s.try_mul(&s).ok()? == *self {
                    return Some(s);
                }
            }
        }
        // purely surd square root: a = D q^2, b = 0 is impossible here since b != 0
        None
    }

    pub fn is_integer_valued(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Both roots of `v^2 + p v + q` with rational `p`, `q`.
///
/// Returns `((-p + sqrt(disc))/2, (-p - sqrt(disc))/2)`, exact in `Q` when the
/// discriminant is a rational square and in `Q(sqrt(D))` otherwise.
pub fn quad_roots(p: &Scalar, q: &Scalar) -> Result<(Scalar, Scalar)> {
    let (p, q) = match (p.to_rational(), q.to_rational()) {
        (Some(p), Some(q)) => (p, q),
        _ => return Err(Error::InvalidParameters("quad_roots needs rational coefficients".into())),
    };
    let disc = &p * &p - rat(4, 1) * &q;
    if disc.is_negative() {
        return Err(Error::NegativeDiscriminant(disc.to_string()));
    }
    let root = Scalar::sqrt_rational(&disc)?;
    let half = Scalar::frac(1, 2);
    let minus_p = Scalar::rational(-p);
    let r1 = (minus_p.clone() + root.clone()) * half.clone();
    let r2 = (minus_p - root) * half;
    Ok((r1, r2))
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$try(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    fn one() -> Self {
        Self::rational(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.galois_conjugate();
        Some(Self::normalized(&c.a / &n, &c.b / &n, self.d))
    }

    fn from_i64(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let surd = if self.b.is_one() {
            format!("sqrt({})", self.d)
        } else if (-self.b.clone()).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", fmt_rat(&self.b), self.d)
        };
        if self.a.is_zero() {
            write!(f, "{surd}")
        } else if surd.starts_with('-') {
            write!(f, "{}{}", fmt_rat(&self.a), surd)
        } else {
            write!(f, "{}+{}", fmt_rat(&self.a), surd)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed rational '{s}'"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    let (n, m) = match s.split_once('/') {
        Some((n, m)) => (n, m),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().trim_start_matches('+').parse().map_err(|_| bad())?;
    let m: BigInt = m.trim().parse().map_err(|_| bad())?;
    if m.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(n, m))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p`, `p/q`, `p/q+r/s*sqrt(D)`, `sqrt(D)`, `-r/s*sqrt(D)`.
    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(pos) = s.find("sqrt(") else {
            return parse_rat(&s).map(Scalar::rational);
        };
        let close = s[pos..]
            .find(')')
            .map(|i| pos + i)
            .ok_or_else(|| Error::Parse(format!("unclosed sqrt in '{input}'")))?;
        if close + 1 != s.len() {
            return Err(Error::Parse(format!("trailing characters in '{input}'")));
        }
        let d: u64 = s[pos + 5..close]
            .parse()
            .map_err(|_| Error::Parse(format!("bad radicand in '{input}'")))?;
        let head = &s[..pos];
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .last();
        let (rat_part, coeff) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
        let b = match coeff {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            c => parse_rat(c)?,
        };
        let a = parse_rat(rat_part)?;
        Scalar::quadratic(a, b, d).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(s("3/6"), Scalar::frac(1, 2));
        assert_eq!(s("-4"), Scalar::int(-4));
        let q = s("1/2+3/4*sqrt(5)");
        assert_eq!(q.to_string(), "1/2+3/4*sqrt(5)");
        assert_eq!(s("-sqrt(2)").to_string(), "-sqrt(2)");
        assert_eq!(s("1-sqrt(2)").to_string(), "1-sqrt(2)");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("sqrt(4)".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn quadratic_with_zero_surd_is_rational() {
        let q = Scalar::quadratic(rat(2, 3), BigRational::zero(), 5).unwrap();
        assert_eq!(q, Scalar::frac(2, 3));
        assert!(q.is_rational());
    }

    #[test]
    fn mixing_radicands_is_rejected() {
        let a = Scalar::sqrt_of(2).unwrap();
        let b = Scalar::sqrt_of(3).unwrap();
        assert_eq!(a.try_mul(&b), Err(Error::FieldMismatch(2, 3)));
    }

    #[test]
    fn quad_roots_examples() {
        let (r1, r2) = quad_roots(&Scalar::int(-2), &Scalar::int(1)).unwrap();
        assert_eq!((r1, r2), (Scalar::int(1), Scalar::int(1)));
        let (r1, r2) = quad_roots(&Scalar::frac(-5, 2), &Scalar::int(1)).unwrap();
        assert_eq!((r1, r2), (Scalar::int(2), Scalar::frac(1, 2)));
        let (r1, r2) = quad_roots(&Scalar::int(-3), &Scalar::int(1)).unwrap();
        assert_eq!(r1, s("3/2+1/2*sqrt(5)"));
        assert_eq!(r2, s("3/2-1/2*sqrt(5)"));
        assert!(quad_roots(&Scalar::int(0), &Scalar::int(1)).is_err());
    }

    #[test]
    fn signs_and_order() {
        assert_eq!(s("1-sqrt(2)").signum(), -1);
        assert_eq!(s("3/2-sqrt(2)").signum(), 1);
        assert_eq!(s("-3/2+sqrt(2)").signum(), -1);
        assert_eq!(s("3/2-1/2*sqrt(5)").cmp_real(&Scalar::int(1)), Ordering::Less);
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(Scalar::sqrt_rational(&rat(9, 4)).unwrap(), Scalar::frac(3, 2));
        assert_eq!(Scalar::sqrt_rational(&rat(1, 2)).unwrap(), s("1/2*sqrt(2)"));
        let x = s("3+2*sqrt(2)"); // (1 + sqrt 2)^2
        assert_eq!(x.sqrt_exact().unwrap(), s("1+sqrt(2)"));
        assert!(s("1+sqrt(2)").sqrt_exact().is_none());
        assert!(Scalar::int(2).sqrt_exact().is_none());
    }

    #[test]
    fn squarefree_parts() {
        let (a, b) = squarefree_decomposition(&BigInt::from(72));
        assert_eq!((a, b), (BigInt::from(6), BigInt::from(2)));
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
    }
}
