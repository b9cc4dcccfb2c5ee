//! Pseudo-diagonalization over the rotation algebra `C = {(a -b; b a)}`.
//!
//! A real 2x2 matrix is written `p + q K` with `p, q` in `C = C(i)` and
//! `K = diag(1, -1)`; then `z1 (p + q K) z2 = z1 z2 p + z1 conj(z2) q K`.

use crate::complex::Gaussian;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::scalar::{quad_roots, Scalar};

/// `eta * (1 0; c d) * xi = diag(1, lambda)` with `eta, xi` in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoDiag {
    pub lambda: Scalar,
    pub eta: Matrix<Scalar>,
    pub xi: Matrix<Scalar>,
}

/// The rotation matrix `(re -im; im re)` of a Gaussian number.
pub fn rotation(z: &Gaussian) -> Matrix<Scalar> {
    Matrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) | (1, 1) => z.re.clone(),
        (0, 1) => -z.im.clone(),
        _ => z.im.clone(),
    })
}

/// Splits a real 2x2 matrix as `p + q K`.
fn split(m: &Matrix<Scalar>) -> (Gaussian, Gaussian) {
    let half = Scalar::frac(1, 2);
    let g = |i: usize, j: usize| m.get(i, j).clone();
    let p = Gaussian::new((g(0, 0) + g(1, 1)) * half.clone(), (g(1, 0) - g(0, 1)) * half.clone());
    let q = Gaussian::new((g(0, 0) - g(1, 1)) * half.clone(), (g(1, 0) + g(0, 1)) * half);
    (p, q)
}

/// `pi_{c,d}(v) = v^2 - (d^2 + c^2 + 1)/d * v + 1`.
pub fn pi_cd(c: &Scalar, d: &Scalar, v: &Scalar) -> Result<Scalar> {
    let dinv = d.inv().ok_or_else(|| Error::InvalidParameters("d must be nonzero".into()))?;
    let s = (d.clone() * d.clone() + c.clone() * c.clone() + Scalar::one()) * dinv;
    Ok(v.clone() * v.clone() - s * v.clone() + Scalar::one())
}

/// The root of `pi_{c,d}` with `|lambda| <= 1`.
pub fn canonical_root(c: &Scalar, d: &Scalar) -> Result<Scalar> {
    let dinv = d.inv().ok_or_else(|| Error::InvalidParameters("d must be nonzero".into()))?;
    let s = (d.clone() * d.clone() + c.clone() * c.clone() + Scalar::one()) * dinv;
    let (r1, r2) = if s.is_rational() {
        quad_roots(&-s, &Scalar::one())?
    } else {
        let disc = s.clone() * s.clone() - Scalar::int(4);
        let root = disc
            .sqrt_exact()
            .ok_or_else(|| Error::InvalidParameters(format!("roots of pi_(c,d) leave the field of {s}")))?;
        let half = Scalar::frac(1, 2);
        ((s.clone() + root.clone()) * half.clone(), (s - root) * half)
    };
    Ok(if r1.abs().cmp_real(&Scalar::one()).is_le() { r1 } else { r2 })
}

/// `eta, xi` in `C` with `eta m xi = diag(1, lambda)`, provided they exist.
pub fn diagonalizers(m: &Matrix<Scalar>, lambda: &Scalar) -> Result<(Matrix<Scalar>, Matrix<Scalar>)> {
    let (p, q) = split(m);
    let (big_p, big_q) = split(&Matrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => Scalar::one(),
        (1, 1) => lambda.clone(),
        _ => Scalar::zero(),
    }));
    let fail = || Error::InvalidParameters(format!("no rotations reach diag(1, {lambda})"));
    let (z1, z2) = if q.is_zero() {
        if !big_q.is_zero() {
            return Err(fail());
        }
        (big_p * p.inv().ok_or_else(fail)?, Gaussian::one())
    } else if p.is_zero() {
        if !big_p.is_zero() {
            return Err(fail());
        }
        (big_q * q.inv().ok_or_else(fail)?, Gaussian::one())
    } else {
        // z2 / conj(z2) = u = P q / (p Q')
        let u = big_p.clone() * q.clone() * (p.clone() * big_q.clone()).inv().ok_or_else(fail)?;
        if u.norm_sq() != Scalar::one() {
            return Err(fail());
        }
        let minus_one = -Gaussian::one();
        let z2 = if u == minus_one { Gaussian::i() } else { Gaussian::one() + u };
        let z1 = big_p * (z2.clone() * p).inv().ok_or_else(fail)?;
        (z1, z2)
    };
    let (eta, xi) = (rotation(&z1), rotation(&z2));
    let target = Matrix::from_fn(2, 2, |i, j| if i == j { if i == 0 { Scalar::one() } else { lambda.clone() } } else { Scalar::zero() });
    if eta.mul(m).mul(&xi) != target {
        return Err(fail());
    }
    Ok((eta, xi))
}

/// Pseudo-diagonalizes `(1 0; c d)`, choosing the root with `|lambda| <= 1`.
pub fn pseudo_diagonalize(c: &Scalar, d: &Scalar) -> Result<PseudoDiag> {
    if d.is_zero() {
        return Err(Error::InvalidParameters("d must be nonzero".into()));
    }
    let lambda = canonical_root(c, d)?;
    let m = Matrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => Scalar::one(),
        (0, 1) => Scalar::zero(),
        (1, 0) => c.clone(),
        _ => d.clone(),
    });
    let (eta, xi) = diagonalizers(&m, &lambda)?;
    Ok(PseudoDiag { lambda, eta, xi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(c: Scalar, d: Scalar, expect: Scalar) {
        let r = pseudo_diagonalize(&c, &d).unwrap();
        assert_eq!(r.lambda, expect);
        assert!(pi_cd(&c, &d, &r.lambda).unwrap().is_zero());
    }

    #[test]
    fn documented_examples() {
        let r = pseudo_diagonalize(&Scalar::zero(), &Scalar::one()).unwrap();
        assert_eq!(r.lambda, Scalar::one());
        assert!(r.eta.is_identity() && r.xi.is_identity());
        check(Scalar::zero(), Scalar::int(2), Scalar::frac(1, 2));
        check(Scalar::one(), Scalar::one(), "3/2-1/2*sqrt(5)".parse().unwrap());
        check(Scalar::zero(), Scalar::int(-1), Scalar::int(-1));
        assert!(pseudo_diagonalize(&Scalar::one(), &Scalar::zero()).is_err());
    }

    #[test]
    fn degenerate_matrix_reaches_rank_one_diagonal() {
        let m = Matrix::from_i64(&[&[1, 0], &[3, 0]]);
        diagonalizers(&m, &Scalar::zero()).unwrap();
    }

    #[test]
    fn wrong_lambda_is_rejected() {
        let m = Matrix::from_i64(&[&[1, 0], &[0, 2]]);
        assert!(diagonalizers(&m, &Scalar::int(3)).is_err());
        diagonalizers(&m, &Scalar::int(2)).unwrap();
    }
}
