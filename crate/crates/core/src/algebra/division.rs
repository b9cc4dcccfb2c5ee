//! Deciding whether a finite-dimensional algebra over a real subfield is a
//! division algebra after extending scalars to the reals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Elem, FinDimAlgebra};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisionKind {
    Real,
    Complex,
    Quaternion,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DivisionVerdict {
    /// For `Complex`, `witness` squares to `witness_square` times the unit;
    /// the square is `-1` whenever the rescaling stays inside one field.
    Yes { kind: DivisionKind, witness: Option<Elem>, witness_square: Option<Scalar> },
    No { reason: String, witness: Option<Elem> },
    Indeterminate { log: Vec<String> },
}

impl DivisionVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, DivisionVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, DivisionVerdict::No { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            DivisionVerdict::Yes { .. } => "yes",
            DivisionVerdict::No { .. } => "no",
            DivisionVerdict::Indeterminate { .. } => "indeterminate",
        }
    }
}

/// Common radicand of all structure constants, if any.
fn radicand_of(alg: &FinDimAlgebra) -> Option<u64> {
    (0..alg.dim())
        .flat_map(|i| (0..alg.dim()).map(move |j| (i, j)))
        .flat_map(|(i, j)| alg.basis_product(i, j).iter().filter_map(|(_, v)| v.radicand()).collect::<Vec<_>>())
        .next()
}

fn non_scalar_basis_element(alg: &FinDimAlgebra) -> Option<Elem> {
    let unit = alg.unit();
    (0..alg.dim()).map(|i| alg.basis(i)).find(|b| {
        let m = Matrix::from_fn(alg.dim(), 2, |r, c| if c == 0 { unit[r].clone() } else { b[r].clone() });
        m.rank() == 2
    })
}

/// The exact decision ladder: radical, then dimension 1 and 2, then
/// minimal-polynomial and trace-form certificates in higher dimension.
pub fn division_verdict(alg: &FinDimAlgebra, seed: u64) -> DivisionVerdict {
    let rad = alg.radical();
    if let Some(r) = rad.first() {
        return DivisionVerdict::No { reason: format!("radical of dimension {}", rad.len()), witness: Some(r.clone()) };
    }
    match alg.dim() {
        0 => DivisionVerdict::No { reason: "zero algebra".into(), witness: None },
        1 => DivisionVerdict::Yes { kind: DivisionKind::Real, witness: None, witness_square: None },
        2 => {
            let x = non_scalar_basis_element(alg).expect("two-dimensional algebra has a non-scalar element");
            dimension_two(alg, &x)
        }
        _ => higher(alg, seed),
    }
}

fn dimension_two(alg: &FinDimAlgebra, x: &Elem) -> DivisionVerdict {
    let poly = alg.min_poly(x);
    let (q, p) = (poly[0].clone(), poly[1].clone());
    let disc = p.clone() * p.clone() - Scalar::int(4) * q;
    if disc.signum() >= 0 {
        // x^2 + p x + q splits over the reals: zero divisors
        return DivisionVerdict::No { reason: format!("minimal polynomial splits (discriminant {disc})"), witness: Some(x.clone()) };
    }
    // (2x + p)^2 = disc
    let j0 = alg.add(&alg.scale(&Scalar::int(2), x), &alg.scale(&p, alg.unit()));
    let scaled = disc.to_rational().and_then(|d| Scalar::sqrt_rational(&-d).ok()).filter(|s| {
        s.radicand().is_none() || radicand_of(alg).map_or(true, |r| Some(r) == s.radicand())
    });
    match scaled {
        Some(s) => {
            let j = alg.scale(&s.inv().expect("nonzero root"), &j0);
            DivisionVerdict::Yes { kind: DivisionKind::Complex, witness: Some(j), witness_square: Some(Scalar::int(-1)) }
        }
        None => DivisionVerdict::Yes { kind: DivisionKind::Complex, witness: Some(j0), witness_square: Some(disc) },
    }
}

fn higher(alg: &FinDimAlgebra, seed: u64) -> DivisionVerdict {
    let mut log = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<Elem> = (0..alg.dim()).map(|i| alg.basis(i)).collect();
    for _ in 0..4 {
        candidates.push((0..alg.dim()).map(|_| Scalar::int(rng.gen_range(-3..=3))).collect());
    }
    for x in &candidates {
        let poly = alg.min_poly(x);
        let deg = poly.len() - 1;
        if deg >= 3 {
            return DivisionVerdict::No { reason: format!("element with minimal polynomial of degree {deg}"), witness: Some(x.clone()) };
        }
        if deg == 2 {
            let disc = poly[1].clone() * poly[1].clone() - Scalar::int(4) * poly[0].clone();
            if disc.signum() >= 0 {
                return DivisionVerdict::No { reason: format!("quadratic minimal polynomial splits (discriminant {disc})"), witness: Some(x.clone()) };
            }
        }
    }
    log.push(format!("all {} tested elements have irreducible quadratic or linear minimal polynomials", candidates.len()));
    if alg.dim() == 4 && alg.center().len() == 1 {
        let (pos, neg, zero) = inertia(&alg.trace_form());
        log.push(format!("trace form inertia ({pos}, {neg}, {zero})"));
        if neg == 3 {
            return DivisionVerdict::Yes { kind: DivisionKind::Quaternion, witness: None, witness_square: None };
        }
        return DivisionVerdict::No { reason: format!("split central algebra, trace form inertia ({pos}, {neg}, {zero})"), witness: None };
    }
    DivisionVerdict::Indeterminate { log }
}

/// Signature `(positive, negative, zero)` of a symmetric matrix by congruence.
pub fn inertia(s: &Matrix<Scalar>) -> (usize, usize, usize) {
    let mut m = s.clone();
    let (mut pos, mut neg) = (0, 0);
    let mut n = m.rows();
    while n > 0 {
        let k = (0..n).find(|&i| !m.get(i, i).is_zero());
        let k = match k {
            Some(k) => k,
            None => {
                let off = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !m.get(i, j).is_zero());
                let Some((i, j)) = off else { break };
                // e_i -> e_i + e_j makes the diagonal entry 2 s_ij
                for c in 0..n {
                    let v = m.get(i, c).clone() + m.get(j, c).clone();
                    m.set(i, c, v);
                }
                for r in 0..n {
                    let v = m.get(r, i).clone() + m.get(r, j).clone();
                    m.set(r, i, v);
                }
                i
            }
        };
        let d = m.get(k, k).clone();
        if d.signum() > 0 {
            pos += 1;
        } else {
            neg += 1;
        }
        let dinv = d.inv().expect("nonzero pivot");
        let keep: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let next = Matrix::from_fn(n - 1, n - 1, |a, b| {
            let (i, j) = (keep[a], keep[b]);
            m.get(i, j).clone() - m.get(i, k).clone() * m.get(k, j).clone() * dinv.clone()
        });
        m = next;
        n -= 1;
    }
    (pos, neg, s.rows() - pos - neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quaternions() -> FinDimAlgebra {
        // basis 1, i, j, k
        let table = |a: usize, b: usize| -> (usize, i64) {
            match (a, b) {
                (0, x) | (x, 0) => (x, 1),
                (x, y) if x == y => (0, -1),
                (1, 2) => (3, 1),
                (2, 1) => (3, -1),
                (2, 3) => (1, 1),
                (3, 2) => (1, -1),
                (3, 1) => (2, 1),
                (1, 3) => (2, -1),
                _ => unreachable!(),
            }
        };
        FinDimAlgebra::from_rule(
            vec!["1".into(), "i".into(), "j".into(), "k".into()],
            vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
            |a, b| {
                let (k, s) = table(a, b);
                vec![(k, Scalar::int(s))]
            },
        )
        .unwrap()
    }

    #[test]
    fn ladder_on_standard_algebras() {
        let c = FinDimAlgebra::gaussian_field();
        match division_verdict(&c, 0) {
            DivisionVerdict::Yes { kind: DivisionKind::Complex, witness: Some(j), witness_square } => {
                assert_eq!(witness_square, Some(Scalar::int(-1)));
                assert_eq!(c.mul(&j, &j), c.scale(&Scalar::int(-1), c.unit()));
            }
            v => panic!("unexpected {v:?}"),
        }
        let h = quaternions();
        h.check_associative().unwrap();
        assert_eq!(division_verdict(&h, 0).label(), "yes");
        assert!(division_verdict(&FinDimAlgebra::matrix_algebra(2), 0).is_no());
        assert!(division_verdict(&c.product(&c).unwrap(), 0).is_no());
    }

    #[test]
    fn inertia_of_hyperbolic_plane() {
        let s = Matrix::<Scalar>::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(inertia(&s), (1, 1, 0));
        let s = Matrix::<Scalar>::from_i64(&[&[1, 0, 0], &[0, -2, 0], &[0, 0, 0]]);
        assert_eq!(inertia(&s), (1, 1, 1));
    }
}
