//! Cokernels of lattice maps as objects of `Rep^Q`.

use super::{Column, LatticeMap, LatticeSum};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::repq::RepQ;
use crate::scalar::Scalar;
use crate::sparse::{self, Echelon, SparseVec};

/// `coef * t^s * E_{row, col}`.
#[derive(Clone, Debug)]
struct Term {
    row: usize,
    col: usize,
    s: usize,
    coef: Scalar,
}

fn term(row: usize, col: usize, s: usize, coef: Scalar) -> Term {
    Term { row, col, s, coef }
}

/// A basis over the ground field of `sum` modulo `t^n Mat_{3 x rank}`.
fn lattice_basis(sum: &LatticeSum, n: usize) -> Vec<Vec<Term>> {
    let one = Scalar::one;
    let mut out = Vec::new();
    for (c, col) in sum.columns().into_iter().enumerate() {
        for s in 0..n {
            for r in 0..3 {
                let free = match col {
                    Column::L => true,
                    Column::Q | Column::P { .. } => r == 2 || s >= 1,
                };
                if free {
                    out.push(vec![term(r, c, s, one())]);
                }
            }
        }
        if let Column::P { half: 0, .. } = col {
            out.push(vec![term(0, c, 0, one()), term(1, c + 1, 0, one())]);
            out.push(vec![term(1, c, 0, one()), term(0, c + 1, 0, -one())]);
        }
    }
    out
}

struct Ambient {
    n: usize,
    m: usize,
}

impl Ambient {
    fn dim(&self) -> usize {
        3 * self.m * self.n
    }

    fn index(&self, s: usize, r: usize, c: usize) -> usize {
        (s * 3 + r) * self.m + c
    }

    fn unpack(&self, idx: usize) -> (usize, usize, usize) {
        (idx / (3 * self.m), (idx / self.m) % 3, idx % self.m)
    }

    fn embed(&self, terms: &[Term]) -> SparseVec<Scalar> {
        sparse::normalize(terms.iter().map(|t| (self.index(t.s, t.row, t.col), t.coef.clone())).collect())
    }

    /// `element * phi` for a source element.
    fn image(&self, terms: &[Term], phi: &LatticeMap) -> SparseVec<Scalar> {
        let mut raw = Vec::new();
        for t in terms {
            for j in 0..self.m {
                for (d, a) in phi.matrix.get(t.col, j).coeffs().iter().enumerate() {
                    if !a.is_zero() && t.s + d < self.n {
                        raw.push((self.index(t.s + d, t.row, j), t.coef.clone() * a.clone()));
                    }
                }
            }
        }
        sparse::normalize(raw)
    }

    /// Left multiplication by a generator of the order.
    fn act(&self, g: &[Term], v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut raw = Vec::new();
        for (idx, x) in v {
            let (s, r, c) = self.unpack(*idx);
            for t in g {
                if t.col == r && s + t.s < self.n {
                    raw.push((self.index(s + t.s, t.row, c), t.coef.clone() * x.clone()));
                }
            }
        }
        sparse::normalize(raw)
    }
}

/// The seven generators in the order `e, j, f, x1, x2, y1, y2`.
fn generators() -> [Vec<Term>; 7] {
    let one = Scalar::one;
    [
        vec![term(0, 0, 0, one()), term(1, 1, 0, one())],
        vec![term(1, 0, 0, one()), term(0, 1, 0, -one())],
        vec![term(2, 2, 0, one())],
        vec![term(2, 0, 0, one())],
        vec![term(2, 1, 0, one())],
        vec![term(0, 2, 1, one())],
        vec![term(1, 2, 1, one())],
    ]
}

/// Greedy basis of the column space of `m` drawn from its columns.
fn column_basis(m: &Matrix<Scalar>) -> Vec<Vec<Scalar>> {
    let mut span = Echelon::new(m.rows());
    (0..m.cols()).map(|c| m.col(c)).filter(|v| span.insert_dense(v)).collect()
}

/// `target / image(phi)` split by `e`, `f` and the complex structure `j`.
pub fn cokernel(phi: &LatticeMap) -> Result<RepQ> {
    let n = phi.order();
    let amb = Ambient { n, m: phi.target.rank() };
    let dim = amb.dim();
    let mut img = Echelon::new(dim);
    for b in lattice_basis(&phi.source, n) {
        img.insert(&amb.image(&b, phi));
    }
    for r in 0..3 {
        for c in 0..amb.m {
            if !img.contains(&vec![(amb.index(n - 1, r, c), Scalar::one())]) {
                return Err(Error::RaiseN { n, reason: format!("t^{} E_({r},{c}) is not in the image", n - 1) });
            }
        }
    }
    let mut quot = Echelon::new(dim);
    for b in lattice_basis(&phi.target, n) {
        quot.insert(&img.reduce(&amb.embed(&b)));
    }
    let d = quot.rank();
    let pivots = quot.pivots().to_vec();
    let coords = |v: &SparseVec<Scalar>| -> Vec<Scalar> {
        let w = img.reduce(v);
        debug_assert!(quot.contains(&w));
        pivots.iter().map(|p| sparse::get(&w, *p).cloned().unwrap_or_else(Scalar::zero)).collect()
    };
    let mats: Vec<Matrix<Scalar>> = generators()
        .iter()
        .map(|g| {
            let cols: Vec<Vec<Scalar>> = quot.rows().iter().map(|row| coords(&amb.act(g, row))).collect();
            Matrix::from_fn(d, d, |i, j| cols[j][i].clone())
        })
        .collect();
    let [e, j, f, x1, _x2, y1, _y2] = [0, 1, 2, 3, 4, 5, 6].map(|i| mats[i].clone());

    let mut span = Echelon::new(d);
    let mut ws = Vec::new();
    for w in column_basis(&e) {
        if span.insert_dense(&w) {
            let jw = j.apply(&w);
            span.insert_dense(&jw);
            ws.push(w);
        }
    }
    let vs = column_basis(&f);
    let (u, v) = (ws.len(), vs.len());
    if 2 * u + v != d {
        return Err(Error::Relation(format!("cokernel of dimension {d} does not split as 2*{u} + {v}")));
    }
    let jws: Vec<Vec<Scalar>> = ws.iter().map(|w| j.apply(w)).collect();
    let basis: Vec<&Vec<Scalar>> = ws.iter().chain(&jws).chain(&vs).collect();
    let b = Matrix::from_fn(d, d, |i, c| basis[c][i].clone());
    let binv = b.inverse().ok_or_else(|| Error::Relation("cokernel basis is singular".into()))?;
    let conj = |m: &Matrix<Scalar>| binv.mul(m).mul(&b);
    let x1n = conj(&x1);
    let y1n = conj(&y1);
    let rep = RepQ::validated(
        u,
        v,
        x1n.submatrix(2 * u, d, 0, u),
        x1n.submatrix(2 * u, d, u, 2 * u).neg(),
        y1n.submatrix(0, u, 2 * u, d),
        y1n.submatrix(u, 2 * u, 2 * u, d),
    )?;
    let real = rep.realize();
    let expected = [&real.e, &real.j, &real.f, &real.x1, &real.x2, &real.y1, &real.y2];
    for (name, (mine, theirs)) in ["e", "j", "f", "x1", "x2", "y1", "y2"].iter().zip(mats.iter().map(conj).zip(expected)) {
        if mine != *theirs {
            return Err(Error::Relation(format!("action of {name} on the cokernel differs from its realization")));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::super::{build_normal_map, normal_forms_up_to, Case, NormalForm};
    use super::*;
    use crate::repq::{is_isomorphic, top};

    fn coker(nf: &NormalForm, n: usize) -> RepQ {
        cokernel(&build_normal_map(nf, n).unwrap()).unwrap()
    }

    #[test]
    fn documented_cokernels() {
        assert_eq!(coker(&NormalForm::new(Case::Ia, 1, 0).unwrap(), 6).dim_vector(), (1, 1));
        let t = coker(&NormalForm::new(Case::Ib, 1, 0).unwrap(), 6);
        assert!(is_isomorphic(&t, &RepQ::simple_t()).unwrap().is_iso());
        let s = coker(&NormalForm::new(Case::IIa, 0, 0).unwrap(), 6);
        assert!(is_isomorphic(&s, &RepQ::simple_s()).unwrap().is_iso());
    }

    #[test]
    fn dimension_vectors_small() {
        let lambdas = [Scalar::one(), Scalar::int(2)];
        for nf in normal_forms_up_to(2, &lambdas) {
            let m = coker(&nf, 10);
            assert_eq!(m.dim_vector(), nf.dimension_vector(), "{nf}");
        }
    }

    #[test]
    fn tops_are_simple() {
        for nf in normal_forms_up_to(1, &[Scalar::int(2)]) {
            let m = coker(&nf, 8);
            let expect = if nf.case.is_type_one() { (0, 1) } else { (1, 0) };
            assert_eq!(top(&m), expect, "{nf}");
        }
    }

    #[test]
    fn small_order_asks_for_more() {
        use super::super::{Lat, SMat};
        let q = LatticeSum::single(Lat::Q);
        let phi = LatticeMap::new(q.clone(), q, SMat::identity(1, 3).shift_up(2)).unwrap();
        assert!(matches!(cokernel(&phi), Err(Error::RaiseN { .. })));
        let phi = build_normal_map(&NormalForm::new(Case::IIa, 1, 1).unwrap(), 4).unwrap();
        assert_eq!(cokernel(&phi).unwrap().dim_vector(), (4, 3));
    }
}
