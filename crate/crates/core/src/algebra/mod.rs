//! Finite-dimensional unital algebras given by sparse structure constants.

pub mod division;
pub mod orders;
pub mod skew;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::sparse::{self, Echelon, SparseVec};

pub use division::{division_verdict, DivisionKind, DivisionVerdict};

/// Dense coordinate vector of an algebra element.
pub type Elem = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq)]
pub struct FinDimAlgebra {
    labels: Vec<String>,
    /// `table[i][j]` is the product of basis elements `i` and `j`.
    table: Vec<Vec<SparseVec<Scalar>>>,
    unit: Elem,
}

impl FinDimAlgebra {
    pub fn new(labels: Vec<String>, table: Vec<Vec<SparseVec<Scalar>>>, unit: Elem) -> Result<Self> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) || unit.len() != n {
            return Err(Error::Shape(format!("structure constants do not match dimension {n}")));
        }
        if table.iter().flatten().flatten().any(|(k, _)| *k >= n) {
            return Err(Error::Shape("structure constant index out of range".into()));
        }
        Ok(FinDimAlgebra { labels, table, unit })
    }

    /// Builds the table from a product rule on basis indices.
    pub fn from_rule(labels: Vec<String>, unit: Elem, mut rule: impl FnMut(usize, usize) -> SparseVec<Scalar>) -> Result<Self> {
        let n = labels.len();
        let table = (0..n).map(|i| (0..n).map(|j| sparse::normalize(rule(i, j))).collect()).collect();
        Self::new(labels, table, unit)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Elem {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec<Scalar> {
        &self.table[i][j]
    }

    pub fn basis(&self, i: usize) -> Elem {
        let mut v = self.zero();
        v[i] = Scalar::one();
        v
    }

    pub fn zero(&self) -> Elem {
        vec![Scalar::zero(); self.dim()]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Basis vector by label; panics on unknown labels.
    pub fn el(&self, label: &str) -> Elem {
        self.basis(self.index_of(label).unwrap_or_else(|| panic!("unknown basis label {label}")))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = self.zero();
        let bs: Vec<(usize, &Scalar)> = b.iter().enumerate().filter(|(_, y)| !y.is_zero()).collect();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &bs {
                let c = x.clone() * y.clone();
                for (k, z) in &self.table[i][j] {
                    out[*k] = out[*k].clone() + c.clone() * z.clone();
                }
            }
        }
        out
    }

    /// Product of basis element `i` with a sparse vector.
    pub fn mul_basis_sparse(&self, i: usize, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut acc: SparseVec<Scalar> = Vec::new();
        for (j, y) in v {
            acc = sparse::axpy(&acc, y, &self.table[i][*j]);
        }
        acc
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
    }

    pub fn scale(&self, c: &Scalar, a: &Elem) -> Elem {
        a.iter().map(|x| c.clone() * x.clone()).collect()
    }

    pub fn is_zero_elem(a: &Elem) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// Associativity on every basis triple.
    pub fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = sparse::to_dense(&self.table[i][j], n);
                for k in 0..n {
                    let left = self.mul(&ij, &self.basis(k));
                    let jk = sparse::to_dense(&self.table[j][k], n);
                    let right = self.mul(&self.basis(i), &jk);
                    if left != right {
                        return Err(Error::Relation(format!(
                            "({} {}) {} != {} ({} {})",
                            self.labels[i], self.labels[j], self.labels[k], self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim() {
            let b = self.basis(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::Relation(format!("unit fails on {}", self.labels[i])));
            }
        }
        Ok(())
    }

    /// Matrix of `y -> x y` in the basis.
    pub fn left_mult(&self, x: &Elem) -> Matrix<Scalar> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let col = self.mul(x, &self.basis(j));
            for (i, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// `trace(L_{b_k})` for every basis element.
    fn left_traces(&self) -> Vec<Scalar> {
        (0..self.dim())
            .map(|k| {
                (0..self.dim()).fold(Scalar::zero(), |acc, m| match sparse::get(&self.table[k][m], m) {
                    Some(v) => acc + v.clone(),
                    None => acc,
                })
            })
            .collect()
    }

    /// Gram matrix of the trace form `(x, y) -> tr(L_{xy})`.
    pub fn trace_form(&self) -> Matrix<Scalar> {
        let n = self.dim();
        let tau = self.left_traces();
        Matrix::from_fn(n, n, |i, j| {
            self.table[i][j]
                .iter()
                .fold(Scalar::zero(), |acc, (k, v)| if tau[*k].is_zero() { acc } else { acc + v.clone() * tau[*k].clone() })
        })
    }

    /// Jacobson radical as the kernel of the trace form (characteristic zero).
    pub fn radical(&self) -> Vec<Elem> {
        let n = self.dim();
        let tau = self.left_traces();
        let mut ech = Echelon::new(n);
        // column j of the Gram matrix: sum_k (b_i b_j)_k tau_k over i
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                let v = self.table[i][j]
                    .iter()
                    .fold(Scalar::zero(), |acc, (k, c)| if tau[*k].is_zero() { acc } else { acc + c.clone() * tau[*k].clone() });
                if !v.is_zero() {
                    cols[j].push((i, v));
                }
            }
        }
        for c in cols {
            ech.insert(&c);
        }
        ech.kernel()
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical().is_empty()
    }

    /// Quotient by a two-sided ideal spanned by `ideal`; also returns the
    /// projection matrix (quotient dim x dim).
    pub fn quotient(&self, ideal: &[Elem]) -> Result<(FinDimAlgebra, Matrix<Scalar>)> {
        let n = self.dim();
        let mut ech = Echelon::new(n);
        for v in ideal {
            ech.insert_dense(v);
        }
        let keep = ech.free_columns();
        let project = |v: &Elem| -> Vec<Scalar> {
            let r = sparse::to_dense(&ech.reduce(&sparse::from_dense(v)), n);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        // ideal check: products with basis stay in the ideal
        for v in ideal {
            for i in 0..n {
                let b = self.basis(i);
                for w in [self.mul(&b, v), self.mul(v, &b)] {
                    if !ech.contains(&sparse::from_dense(&w)) {
                        return Err(Error::Relation("quotient by a subspace that is not an ideal".into()));
                    }
                }
            }
        }
        let labels: Vec<String> = keep.iter().map(|&c| format!("[{}]", self.labels[c])).collect();
        let unit = project(&self.unit);
        let q = FinDimAlgebra::from_rule(labels, unit, |a, b| {
            let prod = sparse::to_dense(&self.table[keep[a]][keep[b]], n);
            sparse::from_dense(&project(&prod))
        })?;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| project(&self.basis(j))).collect();
        let proj = Matrix::from_fn(keep.len(), n, |i, j| cols[j][i].clone());
        Ok((q, proj))
    }

    /// Semisimple quotient `A / rad(A)`.
    pub fn semisimple_quotient(&self) -> Result<FinDimAlgebra> {
        let rad = self.radical();
        Ok(self.quotient(&rad)?.0)
    }

    pub fn center(&self) -> Vec<Elem> {
        let n = self.dim();
        let mut rows: Vec<SparseVec<Scalar>> = Vec::new();
        // x commutes with b_j: sum_i x_i (b_i b_j - b_j b_i) = 0, one equation per coordinate k
        for j in 0..n {
            let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            for i in 0..n {
                let diff = sparse::axpy(&self.table[i][j], &Scalar::int(-1), &self.table[j][i]);
                for (k, v) in diff {
                    eqs[k].push((i, v));
                }
            }
            rows.extend(eqs.into_iter().filter(|e| !e.is_empty()));
        }
        sparse::kernel(n, &rows)
    }

    /// Subalgebra spanned by `basis` (must contain the chosen unit and be closed).
    pub fn subalgebra(&self, basis: &[Elem], unit: &Elem, labels: Vec<String>) -> Result<FinDimAlgebra> {
        let m = basis.len();
        let coords = Coordinates::new(basis)?;
        let unit_c = coords.of(unit).ok_or_else(|| Error::Relation("unit outside the subspace".into()))?;
        let mut table = vec![vec![Vec::new(); m]; m];
        for i in 0..m {
            for j in 0..m {
                let p = self.mul(&basis[i], &basis[j]);
                let c = coords.of(&p).ok_or_else(|| Error::Relation(format!("subspace not closed: {} * {}", labels[i], labels[j])))?;
                table[i][j] = sparse::from_dense(&c);
            }
        }
        FinDimAlgebra::new(labels, table, unit_c)
    }

    /// `eps A eps` with unit `eps`.
    pub fn corner(&self, eps: &Elem) -> Result<(FinDimAlgebra, Vec<Elem>)> {
        if self.mul(eps, eps) != *eps {
            return Err(Error::NotIdempotent);
        }
        let mut ech = Echelon::new(self.dim());
        let mut basis = Vec::new();
        for i in 0..self.dim() {
            let v = self.mul(&self.mul(eps, &self.basis(i)), eps);
            if ech.insert_dense(&v) {
                basis.push(v);
            }
        }
        let labels = (0..basis.len()).map(|i| format!("c{i}")).collect();
        let alg = self.subalgebra(&basis, eps, labels)?;
        Ok((alg, basis))
    }

    /// Minimal polynomial of `x`, monic, lowest degree first.
    pub fn min_poly(&self, x: &Elem) -> Vec<Scalar> {
        let mut powers = vec![self.unit.clone()];
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            let coords = Coordinates::new(&powers).expect("independent powers");
            if let Some(c) = coords.of(&next) {
                let mut poly: Vec<Scalar> = c.into_iter().map(|v| -v).collect();
                poly.push(Scalar::one());
                return poly;
            }
            powers.push(next);
        }
    }

    /// Complexification over `Q(i)` realized over `Q`: basis `b_k` then `i*b_k`.
    pub fn complexify(&self) -> Result<FinDimAlgebra> {
        let n = self.dim();
        let mut labels = self.labels.clone();
        labels.extend(self.labels.iter().map(|l| format!("i*{l}")));
        let mut unit = self.unit.clone();
        unit.extend(vec![Scalar::zero(); n]);
        FinDimAlgebra::from_rule(labels, unit, |a, b| {
            let (i, pi) = (a % n, a / n);
            let (j, pj) = (b % n, b / n);
            let base = &self.table[i][j];
            match pi + pj {
                0 => base.clone(),
                1 => base.iter().map(|(k, v)| (k + n, v.clone())).collect(),
                _ => base.iter().map(|(k, v)| (*k, -v.clone())).collect(),
            }
        })
    }

    /// Plain ordered-pair product algebra `self x other`.
    pub fn product(&self, other: &FinDimAlgebra) -> Result<FinDimAlgebra> {
        let n = self.dim();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        FinDimAlgebra::from_rule(labels, unit, |a, b| {
            if a < n && b < n {
                self.table[a][b].clone()
            } else if a >= n && b >= n {
                other.table[a - n][b - n].iter().map(|(k, v)| (k + n, v.clone())).collect()
            } else {
                Vec::new()
            }
        })
    }

    /// Full matrix algebra `M_k(Q)` with basis `e{i}{j}`.
    pub fn matrix_algebra(k: usize) -> FinDimAlgebra {
        let labels = (0..k * k).map(|x| format!("e{}{}", x / k + 1, x % k + 1)).collect();
        let mut unit = vec![Scalar::zero(); k * k];
        for i in 0..k {
            unit[i * k + i] = Scalar::one();
        }
        FinDimAlgebra::from_rule(labels, unit, |a, b| {
            let (i, j) = (a / k, a % k);
            let (p, q) = (b / k, b % k);
            if j == p {
                vec![(i * k + q, Scalar::one())]
            } else {
                Vec::new()
            }
        })
        .expect("matrix algebra")
    }

    /// The field `Q(i)` as a two-dimensional algebra with basis `1, i`.
    pub fn gaussian_field() -> FinDimAlgebra {
        FinDimAlgebra::from_rule(
            vec!["1".into(), "i".into()],
            vec![Scalar::one(), Scalar::zero()],
            |a, b| match (a, b) {
                (0, x) | (x, 0) => vec![(x, Scalar::one())],
                _ => vec![(0, Scalar::int(-1))],
            },
        )
        .expect("gaussian field")
    }
}

/// Coordinates with respect to a linearly independent family.
pub struct Coordinates {
    dim: usize,
    len: usize,
    /// echelon form of the family, each vector tagged with a unit vector
    ech: Echelon<Scalar>,
}

impl Coordinates {
    pub fn new(family: &[Elem]) -> Result<Self> {
        let len = family.len();
        let dim = family.first().map_or(0, |v| v.len());
        let mut ech = Echelon::new(dim + len);
        for (i, v) in family.iter().enumerate() {
            let mut w = sparse::from_dense(v);
            w.push((dim + i, Scalar::one()));
            ech.insert(&w);
            if ech.pivots().last().map_or(true, |&p| p >= dim) {
                return Err(Error::Relation("family is linearly dependent".into()));
            }
        }
        Ok(Coordinates { dim, len, ech })
    }

    /// Coefficients of `v` in the family, if `v` lies in its span.
    pub fn of(&self, v: &Elem) -> Option<Vec<Scalar>> {
        // (v, 0) reduces to (0, -c) exactly when v = sum c_i v_i
        let rest = self.ech.reduce(&sparse::from_dense(v));
        if rest.iter().any(|(j, _)| *j < self.dim) {
            return None;
        }
        let mut out = vec![Scalar::zero(); self.len];
        for (j, x) in rest {
            out[j - self.dim] = -x;
        }
        Some(out)
    }
}

/// Linear map between algebras as a matrix (target dim x source dim).
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMap {
    pub matrix: Matrix<Scalar>,
}

impl AlgebraMap {
    pub fn apply(&self, x: &Elem) -> Elem {
        self.matrix.apply(x)
    }
}

/// Unit preservation, multiplicativity on basis pairs and bijectivity.
pub fn verify_algebra_map(src: &FinDimAlgebra, tgt: &FinDimAlgebra, f: &AlgebraMap) -> Result<()> {
    if f.matrix.shape() != (tgt.dim(), src.dim()) {
        return Err(Error::Shape(format!("map {:?} for dims {} -> {}", f.matrix.shape(), src.dim(), tgt.dim())));
    }
    if f.apply(src.unit()) != *tgt.unit() {
        return Err(Error::Relation("unit is not preserved".into()));
    }
    let images: Vec<Elem> = (0..src.dim()).map(|i| f.matrix.col(i)).collect();
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = f.apply(&sparse::to_dense(src.basis_product(i, j), src.dim()));
            let rhs = tgt.mul(&images[i], &images[j]);
            if lhs != rhs {
                return Err(Error::Relation(format!(
                    "f({} * {}) != f({}) * f({})",
                    src.labels()[i],
                    src.labels()[j],
                    src.labels()[i],
                    src.labels()[j]
                )));
            }
        }
    }
    if src.dim() != tgt.dim() || f.matrix.rank() != src.dim() {
        return Err(Error::Relation(format!("not bijective: rank {} for dims {} -> {}", f.matrix.rank(), src.dim(), tgt.dim())));
    }
    Ok(())
}

/// Extends an assignment on generators to a linear map by closing words
/// under right multiplication. Fails if the words do not span the source;
/// well-definedness is left to [`verify_algebra_map`].
pub fn extend_multiplicatively(src: &FinDimAlgebra, tgt: &FinDimAlgebra, gens: &[(Elem, Elem)]) -> Result<AlgebraMap> {
    let mut ech = Echelon::new(src.dim());
    let mut span: Vec<(Elem, Elem)> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    queue.push_back((src.unit().clone(), tgt.unit().clone()));
    while let Some((s, t)) = queue.pop_front() {
        if !ech.insert_dense(&s) {
            continue;
        }
        for (gs, gt) in gens {
            queue.push_back((src.mul(&s, gs), tgt.mul(&t, gt)));
        }
        span.push((s, t));
        if span.len() == src.dim() {
            break;
        }
    }
    if span.len() != src.dim() {
        return Err(Error::Relation(format!("generators span only {} of {} dimensions", span.len(), src.dim())));
    }
    let s_mat = Matrix::from_fn(src.dim(), src.dim(), |i, j| span[j].0[i].clone());
    let t_mat = Matrix::from_fn(tgt.dim(), src.dim(), |i, j| span[j].1[i].clone());
    let inv = s_mat.inverse().ok_or_else(|| Error::Relation("spanning words are dependent".into()))?;
    Ok(AlgebraMap { matrix: t_mat.mul(&inv) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn upper_triangular() -> FinDimAlgebra {
        // basis e11, e12, e22
        FinDimAlgebra::from_rule(
            vec!["e11".into(), "e12".into(), "e22".into()],
            vec![Scalar::one(), Scalar::zero(), Scalar::one()],
            |a, b| match (a, b) {
                (0, 0) => vec![(0, Scalar::one())],
                (0, 1) => vec![(1, Scalar::one())],
                (1, 2) => vec![(1, Scalar::one())],
                (2, 2) => vec![(2, Scalar::one())],
                _ => vec![],
            },
        )
        .unwrap()
    }

    #[test]
    fn radical_of_upper_triangular() {
        let a = upper_triangular();
        a.check_associative().unwrap();
        a.check_unit().unwrap();
        let rad = a.radical();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0], a.el("e12"));
        let q = a.semisimple_quotient().unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.is_semisimple());
    }

    #[test]
    fn matrix_algebra_is_semisimple_with_small_center() {
        let m = FinDimAlgebra::matrix_algebra(2);
        m.check_associative().unwrap();
        assert!(m.radical().is_empty());
        assert_eq!(m.center().len(), 1);
        let (c, _) = m.corner(&m.el("e11")).unwrap();
        assert_eq!(c.dim(), 1);
        let (c, _) = m.corner(m.unit()).unwrap();
        assert_eq!(c.dim(), 4);
        assert_eq!(m.corner(&m.el("e12")).unwrap_err(), Error::NotIdempotent);
    }

    #[test]
    fn min_poly_of_i() {
        let c = FinDimAlgebra::gaussian_field();
        assert_eq!(c.min_poly(&c.el("i")), vec![Scalar::one(), Scalar::zero(), Scalar::one()]);
        let cc = c.complexify().unwrap();
        cc.check_associative().unwrap();
        // C (x) C is split: nonzero center of dim 4 and no radical
        assert_eq!(cc.center().len(), 4);
        assert!(cc.is_semisimple());
    }

    #[test]
    fn identity_map_verifies_and_zero_unit_fails() {
        let a = upper_triangular();
        let id = AlgebraMap { matrix: Matrix::identity(3) };
        verify_algebra_map(&a, &a, &id).unwrap();
        let zero = AlgebraMap { matrix: Matrix::zeros(3, 3) };
        assert!(verify_algebra_map(&a, &a, &zero).is_err());
    }

    #[test]
    fn coordinates_roundtrip() {
        let fam = vec![
            vec![Scalar::int(1), Scalar::int(1), Scalar::int(0)],
            vec![Scalar::int(0), Scalar::int(1), Scalar::int(1)],
        ];
        let c = Coordinates::new(&fam).unwrap();
        let v = vec![Scalar::int(2), Scalar::int(5), Scalar::int(3)];
        assert_eq!(c.of(&v), Some(vec![Scalar::int(2), Scalar::int(3)]));
        assert_eq!(c.of(&vec![Scalar::int(1), Scalar::int(0), Scalar::int(0)]), None);
    }
}
