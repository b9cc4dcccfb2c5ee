//! Dense matrices over an exact field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::sparse::{self, Echelon};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Result of [`Matrix::solve`]: one particular solution per right-hand column
/// and a kernel basis of the coefficient matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<F: Field> {
    pub particular: Matrix<F>,
    pub kernel: Vec<Vec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn scalar(n: usize, c: F) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { c.clone() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors; `cols` fixes the width when there are no rows.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), cols, |i, j| F::from_i64(rows[i][j]))
    }

    pub fn column(v: &[F]) -> Self {
        Self::from_fn(v.len(), 1, |i, _| v[i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    fn check_same(&self, o: &Self, what: &str) -> Result<()> {
        if self.shape() != o.shape() {
            return Err(Error::Shape(format!("{what}: {:?} vs {:?}", self.shape(), o.shape())));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_same(o, "add")?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check_same(o, "sub")?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!("mul: {:?} * {:?}", self.shape(), o.shape())));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "apply: vector length");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(F::zero(), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() || v[j].is_zero() {
                        acc
                    } else {
                        acc + a.clone() * v[j].clone()
                    }
                })
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `M^n = 0` where `n` is the size.
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square(), "nilpotency of non-square matrix");
        let mut p = self.clone();
        for _ in 1..self.rows.max(1) {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self);
        }
        p.is_zero()
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows, "hstack: row counts");
        Self::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols, "vstack: column counts");
        Self::from_fn(self.rows + o.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                o.get(i - self.rows, j).clone()
            }
        })
    }

    pub fn block_diag(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows + o.rows, self.cols + o.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, o);
        out
    }

    /// Column-major flattening, the coordinate order used by the linear solvers.
    pub fn vectorize(&self) -> Vec<F> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.get(i, j).clone());
            }
        }
        out
    }

    pub fn unvectorize(v: &[F], rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| v[j * rows + i].clone())
    }

    /// Reduced row echelon form of the row space.
    pub fn echelon(&self) -> Echelon<F> {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert_dense(&self.row(i));
        }
        e
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let e = self.echelon();
        let mut order: Vec<(usize, usize)> = e.pivots().iter().copied().enumerate().map(|(r, p)| (p, r)).collect();
        order.sort();
        let mut out = Self::zeros(self.rows, self.cols);
        let mut pivots = Vec::new();
        for (i, (p, r)) in order.into_iter().enumerate() {
            for (j, x) in &e.rows()[r] {
                out.set(i, *j, x.clone());
            }
            pivots.push(p);
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        self.echelon().kernel()
    }

    /// Solves `self * X = b`. `None` when some column of `b` is inconsistent.
    pub fn solve(&self, b: &Self) -> Result<Option<Solution<F>>> {
        if b.rows != self.rows {
            return Err(Error::Shape(format!("solve: {:?} vs rhs {:?}", self.shape(), b.shape())));
        }
        let aug = self.hstack(b);
        let e = aug.echelon();
        if e.pivots().iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut particular = Self::zeros(self.cols, b.cols);
        for (&p, row) in e.pivots().iter().zip(e.rows()) {
            for (j, x) in row {
                if *j >= self.cols {
                    particular.set(p, j - self.cols, x.clone());
                }
            }
        }
        Ok(Some(Solution { particular, kernel: self.kernel() }))
    }

    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::Shape(format!("det of {:?}", self.shape())));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                for j in 0..n {
                    let t = a.get(p, j).clone();
                    a.set(p, j, a.get(c, j).clone());
                    a.set(c, j, t);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det = det * piv.clone();
            let inv = piv.inv().expect("nonzero pivot");
            for r in c + 1..n {
                let f = a.get(r, c).clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(r, j).clone() - f.clone() * a.get(c, j).clone();
                    a.set(r, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let sol = self.solve(&Self::identity(n)).ok()??;
        sol.kernel.is_empty().then_some(sol.particular)
    }

    /// Position of the first nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data.iter().position(|x| !x.is_zero()).map(|k| (k / self.cols, k % self.cols))
    }

    /// Basis of the column space as dense vectors.
    pub fn column_space(&self) -> Vec<Vec<F>> {
        let mut e = Echelon::new(self.rows);
        let mut out = Vec::new();
        for j in 0..self.cols {
            let c = self.col(j);
            if e.insert_dense(&c) {
                out.push(c);
            }
        }
        out
    }

    pub fn sparse_row(&self, i: usize) -> sparse::SparseVec<F> {
        sparse::from_dense(&self.row(i))
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    type M = Matrix<Scalar>;

    #[test]
    fn solve_identity_and_rank_one() {
        let sol = M::identity(2).solve(&M::zeros(2, 1)).unwrap().unwrap();
        assert!(sol.kernel.is_empty());
        assert!(sol.particular.is_zero());
        let a = M::from_i64(&[&[1, 1]]);
        let sol = a.solve(&M::zeros(1, 1)).unwrap().unwrap();
        assert_eq!(sol.kernel, vec![vec![Scalar::int(-1), Scalar::int(1)]]);
    }

    #[test]
    fn inconsistent_system() {
        let a = M::from_i64(&[&[1, 1], &[2, 2]]);
        let b = M::from_i64(&[&[1], &[3]]);
        assert_eq!(a.solve(&b).unwrap(), None);
        assert!(a.solve(&M::zeros(3, 1)).is_err());
    }

    #[test]
    fn det_and_inverse() {
        let a = M::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det().unwrap(), Scalar::int(18));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(M::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn nilpotency() {
        assert!(M::from_i64(&[&[0, 1], &[0, 0]]).is_nilpotent());
        assert!(!M::from_i64(&[&[1]]).is_nilpotent());
        assert!(M::zeros(0, 0).is_nilpotent());
    }

    #[test]
    fn rref_pivots() {
        let a = M::from_i64(&[&[0, 2, 4], &[1, 1, 1]]);
        let (r, p) = a.rref();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r, M::from_i64(&[&[1, 0, -1], &[0, 1, 2]]));
    }
}
