//! Truncated power series `R/t^N` and small matrices over them.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries<F> {
    coeffs: Vec<F>,
}

impl<F: Field> TruncSeries<F> {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "truncation order must be positive");
        TruncSeries { coeffs: vec![F::zero(); n] }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(F::one(), n)
    }

    pub fn constant(c: F, n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = c;
        s
    }

    /// `c * t^k`, zero when `k >= n`.
    pub fn monomial(c: F, k: usize, n: usize) -> Self {
        let mut s = Self::zero(n);
        if k < n {
            s.coeffs[k] = c;
        }
        s
    }

    /// Pads or truncates `c` to length `n`.
    pub fn from_coeffs(mut c: Vec<F>, n: usize) -> Self {
        assert!(n > 0, "truncation order must be positive");
        c.resize(n, F::zero());
        TruncSeries { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn set_coeff(&mut self, i: usize, c: F) {
        if i < self.coeffs.len() {
            self.coeffs[i] = c;
        }
    }

    /// Index of the first nonzero coefficient; `None` stands for infinity.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Coefficient at the valuation.
    pub fn leading(&self) -> Option<F> {
        self.valuation().map(|v| self.coeffs[v].clone())
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.order(), o.order(), "series of different truncation orders");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        TruncSeries { coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        TruncSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| c.clone() * a.clone()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.order();
        let mut out = vec![F::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Multiplication by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![F::zero(); n];
        for i in 0..n.saturating_sub(k) {
            out[i + k] = self.coeffs[i].clone();
        }
        TruncSeries { coeffs: out }
    }

    /// Exact division by `t^k`, padding the top with zeros. Requires `val >= k`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs[..k.min(self.order())].iter().all(|c| c.is_zero()));
        let n = self.order();
        let mut out = vec![F::zero(); n];
        for i in k..n {
            out[i - k] = self.coeffs[i].clone();
        }
        TruncSeries { coeffs: out }
    }

    /// Inverse of a unit modulo `t^N`.
    pub fn invert(&self) -> Result<Self> {
        let c0inv = self.coeffs[0]
            .inv()
            .ok_or_else(|| Error::NotAUnit(format!("series {self} has zero constant term")))?;
        let n = self.order();
        let mut out = vec![F::zero(); n];
        out[0] = c0inv.clone();
        for k in 1..n {
            let mut acc = F::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() && !out[k - i].is_zero() {
                    acc = acc + self.coeffs[i].clone() * out[k - i].clone();
                }
            }
            out[k] = -(acc * c0inv.clone());
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> TruncSeries<G> {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<F: Field> fmt::Display for TruncSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<F: Field> fmt::Debug for TruncSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} mod t^{}", self.order())
    }
}

/// Matrix of truncated series sharing one order `N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeriesMatrix<F> {
    rows: usize,
    cols: usize,
    n: usize,
    data: Vec<TruncSeries<F>>,
}

impl<F: Field> SeriesMatrix<F> {
    pub fn zeros(rows: usize, cols: usize, n: usize) -> Self {
        SeriesMatrix { rows, cols, n, data: vec![TruncSeries::zero(n); rows * cols] }
    }

    pub fn identity(size: usize, n: usize) -> Self {
        Self::from_fn(size, size, n, |i, j| if i == j { TruncSeries::one(n) } else { TruncSeries::zero(n) })
    }

    pub fn from_fn(rows: usize, cols: usize, n: usize, mut f: impl FnMut(usize, usize) -> TruncSeries<F>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                assert_eq!(s.order(), n, "entry ({i},{j}) has the wrong truncation order");
                data.push(s);
            }
        }
        SeriesMatrix { rows, cols, n, data }
    }

    /// `t^k * c` for a constant matrix `c`.
    pub fn from_constant(c: &Matrix<F>, k: usize, n: usize) -> Self {
        Self::from_fn(c.rows(), c.cols(), n, |i, j| TruncSeries::monomial(c.get(i, j).clone(), k, n))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncSeries<F> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: TruncSeries<F>) {
        assert_eq!(s.order(), self.n, "entry has the wrong truncation order");
        self.data[i * self.cols + j] = s;
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols, self.n), (o.rows, o.cols, o.n), "series matrix add");
        Self::from_fn(self.rows, self.cols, self.n, |i, j| self.get(i, j).add(o.get(i, j)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols, self.n), (o.rows, o.cols, o.n), "series matrix sub");
        Self::from_fn(self.rows, self.cols, self.n, |i, j| self.get(i, j).sub(o.get(i, j)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "series matrix mul shapes");
        assert_eq!(self.n, o.n, "series matrix mul orders");
        Self::from_fn(self.rows, o.cols, self.n, |i, j| {
            (0..self.cols).fold(TruncSeries::zero(self.n), |acc, k| acc.add(&self.get(i, k).mul(o.get(k, j))))
        })
    }

    pub fn scale(&self, s: &TruncSeries<F>) -> Self {
        Self::from_fn(self.rows, self.cols, self.n, |i, j| s.mul(self.get(i, j)))
    }

    pub fn shift_up(&self, k: usize) -> Self {
        Self::from_fn(self.rows, self.cols, self.n, |i, j| self.get(i, j).shift_up(k))
    }

    /// Minimal entry valuation; `None` when the matrix vanishes mod `t^N`.
    pub fn valuation(&self) -> Option<usize> {
        self.data.iter().filter_map(|s| s.valuation()).min()
    }

    /// Constant matrix of coefficients at `t^s`.
    pub fn coefficient(&self, s: usize) -> Matrix<F> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).coeff(s))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.n, |i, j| self.get(j, i).clone())
    }

    pub fn det(&self) -> Result<TruncSeries<F>> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("det of {}x{} series matrix", self.rows, self.cols)));
        }
        Ok(self.det_rec(&(0..self.rows).collect::<Vec<_>>(), 0))
    }

    fn det_rec(&self, cols: &[usize], row: usize) -> TruncSeries<F> {
        if cols.is_empty() {
            return TruncSeries::one(self.n);
        }
        let mut acc = TruncSeries::zero(self.n);
        for (idx, &c) in cols.iter().enumerate() {
            let e = self.get(row, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = e.mul(&self.det_rec(&rest, row + 1));
            acc = if idx % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// Inverse via the adjugate; requires a unit determinant.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det()?;
        let dinv = det.invert()?;
        let size = self.rows;
        let all: Vec<usize> = (0..size).collect();
        let mut out = Self::zeros(size, size, self.n);
        for i in 0..size {
            for j in 0..size {
                // cofactor of (j, i)
                let rows: Vec<usize> = all.iter().copied().filter(|&r| r != j).collect();
                let cols: Vec<usize> = all.iter().copied().filter(|&c| c != i).collect();
                let minor = Self::from_fn(size - 1, size - 1, self.n, |a, b| self.get(rows[a], cols[b]).clone());
                let mut m = minor.det()?;
                if (i + j) % 2 == 1 {
                    m = m.neg();
                }
                out.set(i, j, m.mul(&dinv));
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows, self.n) && self.rows == self.cols
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> SeriesMatrix<G> {
        SeriesMatrix { rows: self.rows, cols: self.cols, n: self.n, data: self.data.iter().map(|s| s.map(f)).collect() }
    }
}

impl<F: Field> fmt::Display for SeriesMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "] mod t^{}", self.n)
    }
}

impl<F: Field> fmt::Debug for SeriesMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn ser(c: &[i64], n: usize) -> TruncSeries<Scalar> {
        TruncSeries::from_coeffs(c.iter().map(|&x| Scalar::int(x)).collect(), n)
    }

    #[test]
    fn invert_one_plus_t() {
        assert_eq!(ser(&[1], 3).invert().unwrap(), ser(&[1], 3));
        assert_eq!(ser(&[1, 1], 3).invert().unwrap(), ser(&[1, -1, 1], 3));
        assert!(matches!(ser(&[0, 1], 3).invert(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn valuations() {
        let n = 5;
        assert_eq!(SeriesMatrix::<Scalar>::zeros(2, 2, n).valuation(), None);
        let m = SeriesMatrix::from_fn(2, 2, n, |i, j| match (i, j) {
            (0, 0) => ser(&[0, 1], n),
            (0, 1) => ser(&[0, 0, 1], n),
            (1, 0) => ser(&[0, 0, 0, 1], n),
            _ => ser(&[], n),
        });
        assert_eq!(m.valuation(), Some(1));
    }

    #[test]
    fn matrix_inverse_and_det() {
        let n = 4;
        let m = SeriesMatrix::from_fn(2, 2, n, |i, j| match (i, j) {
            (0, 0) => ser(&[1, 2], n),
            (0, 1) => ser(&[0, 1], n),
            (1, 0) => ser(&[3], n),
            _ => ser(&[1, 0, 1], n),
        });
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        assert_eq!(m.det().unwrap(), ser(&[1, -1, 1, 2], n));
    }

    #[test]
    fn shifting() {
        let s = ser(&[0, 0, 3, 4], 4);
        assert_eq!(s.shift_down(2), ser(&[3, 4], 4));
        assert_eq!(s.shift_down(2).shift_up(2), s);
    }
}
