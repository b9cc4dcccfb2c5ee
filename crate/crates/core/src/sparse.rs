//! Incremental sparse row echelon forms over an exact field.
//!
//! Rows are kept fully reduced, so membership tests, kernels and quotient
//! coordinates all come from one structure.

use crate::field::Field;

/// Sorted `(column, value)` pairs with no stored zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn from_dense<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense<F: Field>(v: &SparseVec<F>, n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Sort, merge duplicates and drop zeros.
pub fn normalize<F: Field>(mut v: Vec<(usize, F)>) -> SparseVec<F> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = y.clone() + x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// `a + c*b`.
pub fn axpy<F: Field>(a: &SparseVec<F>, c: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c.clone() * b[j].1.clone()));
            j += 1;
        } else {
            let v = a[i].1.clone() + c.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(v: &SparseVec<F>, c: &F) -> SparseVec<F> {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, c.clone() * x.clone())).collect()
}

pub fn get<F: Field>(v: &SparseVec<F>, col: usize) -> Option<&F> {
    v.binary_search_by_key(&col, |(i, _)| *i).ok().map(|k| &v[k].1)
}

/// Reduced row echelon form built one row at a time.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
    /// column -> index into `rows`
    pivot_of: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new(), pivot_of: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec<F>> {
        self.pivot_of[col].map(|r| &self.rows[r])
    }

    /// Remainder of `v` modulo the row space; zero at every pivot column.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let hits: Vec<(usize, F)> = v
            .iter()
            .filter_map(|(c, x)| self.pivot_of[*c].map(|r| (r, x.clone())))
            .collect();
        let mut out = v.clone();
        for (r, x) in hits {
            out = axpy(&out, &(-x), &self.rows[r]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns true when the rank grew.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let r = self.reduce(v);
        let Some((col, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading entry");
        let row = scale(&r, &inv);
        for existing in self.rows.iter_mut() {
            if let Some(x) = get(existing, col).cloned() {
                *existing = axpy(existing, &(-x), &row);
            }
        }
        self.pivot_of[col] = Some(self.rows.len());
        self.pivots.push(col);
        self.rows.push(row);
        true
    }

    pub fn insert_dense(&mut self, v: &[F]) -> bool {
        self.insert(&from_dense(v))
    }

    /// Basis of `{x : row . x = 0 for every row}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut x = vec![F::zero(); self.ncols];
                x[f] = F::one();
                for (&p, row) in self.pivots.iter().zip(&self.rows) {
                    if let Some(c) = get(row, f) {
                        x[p] = -c.clone();
                    }
                }
                x
            })
            .collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| self.pivot_of[*c].is_none()).collect()
    }
}

/// Kernel of a sparse homogeneous system with `ncols` unknowns.
pub fn kernel<F: Field>(ncols: usize, rows: &[SparseVec<F>]) -> Vec<Vec<F>> {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.insert(r);
    }
    ech.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn kernel_of_rank_one_row() {
        let k = kernel(2, &[vec![(0, s(1)), (1, s(1))]]);
        assert_eq!(k, vec![vec![s(-1), s(1)]]);
    }

    #[test]
    fn reduce_and_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&vec![(0, s(1)), (1, s(2))]));
        assert!(e.insert(&vec![(1, s(1)), (2, s(1))]));
        assert!(!e.insert(&vec![(0, s(1)), (1, s(3)), (2, s(1))]));
        assert!(e.contains(&vec![(0, s(2)), (1, s(5)), (2, s(1))]));
        assert_eq!(e.rank(), 2);
        let k = e.kernel();
        assert_eq!(k.len(), 1);
        for row in e.rows() {
            let dot = row.iter().fold(s(0), |acc, (i, x)| acc + x.clone() * k[0][*i].clone());
            assert_eq!(dot, s(0));
        }
    }

    #[test]
    fn normalize_merges() {
        let v = normalize(vec![(2, s(1)), (0, s(3)), (2, s(-1))]);
        assert_eq!(v, vec![(0, s(3))]);
    }
}
