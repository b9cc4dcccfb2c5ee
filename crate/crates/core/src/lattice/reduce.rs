//! Reduction of a rational isomorphism `F -> P` or `F -> Q` to its normal form.

use super::pseudo::{diagonalizers, pseudo_diagonalize};
use super::{build_normal_map, constant, is_automorphism, rational_iso_check, Case, Lat, LatticeMap, NormalForm, SMat, Series};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// `eta * phi * xi = build_normal_map(nf)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub normal_form: NormalForm,
    pub eta: SMat,
    pub xi: SMat,
}

impl Reduction {
    /// Re-checks the certificate against the input map.
    pub fn verify(&self, phi: &LatticeMap) -> Result<()> {
        let target = build_normal_map(&self.normal_form, phi.order())?;
        if target.source != phi.source || target.target != phi.target {
            return Err(Error::InvalidParameters(format!("{} does not match {} -> {}", self.normal_form, phi.source, phi.target)));
        }
        if !is_automorphism(&phi.source, &self.eta) {
            return Err(Error::InvalidParameters("eta is not an automorphism of the source".into()));
        }
        if !is_automorphism(&phi.target, &self.xi) {
            return Err(Error::InvalidParameters("xi is not an automorphism of the target".into()));
        }
        if self.eta.mul(&phi.matrix).mul(&self.xi) != target.matrix {
            return Err(Error::InvalidParameters("eta * phi * xi differs from the normal map".into()));
        }
        Ok(())
    }
}

struct Reducer {
    n: usize,
    cur: SMat,
    eta: SMat,
    xi: SMat,
}

impl Reducer {
    fn new(phi: &SMat) -> Self {
        let n = phi.order();
        Reducer { n, cur: phi.clone(), eta: SMat::identity(phi.rows(), n), xi: SMat::identity(phi.cols(), n) }
    }

    fn left(&mut self, op: &SMat) {
        self.cur = op.mul(&self.cur);
        self.eta = op.mul(&self.eta);
    }

    fn right(&mut self, op: &SMat) {
        self.cur = self.cur.mul(op);
        self.xi = self.xi.mul(op);
    }

    fn elementary(&self, size: usize, i: usize, j: usize, c: Series) -> SMat {
        let mut op = SMat::identity(size, self.n);
        op.set(i, j, op.get(i, j).add(&c));
        op
    }

    /// `row dst += c * row src`.
    fn row_add(&mut self, dst: usize, src: usize, c: Series) {
        let op = self.elementary(self.cur.rows(), dst, src, c);
        self.left(&op);
    }

    /// `col dst += c * col src`.
    fn col_add(&mut self, dst: usize, src: usize, c: Series) {
        let op = self.elementary(self.cur.cols(), src, dst, c);
        self.right(&op);
    }

    fn scale_row(&mut self, i: usize, c: Series) {
        let mut op = SMat::identity(self.cur.rows(), self.n);
        op.set(i, i, c);
        self.left(&op);
    }

    fn scale_col(&mut self, j: usize, c: Series) {
        let mut op = SMat::identity(self.cur.cols(), self.n);
        op.set(j, j, c);
        self.right(&op);
    }

    /// Entry `(i, j)` divided by `t^k`.
    fn psi(&self, i: usize, j: usize, k: usize) -> Series {
        self.cur.get(i, j).shift_down(k)
    }

    /// `-psi(i, j) / psi(p, q)`, the coefficient clearing `(i, j)` against the unit pivot `(p, q)`.
    fn clearing(&self, i: usize, j: usize, p: usize, q: usize, k: usize) -> Result<Series> {
        Ok(self.psi(i, j, k).mul(&self.psi(p, q, k).invert()?).neg())
    }

    fn row_valuation(&self, i: usize) -> Option<usize> {
        (0..self.cur.cols()).filter_map(|j| self.cur.get(i, j).valuation()).min()
    }

    /// Makes the diagonal entry `(i, i)` equal to `t^v` by a unit on the left; returns `v`.
    fn normalize_row(&mut self, i: usize) -> Result<usize> {
        let e = self.cur.get(i, i).clone();
        let v = e.valuation().ok_or_else(|| Error::NotRationalIso("vanishing diagonal entry".into()))?;
        let unit = e.shift_down(v).invert()?;
        self.scale_row(i, unit);
        Ok(v)
    }

    /// Right multiplication by the constant rotation sending `(a b)` to `(1 0)`,
    /// or to `(0 1)` when `to_second` is set.
    fn rotate_row(&mut self, i: usize, k: usize, to_second: bool) {
        let (a, b) = (self.cur.get(i, 0).coeff(k), self.cur.get(i, 1).coeff(k));
        let r = (a.clone() * a.clone() + b.clone() * b.clone()).inv().expect("nonzero row");
        let (alpha, beta) = if to_second { (b * r.clone(), -a * r) } else { (a * r.clone(), b * r) };
        let rot = Matrix::from_fn(2, 2, |p, q| match (p, q) {
            (0, 0) | (1, 1) => alpha.clone(),
            (0, 1) => -beta.clone(),
            _ => beta.clone(),
        });
        let op = constant(&rot, self.n);
        self.right(&op);
    }

    fn constant_part(&self, k: usize) -> Matrix<Scalar> {
        self.cur.coefficient(k)
    }
}

fn guard(n: usize, k: usize, l: usize) -> Result<()> {
    if k + l + 2 > n {
        return Err(Error::RaiseN { n, reason: format!("k + l = {} needs order at least {}", k + l, k + l + 2) });
    }
    Ok(())
}

/// Finds `eta`, `xi` and the normal form with `eta * phi * xi` equal to the normal map.
pub fn reduce_to_normal_form(phi: &LatticeMap) -> Result<Reduction> {
    match rational_iso_check(phi)? {
        super::RationalIso::Yes { .. } => {}
        super::RationalIso::No { reason } => {
            return Err(if reason.contains("undecidable") {
                Error::RaiseN { n: phi.order(), reason }
            } else {
                Error::NotRationalIso(reason)
            })
        }
    }
    let src = phi.source.summands().to_vec();
    let tgt = phi.target.summands().to_vec();
    let mut r = Reducer::new(&phi.matrix);
    let k = r.cur.valuation().expect("nonzero map");
    let nf = match (src.as_slice(), tgt.as_slice()) {
        ([s @ (Lat::Q | Lat::L)], [Lat::Q]) => {
            if k == 0 {
                return Err(Error::InvalidParameters("map is an isomorphism, the cokernel vanishes".into()));
            }
            r.normalize_row(0)?;
            guard(r.n, k, 0)?;
            NormalForm::new(if *s == Lat::Q { Case::Ia } else { Case::Ib }, k, 0)?
        }
        ([a @ (Lat::Q | Lat::L), b], [Lat::P]) if a == b => {
            if r.constant_part(k).row(0).iter().all(|x| x.is_zero()) {
                let swap = constant(&Matrix::from_i64(&[&[0, 1], &[1, 0]]), r.n);
                r.left(&swap);
            }
            let l = diagonal_from_first_row(&mut r, k)?;
            guard(r.n, k, l)?;
            NormalForm::new(if *a == Lat::Q { Case::IIa } else { Case::IIb }, k, l)?
        }
        ([Lat::L, Lat::Q], [Lat::P]) => {
            if r.row_valuation(0) == Some(k) {
                let l = diagonal_from_first_row(&mut r, k)?;
                guard(r.n, k, l)?;
                NormalForm::new(Case::IIcI, k, l)?
            } else {
                r.rotate_row(1, k, true);
                let c = r.clearing(1, 0, 1, 1, k)?;
                r.col_add(0, 1, c);
                let c = r.clearing(0, 1, 1, 1, k)?;
                r.row_add(0, 1, c);
                let l = r.normalize_row(0)? - k;
                r.normalize_row(1)?;
                guard(r.n, k, l)?;
                NormalForm::new(Case::IIcII, k, l)?
            }
        }
        ([Lat::P], [Lat::P]) => reduce_endomorphism(&mut r, k)?,
        _ => {
            return Err(Error::InvalidParameters(format!(
                "no normal form for maps {} -> {}",
                phi.source, phi.target
            )))
        }
    };
    let red = Reduction { normal_form: nf, eta: r.eta, xi: r.xi };
    red.verify(phi)?;
    Ok(red)
}

/// With a nonzero first row of the leading coefficient: rotate it to `(1 0)`,
/// clear the off-diagonal entries and normalize to `t^k diag(1, t^l)`.
fn diagonal_from_first_row(r: &mut Reducer, k: usize) -> Result<usize> {
    r.rotate_row(0, k, false);
    let c = r.clearing(1, 0, 0, 0, k)?;
    r.row_add(1, 0, c);
    let c = r.clearing(0, 1, 0, 0, k)?;
    r.col_add(1, 0, c);
    r.normalize_row(0)?;
    Ok(r.normalize_row(1)? - k)
}

fn reduce_endomorphism(r: &mut Reducer, k: usize) -> Result<NormalForm> {
    if k == 0 {
        return Err(Error::InvalidParameters("map is an automorphism of P, the cokernel vanishes".into()));
    }
    let n = r.n;
    if r.constant_part(k).row(0).iter().all(|x| x.is_zero()) {
        let turn = constant(&Matrix::from_i64(&[&[0, 1], &[-1, 0]]), n);
        r.left(&turn);
    }
    r.rotate_row(0, k, false);
    let m0 = r.constant_part(k);
    let (c, d) = (m0.get(1, 0).clone(), m0.get(1, 1).clone());
    if !d.is_zero() {
        let pd = pseudo_diagonalize(&c, &d)?;
        r.left(&constant(&pd.eta, n));
        r.right(&constant(&pd.xi, n));
        // psi = D + t(...) with D = diag(1, lambda); right-multiply by psi^{-1} D
        let psi = SMat::from_fn(2, 2, n, |i, j| r.psi(i, j, k));
        let dmat = Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => Scalar::one(),
            (1, 1) => pd.lambda.clone(),
            _ => Scalar::zero(),
        });
        let op = psi.inverse()?.mul(&constant(&dmat, n));
        r.right(&op);
        guard(n, k, 0)?;
        return NormalForm::with_lambda(k, 0, pd.lambda);
    }
    let (eta, xi) = diagonalizers(&m0, &Scalar::zero())?;
    r.left(&constant(&eta, n));
    r.right(&constant(&xi, n));
    let c = r.clearing(1, 0, 0, 0, k)?;
    r.row_add(1, 0, c);
    let c = r.clearing(0, 1, 0, 0, k)?;
    r.col_add(1, 0, c);
    let g = r.psi(0, 0, k).invert()?;
    r.left(&SMat::identity(2, n).scale(&g));
    let h = r.psi(1, 1, k);
    let l = h.valuation().ok_or_else(|| Error::NotRationalIso("vanishing diagonal entry".into()))?;
    guard(n, k, l)?;
    let lambda = h.coeff(l);
    let v = h.shift_down(l).scale(&lambda.inv().expect("leading coefficient"));
    r.scale_col(1, v.invert()?);
    NormalForm::with_lambda(k, l, lambda)
}
