//! Lattices over the real Gelfand order and maps between them.
//!
//! A lattice of rank `n` sits inside `Mat_{3 x n}(K)` with the order acting by
//! left multiplication. A map `F' -> F''` is right multiplication by a matrix
//! `X` whose rows index the columns of `F'` and whose columns index those of
//! `F''`. The matrix problem therefore reads `phi -> eta * phi * xi` with
//! `eta` an automorphism of the source and `xi` one of the target.

pub mod coker;
pub mod pseudo;
pub mod reduce;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::series::{SeriesMatrix, TruncSeries};

pub use coker::cokernel;
pub use pseudo::{pi_cd, pseudo_diagonalize, PseudoDiag};
pub use reduce::{reduce_to_normal_form, Reduction};

pub type Series = TruncSeries<Scalar>;
pub type SMat = SeriesMatrix<Scalar>;

/// The three indecomposable lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lat {
    /// `Ae`, rank two.
    P,
    /// `Af = [m; m; R]`.
    Q,
    /// `[R; R; R]`.
    L,
}

impl Lat {
    pub fn rank(self) -> usize {
        match self {
            Lat::P => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Lat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Lat::P => "P",
            Lat::Q => "Q",
            Lat::L => "L",
        };
        f.write_str(s)
    }
}

impl FromStr for Lat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "P" => Ok(Lat::P),
            "Q" => Ok(Lat::Q),
            "L" => Ok(Lat::L),
            other => Err(Error::Parse(format!("unknown lattice '{other}'"))),
        }
    }
}

/// Kind of a single column of `Mat_{3 x n}`: a rank-one summand or one half of a `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Column {
    Q,
    L,
    /// Column `half` (0 or 1) of a `P` block starting at `start`.
    P { start: usize, half: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSum(pub Vec<Lat>);

impl LatticeSum {
    pub fn new(summands: Vec<Lat>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::InvalidParameters("empty lattice sum".into()));
        }
        Ok(LatticeSum(summands))
    }

    pub fn single(l: Lat) -> Self {
        LatticeSum(vec![l])
    }

    pub fn summands(&self) -> &[Lat] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|l| l.rank()).sum()
    }

    pub fn columns(&self) -> Vec<Column> {
        let mut out = Vec::new();
        for l in &self.0 {
            match l {
                Lat::Q => out.push(Column::Q),
                Lat::L => out.push(Column::L),
                Lat::P => {
                    let start = out.len();
                    out.push(Column::P { start, half: 0 });
                    out.push(Column::P { start, half: 1 });
                }
            }
        }
        out
    }
}

impl fmt::Display for LatticeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

/// Whether the entry from source column `s` to target column `t` must lie in `m`.
fn needs_m(s: Column, t: Column) -> bool {
    match (s, t) {
        (_, Column::L) | (Column::Q, _) => false,
        (_, Column::Q) => true,
        (Column::L, Column::P { .. }) => true,
        (Column::P { .. }, Column::P { .. }) => false,
    }
}

/// First violation of the Hom pattern from `source` to `target`, if any.
pub fn hom_violation(source: &LatticeSum, target: &LatticeSum, x: &SMat) -> Option<String> {
    let (sc, tc) = (source.columns(), target.columns());
    if x.rows() != sc.len() || x.cols() != tc.len() {
        return Some(format!("matrix is {}x{}, expected {}x{}", x.rows(), x.cols(), sc.len(), tc.len()));
    }
    for (i, s) in sc.iter().enumerate() {
        for (j, t) in tc.iter().enumerate() {
            if needs_m(*s, *t) && !x.get(i, j).coeff(0).is_zero() {
                return Some(format!("entry ({i},{j}) from {s:?} to {t:?} must have valuation >= 1"));
            }
        }
    }
    for (i, s) in sc.iter().enumerate() {
        for (j, t) in tc.iter().enumerate() {
            if let (Column::P { start: a, half: 0 }, Column::P { start: b, half: 0 }) = (s, t) {
                debug_assert_eq!((i, j), (*a, *b));
                let c = |r: usize, q: usize| x.get(i + r, j + q).coeff(0);
                if c(0, 0) != c(1, 1) || c(1, 0) != -c(0, 1) {
                    return Some(format!("P-block at ({i},{j}) has constant term outside C"));
                }
            }
        }
    }
    None
}

/// Whether `x` is an automorphism of `sum`: in the endomorphism pattern with
/// invertible constant term.
pub fn is_automorphism(sum: &LatticeSum, x: &SMat) -> bool {
    hom_violation(sum, sum, x).is_none() && x.coefficient(0).det().map(|d| !d.is_zero()).unwrap_or(false)
}

/// A morphism of lattices as a matrix over `R/t^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeMap {
    pub source: LatticeSum,
    pub target: LatticeSum,
    pub matrix: SMat,
}

impl LatticeMap {
    pub fn new(source: LatticeSum, target: LatticeSum, matrix: SMat) -> Result<Self> {
        if let Some(why) = hom_violation(&source, &target, &matrix) {
            return Err(Error::InvalidParameters(format!("not a morphism {source} -> {target}: {why}")));
        }
        Ok(LatticeMap { source, target, matrix })
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalIso {
    Yes { det_valuation: usize },
    No { reason: String },
}

impl RationalIso {
    pub fn is_yes(&self) -> bool {
        matches!(self, RationalIso::Yes { .. })
    }
}

/// A map is a rational isomorphism when its determinant is nonzero; at order
/// `N` this is only decided when `val(det) <= N - 2`.
pub fn rational_iso_check(phi: &LatticeMap) -> Result<RationalIso> {
    if phi.source.rank() != phi.target.rank() {
        return Err(Error::Shape(format!("ranks {} and {} differ", phi.source.rank(), phi.target.rank())));
    }
    let n = phi.order();
    let det = phi.matrix.det()?;
    Ok(match det.valuation() {
        Some(v) if v + 2 <= n => RationalIso::Yes { det_valuation: v },
        Some(v) => RationalIso::No { reason: format!("det has valuation {v}, undecidable below order {}", v + 2) },
        None => RationalIso::No { reason: format!("det vanishes mod t^{n}") },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Ia,
    Ib,
    IIa,
    IIb,
    IIcI,
    IIcII,
    IId,
}

impl Case {
    pub const ALL: [Case; 7] = [Case::Ia, Case::Ib, Case::IIa, Case::IIb, Case::IIcI, Case::IIcII, Case::IId];

    pub fn tag(self) -> &'static str {
        match self {
            Case::Ia => "I.a",
            Case::Ib => "I.b",
            Case::IIa => "II.a",
            Case::IIb => "II.b",
            Case::IIcI => "II.c-i",
            Case::IIcII => "II.c-ii",
            Case::IId => "II.d",
        }
    }

    pub fn source(self) -> LatticeSum {
        LatticeSum(match self {
            Case::Ia => vec![Lat::Q],
            Case::Ib => vec![Lat::L],
            Case::IIa => vec![Lat::Q, Lat::Q],
            Case::IIb => vec![Lat::L, Lat::L],
            Case::IIcI | Case::IIcII => vec![Lat::L, Lat::Q],
            Case::IId => vec![Lat::P],
        })
    }

    pub fn target(self) -> LatticeSum {
        LatticeSum::single(match self {
            Case::Ia | Case::Ib => Lat::Q,
            _ => Lat::P,
        })
    }

    /// Smallest admissible `(k, l)`.
    pub fn min_params(self) -> (usize, usize) {
        match self {
            Case::Ia | Case::Ib => (1, 0),
            Case::IIa => (0, 0),
            Case::IIb | Case::IIcI | Case::IId => (1, 0),
            Case::IIcII => (0, 1),
        }
    }

    pub fn is_type_one(self) -> bool {
        matches!(self, Case::Ia | Case::Ib)
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.tag() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown case '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    pub case: Case,
    pub k: usize,
    /// Unused in case I.
    pub l: usize,
    /// Case II.d only.
    pub lambda: Option<Scalar>,
    /// When set, case II.d with `l = 0` requires `|lambda| <= 1`.
    pub canonical: bool,
}

impl NormalForm {
    pub fn new(case: Case, k: usize, l: usize) -> Result<Self> {
        let nf = NormalForm { case, k, l, lambda: None, canonical: true };
        nf.validate()?;
        Ok(nf)
    }

    pub fn with_lambda(k: usize, l: usize, lambda: Scalar) -> Result<Self> {
        let nf = NormalForm { case: Case::IId, k, l, lambda: Some(lambda), canonical: true };
        nf.validate()?;
        Ok(nf)
    }

    /// Case II.d without the `|lambda| <= 1` restriction.
    pub fn with_any_lambda(k: usize, l: usize, lambda: Scalar) -> Result<Self> {
        let nf = NormalForm { case: Case::IId, k, l, lambda: Some(lambda), canonical: false };
        nf.validate()?;
        Ok(nf)
    }

    pub fn validate(&self) -> Result<()> {
        let (k0, l0) = self.case.min_params();
        let bad = |why: String| Err(Error::InvalidParameters(format!("{}: {why}", self.case)));
        if self.k < k0 || self.l < l0 {
            return bad(format!("needs k >= {k0}, l >= {l0}, got k = {}, l = {}", self.k, self.l));
        }
        if self.case.is_type_one() && self.l != 0 {
            return bad("l is not a parameter".into());
        }
        match (&self.lambda, self.case) {
            (Some(lam), Case::IId) => {
                if lam.is_zero() {
                    return bad("lambda must be nonzero".into());
                }
                if self.canonical && self.l == 0 && lam.abs().cmp_real(&Scalar::one()).is_gt() {
                    return bad(format!("canonical lambda must lie in [-1, 1], got {lam}"));
                }
            }
            (None, Case::IId) => return bad("lambda missing".into()),
            (Some(_), _) => return bad("lambda only applies to II.d".into()),
            (None, _) => {}
        }
        Ok(())
    }

    /// The canonical representative of the isomorphism class.
    pub fn canonicalized(&self) -> NormalForm {
        let mut out = self.clone();
        if let (Case::IId, 0, Some(lam)) = (self.case, self.l, &self.lambda) {
            if lam.abs().cmp_real(&Scalar::one()).is_gt() {
                out.lambda = lam.inv();
            }
        }
        out.canonical = true;
        out
    }

    /// `(dim U, dim V)` of the cokernel.
    pub fn dimension_vector(&self) -> (usize, usize) {
        let (k, l) = (self.k, self.l);
        match self.case {
            Case::Ia => (k, k),
            Case::Ib => (k - 1, k),
            Case::IIa => (2 * k + l + 1, 2 * k + l),
            Case::IIb => (2 * k + l - 1, 2 * k + l),
            Case::IIcI | Case::IIcII | Case::IId => (2 * k + l, 2 * k + l),
        }
    }

    /// Highest power of `t` appearing in the normal map.
    pub fn degree(&self) -> usize {
        if self.case.is_type_one() {
            self.k
        } else {
            self.k + self.l
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} k={}", self.case, self.k)?;
        if !self.case.is_type_one() {
            write!(f, " l={}", self.l)?;
        }
        if let Some(lam) = &self.lambda {
            write!(f, " lambda={lam}")?;
        }
        Ok(())
    }
}

pub fn dimension_vector_formula(nf: &NormalForm) -> (usize, usize) {
    nf.dimension_vector()
}

fn mono(c: Scalar, k: usize, n: usize) -> Series {
    Series::monomial(c, k, n)
}

/// The literal normal map of the classification at truncation order `n`.
pub fn build_normal_map(nf: &NormalForm, n: usize) -> Result<LatticeMap> {
    nf.validate()?;
    if nf.degree() + 2 > n {
        return Err(Error::RaiseN { n, reason: format!("{nf} needs order at least {}", nf.degree() + 2) });
    }
    let (k, l) = (nf.k, nf.l);
    let one = Scalar::one();
    let diag = |a: Series, b: Series| SMat::from_fn(2, 2, n, |i, j| match (i, j) {
        (0, 0) => a.clone(),
        (1, 1) => b.clone(),
        _ => Series::zero(n),
    });
    let matrix = match nf.case {
        Case::Ia | Case::Ib => SMat::from_fn(1, 1, n, |_, _| mono(one.clone(), k, n)),
        Case::IIa | Case::IIb | Case::IIcI => diag(mono(one.clone(), k, n), mono(one.clone(), k + l, n)),
        Case::IIcII => diag(mono(one.clone(), k + l, n), mono(one.clone(), k, n)),
        Case::IId => {
            let lam = nf.lambda.clone().expect("validated");
            diag(mono(one.clone(), k, n), mono(lam, k + l, n))
        }
    };
    LatticeMap::new(nf.case.source(), nf.case.target(), matrix)
}

/// Random endomorphism of `sum` with invertible constant term: constants in
/// the allowed pattern plus `t` times integer polynomials of degree at most two.
pub fn random_automorphism<R: Rng>(sum: &LatticeSum, n: usize, rng: &mut R) -> SMat {
    let cols = sum.columns();
    let size = cols.len();
    loop {
        let mut x = SMat::zeros(size, size, n);
        for i in 0..size {
            for j in 0..size {
                let mut c: Vec<Scalar> = (0..4.min(n)).map(|_| Scalar::int(rng.gen_range(-2..=2))).collect();
                if needs_m(cols[i], cols[j]) {
                    c[0] = Scalar::zero();
                }
                x.set(i, j, Series::from_coeffs(c, n));
            }
        }
        for (i, s) in cols.iter().enumerate() {
            for (j, t) in cols.iter().enumerate() {
                if let (Column::P { half: 0, .. }, Column::P { half: 0, .. }) = (s, t) {
                    let (a, b) = (x.get(i, j).coeff(0), x.get(i + 1, j).coeff(0));
                    let mut set0 = |r: usize, q: usize, v: Scalar| {
                        let mut e = x.get(i + r, j + q).clone();
                        e.set_coeff(0, v);
                        x.set(i + r, j + q, e);
                    };
                    set0(1, 1, a);
                    set0(0, 1, -b);
                }
            }
        }
        if is_automorphism(sum, &x) {
            return x;
        }
    }
}

/// `u1 * nf * u2` with random automorphisms `u1` of the source and `u2` of the target.
pub fn perturbed_normal_map<R: Rng>(nf: &NormalForm, n: usize, rng: &mut R) -> Result<LatticeMap> {
    let base = build_normal_map(nf, n)?;
    let u1 = random_automorphism(&base.source, n, rng);
    let u2 = random_automorphism(&base.target, n, rng);
    LatticeMap::new(base.source.clone(), base.target.clone(), u1.mul(&base.matrix).mul(&u2))
}

/// Every normal form with `k, l <= bound` (case II.d with the given lambdas).
pub fn normal_forms_up_to(bound: usize, lambdas: &[Scalar]) -> Vec<NormalForm> {
    let mut out = Vec::new();
    for case in Case::ALL {
        let (k0, l0) = case.min_params();
        for k in k0..=bound {
            let ls: Vec<usize> = if case.is_type_one() { vec![0] } else { (l0..=bound).collect() };
            for l in ls {
                if case == Case::IId {
                    for lam in lambdas {
                        if let Ok(nf) = NormalForm::with_any_lambda(k, l, lam.clone()) {
                            out.push(nf);
                        }
                    }
                } else if let Ok(nf) = NormalForm::new(case, k, l) {
                    out.push(nf);
                }
            }
        }
    }
    out
}

/// Constant 2x2 matrix as a series matrix.
pub(crate) fn constant(m: &Matrix<Scalar>, n: usize) -> SMat {
    SMat::from_constant(m, 0, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dimension_vectors_match_table() {
        assert_eq!(NormalForm::new(Case::Ia, 3, 0).unwrap().dimension_vector(), (3, 3));
        assert_eq!(NormalForm::new(Case::IIb, 1, 1).unwrap().dimension_vector(), (2, 3));
        assert_eq!(NormalForm::with_lambda(1, 0, Scalar::one()).unwrap().dimension_vector(), (2, 2));
        assert_eq!(NormalForm::new(Case::IIa, 0, 0).unwrap().dimension_vector(), (1, 0));
    }

    #[test]
    fn ranges_are_enforced() {
        assert!(NormalForm::new(Case::IIb, 0, 1).is_err());
        assert!(NormalForm::new(Case::Ia, 0, 0).is_err());
        assert!(NormalForm::new(Case::IIcII, 0, 0).is_err());
        assert!(NormalForm::with_lambda(1, 0, Scalar::int(2)).is_err());
        assert!(NormalForm::with_lambda(1, 1, Scalar::int(2)).is_ok());
        assert!(NormalForm::with_lambda(0, 0, Scalar::one()).is_err());
        assert!(NormalForm::with_lambda(1, 0, Scalar::zero()).is_err());
    }

    #[test]
    fn normal_maps_are_morphisms() {
        let lambdas = [Scalar::one(), Scalar::int(2), Scalar::frac(1, 2), Scalar::int(-1)];
        for nf in normal_forms_up_to(3, &lambdas) {
            let phi = build_normal_map(&nf, 16).unwrap();
            assert!(rational_iso_check(&phi).unwrap().is_yes(), "{nf}");
        }
        let nf = NormalForm::with_lambda(1, 0, Scalar::one()).unwrap();
        let phi = build_normal_map(&nf, 4).unwrap();
        assert_eq!(phi.matrix, SMat::identity(2, 4).shift_up(1));
    }

    #[test]
    fn hom_pattern() {
        let n = 4;
        let l2 = LatticeSum(vec![Lat::L, Lat::L]);
        let p = LatticeSum::single(Lat::P);
        assert!(LatticeMap::new(l2.clone(), p.clone(), SMat::identity(2, n)).is_err());
        assert!(LatticeMap::new(l2, p.clone(), SMat::identity(2, n).shift_up(1)).is_ok());
        let bad = constant(&Matrix::from_i64(&[&[1, 0], &[0, 2]]), n);
        assert!(LatticeMap::new(p.clone(), p.clone(), bad).is_err());
        let rot = constant(&Matrix::from_i64(&[&[1, -2], &[2, 1]]), n);
        assert!(is_automorphism(&p, &rot));
        let lq = LatticeSum(vec![Lat::L, Lat::Q]);
        let upper = constant(&Matrix::from_i64(&[&[1, 1], &[0, 1]]), n);
        assert!(!is_automorphism(&lq, &upper));
        assert!(is_automorphism(&lq, &upper.transpose()));
    }

    #[test]
    fn rational_iso_examples() {
        let p = LatticeSum::single(Lat::P);
        let n = 5;
        let ti = LatticeMap::new(p.clone(), p.clone(), SMat::identity(2, n).shift_up(1)).unwrap();
        assert_eq!(rational_iso_check(&ti).unwrap(), RationalIso::Yes { det_valuation: 2 });
        let zero = LatticeMap::new(p.clone(), p.clone(), SMat::zeros(2, 2, n)).unwrap();
        assert!(!rational_iso_check(&zero).unwrap().is_yes());
        let q2 = LatticeSum(vec![Lat::Q, Lat::Q]);
        let m = SMat::from_fn(2, 2, n, |i, j| match (i, j) {
            (0, 0) => mono(Scalar::one(), 1, n),
            (1, 1) => mono(Scalar::one(), n - 1, n),
            _ => Series::zero(n),
        });
        let guard = LatticeMap::new(q2, p, m).unwrap();
        assert!(!rational_iso_check(&guard).unwrap().is_yes());
    }

    #[test]
    fn random_automorphisms_are_automorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for sum in [vec![Lat::P], vec![Lat::L, Lat::Q], vec![Lat::Q, Lat::Q], vec![Lat::P, Lat::Q, Lat::L]] {
            let sum = LatticeSum(sum);
            let x = random_automorphism(&sum, 6, &mut rng);
            assert!(is_automorphism(&sum, &x));
            assert!(x.inverse().is_ok());
        }
    }
}
