//! Truncated orders `A/t^N`, `H/t^N`, `O/t^N`, the algebra `Lambda`, and
//! the explicit isomorphisms between them.

use std::fmt;
use std::str::FromStr;

use super::skew::{crossed_product, invariant_subalgebra, GroupAction2};
use super::{extend_multiplicatively, verify_algebra_map, AlgebraMap, Coordinates, Elem, FinDimAlgebra};
use crate::complex::Gaussian;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

type CMat = Matrix<Gaussian>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderId {
    A,
    H,
    O,
    Lambda,
    AModT,
}

impl FromStr for OrderId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(OrderId::A),
            "H" => Ok(OrderId::H),
            "O" => Ok(OrderId::O),
            "Lambda" => Ok(OrderId::Lambda),
            "A_mod_t" => Ok(OrderId::AModT),
            _ => Err(Error::Parse(format!("unknown algebra id {s}"))),
        }
    }
}

impl fmt::Display for OrderId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrderId::A => "A",
            OrderId::H => "H",
            OrderId::O => "O",
            OrderId::Lambda => "Lambda",
            OrderId::AModT => "A_mod_t",
        };
        f.write_str(s)
    }
}

fn unit3(i: usize, j: usize, c: Gaussian) -> CMat {
    let mut m = CMat::zeros(3, 3);
    m.set(i, j, c);
    m
}

fn one() -> Gaussian {
    Gaussian::one()
}

fn flatten(m: &CMat) -> Vec<Scalar> {
    m.entries().iter().flat_map(|z| [z.re.clone(), z.im.clone()]).collect()
}

/// An order given by an `R`-basis `t^{m_k} C_k` of constant matrices `C_k`.
struct Layered {
    labels: Vec<&'static str>,
    gens: Vec<(CMat, usize)>,
}

impl Layered {
    fn truncate(&self, n: usize) -> Result<FinDimAlgebra> {
        if n == 0 {
            return Err(Error::InvalidParameters("truncation order must be at least 1".into()));
        }
        let r = self.gens.len();
        let max_layer = self.gens.iter().map(|g| g.1).max().unwrap_or(0);
        // for each layer d, the constant matrices allowed at t^d
        let mut layers = Vec::new();
        for d in 0..=2 * max_layer {
            let idx: Vec<usize> = (0..r).filter(|&k| self.gens[k].1 <= d).collect();
            let fam: Vec<Elem> = idx.iter().map(|&k| flatten(&self.gens[k].0)).collect();
            layers.push((idx, Coordinates::new(&fam)?));
        }
        // t^{m_i + m_j} C_i C_j = sum_k c_k t^{d - m_k} b_k
        let mut expand = vec![vec![Vec::new(); r]; r];
        for i in 0..r {
            for j in 0..r {
                let d = self.gens[i].1 + self.gens[j].1;
                let p = self.gens[i].0.mul(&self.gens[j].0);
                let (idx, coords) = &layers[d];
                let c = coords.of(&flatten(&p)).ok_or_else(|| {
                    Error::Relation(format!("order not closed under {} * {}", self.labels[i], self.labels[j]))
                })?;
                expand[i][j] = idx.iter().zip(c).filter(|(_, v)| !v.is_zero()).map(|(&k, v)| (d - self.gens[k].1, k, v)).collect::<Vec<_>>();
            }
        }
        let (idx0, coords0) = &layers[0];
        let unit_c = coords0
            .of(&flatten(&CMat::identity(3)))
            .ok_or_else(|| Error::Relation("identity outside the order".into()))?;
        let mut unit = vec![Scalar::zero(); r * n];
        for (&k, v) in idx0.iter().zip(unit_c) {
            unit[k] = v;
        }
        let labels = (0..r * n)
            .map(|x| {
                let (s, k) = (x / r, x % r);
                match s {
                    0 => self.labels[k].to_string(),
                    1 => format!("t*{}", self.labels[k]),
                    _ => format!("t^{s}*{}", self.labels[k]),
                }
            })
            .collect();
        FinDimAlgebra::from_rule(labels, unit, |a, b| {
            let (s, i) = (a / r, a % r);
            let (u, j) = (b / r, b % r);
            expand[i][j]
                .iter()
                .filter(|(shift, _, _)| s + u + shift < n)
                .map(|(shift, k, v)| ((s + u + shift) * r + k, v.clone()))
                .collect()
        })
    }
}

fn real_gelfand() -> Layered {
    let e = |i, j| unit3(i, j, one());
    Layered {
        labels: vec!["e", "j", "y1x1", "y1x2", "y1", "y2", "x1", "x2", "f"],
        gens: vec![
            (e(0, 0).add(&e(1, 1)), 0),
            (e(1, 0).sub(&e(0, 1)), 0),
            (e(0, 0), 1),
            (e(0, 1), 1),
            (e(0, 2), 1),
            (e(1, 2), 1),
            (e(2, 0), 0),
            (e(2, 1), 0),
            (e(2, 2), 0),
        ],
    }
}

fn hereditary() -> Layered {
    let e = |i, j| unit3(i, j, one());
    Layered {
        labels: vec!["e11", "e12", "e21", "e22", "y1", "y2", "x1", "x2", "f"],
        gens: vec![
            (e(0, 0), 0),
            (e(0, 1), 0),
            (e(1, 0), 0),
            (e(1, 1), 0),
            (e(0, 2), 1),
            (e(1, 2), 1),
            (e(2, 0), 0),
            (e(2, 1), 0),
            (e(2, 2), 0),
        ],
    }
}

/// Real form of the complex Gelfand order; indices 1, 2, 3 stand for `-`, `+`, `*`.
fn gelfand_real_form() -> Layered {
    let e = |i, j| unit3(i, j, one());
    Layered {
        labels: vec!["em", "ep", "es", "bm", "bp", "t12", "t21", "am", "ap"],
        gens: vec![
            (e(0, 0), 0),
            (e(1, 1), 0),
            (e(2, 2), 0),
            (e(0, 2), 0),
            (e(1, 2), 0),
            (e(0, 1), 1),
            (e(1, 0), 1),
            (e(2, 0), 1),
            (e(2, 1), 1),
        ],
    }
}

/// Permutation of the real-form basis induced by swapping indices 1 and 2.
const SWAP: [usize; 9] = [1, 0, 2, 4, 3, 6, 5, 8, 7];

/// Algebra spanned over `Q` by complex matrices that close under products.
fn from_complex_matrices(labels: &[&str], mats: &[CMat]) -> Result<FinDimAlgebra> {
    let fam: Vec<Elem> = mats.iter().map(flatten).collect();
    let coords = Coordinates::new(&fam)?;
    let unit = coords
        .of(&flatten(&CMat::identity(3)))
        .ok_or_else(|| Error::Relation("identity outside the span".into()))?;
    let mut failure = None;
    let alg = FinDimAlgebra::from_rule(labels.iter().map(|s| s.to_string()).collect(), unit, |a, b| {
        match coords.of(&flatten(&mats[a].mul(&mats[b]))) {
            Some(c) => crate::sparse::from_dense(&c),
            None => {
                failure = Some(format!("{} * {}", labels[a], labels[b]));
                Vec::new()
            }
        }
    })?;
    match failure {
        Some(f) => Err(Error::Relation(format!("span not closed under {f}"))),
        None => Ok(alg),
    }
}

pub const LAMBDA_LABELS: [&str; 9] = ["a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2", "rho"];

fn lambda_matrices() -> Vec<CMat> {
    let i = Gaussian::i();
    let mut a1 = unit3(0, 0, one());
    a1.set(2, 2, one());
    let mut a2 = unit3(0, 0, -i.clone());
    a2.set(2, 2, i.clone());
    vec![
        a1,
        a2,
        unit3(1, 0, one()),
        unit3(1, 0, i.clone()),
        unit3(2, 1, one()),
        unit3(2, 1, i.clone()),
        unit3(2, 0, one()),
        unit3(2, 0, i),
        unit3(1, 1, one()),
    ]
}

/// The finite-dimensional algebra `id` truncated at `t^n` (ignored for `Lambda`).
pub fn truncated_order(id: OrderId, n: usize) -> Result<FinDimAlgebra> {
    match id {
        OrderId::A => real_gelfand().truncate(n),
        OrderId::AModT => real_gelfand().truncate(1),
        OrderId::H => hereditary().truncate(n),
        OrderId::O => gelfand_real_form().truncate(n)?.complexify(),
        OrderId::Lambda => from_complex_matrices(&LAMBDA_LABELS, &lambda_matrices()),
    }
}

/// The involution of `O/t^n`: swap the indices `-`, `+` and conjugate scalars.
pub fn gelfand_involution(o: &FinDimAlgebra) -> Result<GroupAction2> {
    let d = o.dim();
    let half = d / 2;
    let sigma = Matrix::from_fn(d, d, |row, col| {
        let (part, rest) = (col / half, col % half);
        let image = part * half + (rest / 9) * 9 + SWAP[rest % 9];
        if row != image {
            Scalar::zero()
        } else if part == 0 {
            Scalar::one()
        } else {
            Scalar::int(-1)
        }
    });
    GroupAction2::new(o, sigma)
}

fn sum(alg: &FinDimAlgebra, terms: &[(i64, &str)]) -> Elem {
    terms.iter().fold(alg.zero(), |acc, (c, l)| alg.add(&acc, &alg.scale(&Scalar::int(*c), &alg.el(l))))
}

/// The map `Lambda -> A/tA` on the basis `a1, a2, b1, b2, c1, c2, d1, d2, rho`.
pub fn lambda_map() -> Result<(FinDimAlgebra, FinDimAlgebra, AlgebraMap)> {
    let lambda = truncated_order(OrderId::Lambda, 1)?;
    let a = truncated_order(OrderId::AModT, 1)?;
    let images = ["e", "j", "x1", "x2", "y1", "y2", "y1x1", "y1x2", "f"];
    let cols: Vec<Elem> = images.iter().map(|l| a.el(l)).collect();
    let matrix = Matrix::from_fn(a.dim(), lambda.dim(), |r, c| cols[c][r].clone());
    Ok((lambda, a, AlgebraMap { matrix }))
}

pub fn lambda_map_check() -> Result<()> {
    let (src, tgt, f) = lambda_map()?;
    verify_algebra_map(&src, &tgt, &f)
}

/// Invariant generators `e, j, f, x, y` of `O/t^n` under the involution.
pub fn invariant_generators(o: &FinDimAlgebra) -> [Elem; 5] {
    [
        sum(o, &[(1, "em"), (1, "ep")]),
        sum(o, &[(1, "i*ep"), (-1, "i*em")]),
        o.el("es"),
        sum(o, &[(1, "am"), (1, "ap")]),
        sum(o, &[(1, "bm"), (1, "bp")]),
    ]
}

/// Images of `e, j, f, x, y` in `A/t^n`; `j` goes to `-j` so that `x j` lands on `x2`.
fn invariant_images(a: &FinDimAlgebra, corrupt: bool) -> [Elem; 5] {
    let x = if corrupt { "x2" } else { "x1" };
    [a.el("e"), a.scale(&Scalar::int(-1), &a.el("j")), a.el("f"), a.el(x), a.el("y1")]
}

/// Builds `O^G -> A/t^n` from the invariant generators. With `corrupt`, `x`
/// is sent to `x2` instead of `x1`.
pub fn og_to_a_map(n: usize, corrupt: bool) -> Result<(FinDimAlgebra, FinDimAlgebra, AlgebraMap)> {
    if n < 2 {
        return Err(Error::InvalidParameters("the invariant check needs N >= 2".into()));
    }
    let o = truncated_order(OrderId::O, n)?;
    let act = gelfand_involution(&o)?;
    let (og, basis) = invariant_subalgebra(&o, &act)?;
    let coords = Coordinates::new(&basis)?;
    let a = truncated_order(OrderId::A, n)?;
    let gens: Vec<(Elem, Elem)> = invariant_generators(&o)
        .iter()
        .zip(invariant_images(&a, corrupt))
        .map(|(g, img)| {
            let c = coords.of(g).ok_or_else(|| Error::Relation("generator is not invariant".into()))?;
            Ok((c, img))
        })
        .collect::<Result<_>>()?;
    let f = extend_multiplicatively(&og, &a, &gens)?;
    Ok((og, a, f))
}

pub fn og_to_a_check(n: usize) -> Result<()> {
    let (og, a, f) = og_to_a_map(n, false)?;
    verify_algebra_map(&og, &a, &f)
}

/// `C (x) A/t^n -> O/t^n`, splitting `e` by the idempotents `(e -+ i j)/2`.
pub fn complexification_map(n: usize) -> Result<(FinDimAlgebra, FinDimAlgebra, AlgebraMap)> {
    if n < 2 {
        return Err(Error::InvalidParameters("the complexification check needs N >= 2".into()));
    }
    let a = truncated_order(OrderId::A, n)?.complexify()?;
    let o = truncated_order(OrderId::O, n)?;
    let [e, j, f, x, y] = invariant_generators(&o);
    let gens = vec![
        (a.el("e"), e),
        (a.el("j"), o.scale(&Scalar::int(-1), &j)),
        (a.el("f"), f),
        (a.el("x1"), x),
        (a.el("y1"), y),
        (sum(&a, &[(1, "i*e"), (1, "i*f")]), sum(&o, &[(1, "i*em"), (1, "i*ep"), (1, "i*es")])),
    ];
    let map = extend_multiplicatively(&a, &o, &gens)?;
    Ok((a, o, map))
}

pub fn complexification_check(n: usize) -> Result<()> {
    let (a, o, f) = complexification_map(n)?;
    verify_algebra_map(&a, &o, &f)
}

/// `Q(i)[G] -> M_2(Q)`: `a[e] -> rho(a)`, `a[s] -> rho(a) diag(1, -1)`.
pub fn galois_map() -> Result<(FinDimAlgebra, FinDimAlgebra, AlgebraMap)> {
    let c = FinDimAlgebra::gaussian_field();
    let conj = GroupAction2::new(&c, Matrix::from_i64(&[&[1, 0], &[0, -1]]))?;
    let b = crossed_product(&c, &conj)?;
    let m2 = FinDimAlgebra::matrix_algebra(2);
    // columns: images of 1[e], i[e], 1[s], i[s] in the basis e11, e12, e21, e22
    let matrix = Matrix::from_i64(&[&[1, 0, 1, 0], &[0, -1, 0, 1], &[0, 1, 0, 1], &[1, 0, -1, 0]]);
    Ok((b, m2, AlgebraMap { matrix }))
}

pub fn galois_check() -> Result<()> {
    let (b, m2, f) = galois_map()?;
    verify_algebra_map(&b, &m2, &f)
}

/// `B = (O/t^n)[G]` and the index offset of the `[s]` half.
pub fn gelfand_crossed_product(n: usize) -> Result<(FinDimAlgebra, FinDimAlgebra)> {
    let o = truncated_order(OrderId::O, n)?;
    let act = gelfand_involution(&o)?;
    let b = crossed_product(&o, &act)?;
    Ok((o, b))
}

/// `e*^{+-} = (1 +- i[s])/2 * eps_*` inside `B`.
pub fn star_idempotents(o: &FinDimAlgebra, b: &FinDimAlgebra) -> (Elem, Elem) {
    let half = Scalar::frac(1, 2);
    let mut plus = b.zero();
    let mut minus = b.zero();
    let es = o.index_of("es").expect("es");
    let ies = o.index_of("i*es").expect("i*es") + o.dim();
    plus[es] = half.clone();
    minus[es] = half.clone();
    plus[ies] = half.clone();
    minus[ies] = -half;
    (plus, minus)
}

/// Orthogonality, sum and the conjugation relation `[s] e*^{+-} = e*^{-+} [s]`.
pub fn idempotent_conjugacy_check(n: usize) -> Result<()> {
    let (o, b) = gelfand_crossed_product(n)?;
    let (p, m) = star_idempotents(&o, &b);
    let zero = b.zero();
    let fail = |what: &str| Err(Error::Relation(what.to_string()));
    if b.mul(&p, &p) != p || b.mul(&m, &m) != m {
        return fail("e*^{+-} is not idempotent");
    }
    if b.mul(&p, &m) != zero || b.mul(&m, &p) != zero {
        return fail("e*^+ e*^- != 0");
    }
    let mut es = b.zero();
    es[o.index_of("es").expect("es")] = Scalar::one();
    if b.add(&p, &m) != es {
        return fail("e*^+ + e*^- != eps_*");
    }
    let mut s = b.zero();
    s[o.dim()..].clone_from_slice(o.unit());
    if b.mul(&s, &p) != b.mul(&m, &s) || b.mul(&s, &m) != b.mul(&p, &s) {
        return fail("[s] e*^{+-} != e*^{-+} [s]");
    }
    Ok(())
}

/// Summary of the corner `eps B eps` for `eps = e*^+ + eps_+[e]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerReport {
    pub corner_dim: usize,
    pub a_dim: usize,
    pub corner_quotient_dim: usize,
    pub a_quotient_dim: usize,
    pub corner_center_dim: usize,
    pub a_center_dim: usize,
}

impl CornerReport {
    pub fn matches(&self) -> bool {
        self.corner_dim == self.a_dim && self.corner_quotient_dim == self.a_quotient_dim && self.corner_center_dim == self.a_center_dim
    }
}

pub fn corner_check(n: usize) -> Result<CornerReport> {
    let (o, b) = gelfand_crossed_product(n)?;
    let (p, _) = star_idempotents(&o, &b);
    let mut eps = p;
    eps[o.index_of("ep").expect("ep")] = Scalar::one();
    let (corner, _) = b.corner(&eps)?;
    let a = truncated_order(OrderId::A, n)?;
    Ok(CornerReport {
        corner_dim: corner.dim(),
        a_dim: a.dim(),
        corner_quotient_dim: corner.semisimple_quotient()?.dim(),
        a_quotient_dim: a.semisimple_quotient()?.dim(),
        corner_center_dim: corner.center().len(),
        a_center_dim: a.center().len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncations_are_associative_with_expected_dimensions() {
        for (id, n, dim) in [(OrderId::A, 2, 18), (OrderId::H, 2, 18), (OrderId::O, 1, 18), (OrderId::Lambda, 1, 9), (OrderId::AModT, 5, 9)] {
            let alg = truncated_order(id, n).unwrap();
            assert_eq!(alg.dim(), dim, "{id}");
            alg.check_associative().unwrap();
            alg.check_unit().unwrap();
        }
    }

    #[test]
    fn semisimple_quotients() {
        let a = truncated_order(OrderId::A, 3).unwrap();
        assert_eq!(a.semisimple_quotient().unwrap().dim(), 3);
        let h = truncated_order(OrderId::H, 3).unwrap();
        assert_eq!(h.semisimple_quotient().unwrap().dim(), 5);
        assert_eq!(truncated_order(OrderId::AModT, 1).unwrap().radical().len(), 6);
    }

    #[test]
    fn explicit_isomorphisms() {
        lambda_map_check().unwrap();
        galois_check().unwrap();
        og_to_a_check(2).unwrap();
        complexification_check(2).unwrap();
        idempotent_conjugacy_check(2).unwrap();
    }

    #[test]
    fn corrupted_invariant_map_is_rejected() {
        let bad = og_to_a_map(2, true).and_then(|(og, a, f)| verify_algebra_map(&og, &a, &f));
        assert!(bad.is_err());
    }

    #[test]
    fn invariants_have_half_dimension() {
        let o = truncated_order(OrderId::O, 2).unwrap();
        let act = gelfand_involution(&o).unwrap();
        let (og, _) = invariant_subalgebra(&o, &act).unwrap();
        assert_eq!(og.dim(), o.dim() / 2);
        let [e, j, _, x, y] = invariant_generators(&o);
        assert_eq!(o.mul(&j, &j), o.scale(&Scalar::int(-1), &e));
        assert!(FinDimAlgebra::is_zero_elem(&o.mul(&o.mul(&x, &j), &y)));
    }

    #[test]
    fn corner_matches_real_order() {
        let r = corner_check(2).unwrap();
        assert!(r.matches(), "{r:?}");
    }
}
