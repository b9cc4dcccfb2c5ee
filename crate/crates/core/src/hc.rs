//! Harish-Chandra weight diagrams in the principal block, their restriction
//! to the Gelfand quiver, modules over the complex Gelfand order and the
//! conjugation functors on each side.

use rand::Rng;

use crate::algebra::orders::gelfand_involution;
use crate::algebra::skew::GroupAction2;
use crate::algebra::{Elem, FinDimAlgebra};
use crate::complex::Gaussian;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub type CMat = Matrix<Gaussian>;

/// Components `M_n` for even `n` in `n_min..=n_max` with raising maps
/// `x_n : M_n -> M_{n+2}` and lowering maps `y_n : M_n -> M_{n-2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HCDiagram {
    pub n_min: i64,
    pub n_max: i64,
    pub dims: Vec<usize>,
    /// `x[i]` is `x_{n_min + 2i}`.
    pub x: Vec<CMat>,
    /// `y[i]` is `y_{n_min + 2i + 2}`.
    pub y: Vec<CMat>,
}

fn is_even(n: i64) -> bool {
    n.rem_euclid(2) == 0
}

impl HCDiagram {
    pub fn new(n_min: i64, n_max: i64, dims: Vec<usize>, x: Vec<CMat>, y: Vec<CMat>) -> Result<Self> {
        if !is_even(n_min) || !is_even(n_max) || n_min > n_max {
            return Err(Error::InvalidParameters(format!("window [{n_min}, {n_max}] must be even and ordered")));
        }
        let count = ((n_max - n_min) / 2 + 1) as usize;
        if dims.len() != count || x.len() + 1 != count || y.len() + 1 != count {
            return Err(Error::Shape(format!("window of {count} components needs {count} dims and {} maps each way", count - 1)));
        }
        for i in 0..count - 1 {
            if x[i].shape() != (dims[i + 1], dims[i]) {
                return Err(Error::Shape(format!("x_{} is {:?}", n_min + 2 * i as i64, x[i].shape())));
            }
            if y[i].shape() != (dims[i], dims[i + 1]) {
                return Err(Error::Shape(format!("y_{} is {:?}", n_min + 2 * i as i64 + 2, y[i].shape())));
            }
        }
        Ok(HCDiagram { n_min, n_max, dims, x, y })
    }

    pub fn zero(n_min: i64, n_max: i64, dims: Vec<usize>) -> Result<Self> {
        let x = dims.windows(2).map(|w| CMat::zeros(w[1], w[0])).collect();
        let y = dims.windows(2).map(|w| CMat::zeros(w[0], w[1])).collect();
        Self::new(n_min, n_max, dims, x, y)
    }

    fn index(&self, n: i64) -> Option<usize> {
        (is_even(n) && n >= self.n_min && n <= self.n_max).then(|| ((n - self.n_min) / 2) as usize)
    }

    pub fn weights(&self) -> Vec<i64> {
        (0..self.dims.len()).map(|i| self.n_min + 2 * i as i64).collect()
    }

    /// `dim M_n`, zero outside the window.
    pub fn dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |i| self.dims[i])
    }

    /// `x_n`, zero when `n` or `n + 2` leaves the window.
    pub fn x_at(&self, n: i64) -> CMat {
        match (self.index(n), self.index(n + 2)) {
            (Some(i), Some(_)) => self.x[i].clone(),
            _ => CMat::zeros(self.dim(n + 2), self.dim(n)),
        }
    }

    /// `y_n`, zero when `n` or `n - 2` leaves the window.
    pub fn y_at(&self, n: i64) -> CMat {
        match (self.index(n - 2), self.index(n)) {
            (Some(i), Some(_)) => self.y[i].clone(),
            _ => CMat::zeros(self.dim(n - 2), self.dim(n)),
        }
    }

    /// `(n^2 - 2n) + 4 x_{n-2} y_n` and `(n^2 + 2n) + 4 y_{n+2} x_n` on `M_n`.
    pub fn casimirs(&self, n: i64) -> (CMat, CMat) {
        let d = self.dim(n);
        let four = Gaussian::from_i64(4);
        let first = CMat::scalar(d, Gaussian::from_i64(n * n - 2 * n)).add(&self.x_at(n - 2).mul(&self.y_at(n)).scale(&four));
        let second = CMat::scalar(d, Gaussian::from_i64(n * n + 2 * n)).add(&self.y_at(n + 2).mul(&self.x_at(n)).scale(&four));
        (first, second)
    }
}

/// Per-component outcome of the Casimir test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirRow {
    pub n: i64,
    pub first_nilpotent: bool,
    pub second_nilpotent: bool,
    /// Whether the path of each expression stays inside the window.
    pub first_in_window: bool,
    pub second_in_window: bool,
}

impl CasimirRow {
    /// Both expressions are defined and give the same verdict.
    pub fn agrees(&self) -> bool {
        !(self.first_in_window && self.second_in_window) || self.first_nilpotent == self.second_nilpotent
    }

    pub fn ok(&self) -> bool {
        match (self.first_in_window, self.second_in_window) {
            (true, true) => self.first_nilpotent && self.second_nilpotent,
            (true, false) => self.first_nilpotent,
            (false, true) => self.second_nilpotent,
            (false, false) => self.first_nilpotent || self.second_nilpotent,
        }
    }
}

pub fn casimir_table(d: &HCDiagram) -> Vec<CasimirRow> {
    d.weights()
        .into_iter()
        .map(|n| {
            let (c1, c2) = d.casimirs(n);
            CasimirRow {
                n,
                first_nilpotent: c1.is_nilpotent(),
                second_nilpotent: c2.is_nilpotent(),
                first_in_window: n - 2 >= d.n_min,
                second_in_window: n + 2 <= d.n_max,
            }
        })
        .collect()
}

/// Casimir nilpotency on every component and `[x, y] = h` on interior components.
///
/// On a boundary component the expression whose path leaves the window is a
/// nonzero multiple of the identity for `n != 0, +-2`, so only the expression
/// staying inside the window is used there.
pub fn validate_hc(d: &HCDiagram) -> Result<()> {
    for row in casimir_table(d) {
        if !row.agrees() {
            return Err(Error::Relation(format!("Casimir expressions disagree on M_{}", row.n)));
        }
        if !row.ok() {
            return Err(Error::Relation(format!("Casimir is not nilpotent on M_{}", row.n)));
        }
    }
    for n in d.weights() {
        if n - 2 >= d.n_min && n + 2 <= d.n_max {
            let bracket = d.x_at(n - 2).mul(&d.y_at(n)).sub(&d.y_at(n + 2).mul(&d.x_at(n)));
            if bracket != CMat::scalar(d.dim(n), Gaussian::from_i64(n)) {
                return Err(Error::Relation(format!("[x, y] != h on M_{n}")));
            }
        }
    }
    Ok(())
}

/// A representation of the Gelfand quiver `- <-> * <-> +`.
#[derive(Clone, Debug, PartialEq)]
pub struct GelfandRep {
    pub dm: usize,
    pub ds: usize,
    pub dp: usize,
    /// `V_- -> V_*`
    pub a_m: CMat,
    /// `V_* -> V_-`
    pub b_m: CMat,
    /// `V_+ -> V_*`
    pub a_p: CMat,
    /// `V_* -> V_+`
    pub b_p: CMat,
}

impl GelfandRep {
    pub fn new(a_m: CMat, b_m: CMat, a_p: CMat, b_p: CMat) -> Result<Self> {
        let (ds, dm, dp) = (a_m.rows(), a_m.cols(), a_p.cols());
        if b_m.shape() != (dm, ds) || a_p.rows() != ds || b_p.shape() != (dp, ds) {
            return Err(Error::Shape("Gelfand quiver maps have inconsistent shapes".into()));
        }
        Ok(GelfandRep { dm, ds, dp, a_m, b_m, a_p, b_p })
    }

    pub fn zero(dm: usize, ds: usize, dp: usize) -> Self {
        GelfandRep {
            dm,
            ds,
            dp,
            a_m: CMat::zeros(ds, dm),
            b_m: CMat::zeros(dm, ds),
            a_p: CMat::zeros(ds, dp),
            b_p: CMat::zeros(dp, ds),
        }
    }

    /// `a_- b_- = a_+ b_+`, nilpotent.
    pub fn validate(&self) -> Result<()> {
        let c = self.a_m.mul(&self.b_m);
        if c != self.a_p.mul(&self.b_p) {
            return Err(Error::Relation("a_- b_- != a_+ b_+".into()));
        }
        if !c.is_nilpotent() {
            return Err(Error::Relation("a_- b_- is not nilpotent".into()));
        }
        Ok(())
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.dm, self.ds, self.dp)
    }

    /// Smallest `m` with `(a_- b_-)^m = 0`.
    pub fn nilpotency_index(&self) -> usize {
        let c = self.a_m.mul(&self.b_m);
        let mut p = CMat::identity(self.ds);
        let mut m = 0;
        while !p.is_zero() {
            p = p.mul(&c);
            m += 1;
        }
        m
    }

    pub fn direct_sum(&self, o: &GelfandRep) -> GelfandRep {
        GelfandRep {
            dm: self.dm + o.dm,
            ds: self.ds + o.ds,
            dp: self.dp + o.dp,
            a_m: self.a_m.block_diag(&o.a_m),
            b_m: self.b_m.block_diag(&o.b_m),
            a_p: self.a_p.block_diag(&o.a_p),
            b_p: self.b_p.block_diag(&o.b_p),
        }
    }
}

/// A morphism `(f_-, f_*, f_+)` of Gelfand quiver representations.
#[derive(Clone, Debug, PartialEq)]
pub struct GelfandMor {
    pub fm: CMat,
    pub fs: CMat,
    pub fp: CMat,
}

impl GelfandMor {
    pub fn check(&self, src: &GelfandRep, tgt: &GelfandRep) -> Result<()> {
        let squares = [
            ("a_-", self.fs.mul(&src.a_m), tgt.a_m.mul(&self.fm)),
            ("b_-", self.fm.mul(&src.b_m), tgt.b_m.mul(&self.fs)),
            ("a_+", self.fs.mul(&src.a_p), tgt.a_p.mul(&self.fp)),
            ("b_+", self.fp.mul(&src.b_p), tgt.b_p.mul(&self.fs)),
        ];
        for (name, l, r) in squares {
            if l != r {
                return Err(Error::Relation(format!("square for {name} does not commute")));
            }
        }
        Ok(())
    }

    /// The induced linear map on `V_- + V_+ + V_*`.
    pub fn on_o_module(&self) -> CMat {
        self.fm.block_diag(&self.fp).block_diag(&self.fs)
    }
}

/// `V_- = M_{-2}`, `V_* = M_0`, `V_+ = M_2` with `a_- = x_{-2}`, `b_- = y_0`,
/// `a_+ = y_2`, `b_+ = x_0`.
pub fn restrict_to_gelfand(d: &HCDiagram) -> Result<GelfandRep> {
    let r = GelfandRep::new(d.x_at(-2), d.y_at(0), d.y_at(2), d.x_at(0))?;
    r.validate()?;
    Ok(r)
}

/// Swap `-` and `+` and conjugate every map.
pub fn conjugate_gelfand(r: &GelfandRep) -> GelfandRep {
    GelfandRep {
        dm: r.dp,
        ds: r.ds,
        dp: r.dm,
        a_m: r.a_p.conj(),
        b_m: r.b_p.conj(),
        a_p: r.a_m.conj(),
        b_p: r.b_m.conj(),
    }
}

/// `M'_n = conj(M_{-n})` with `x'_n = conj(y_{-n})` and `y'_n = conj(x_{-n})`.
pub fn conjugate_hc(d: &HCDiagram) -> HCDiagram {
    let mut dims = d.dims.clone();
    dims.reverse();
    let x: Vec<CMat> = d.y.iter().rev().map(|m| m.conj()).collect();
    let y: Vec<CMat> = d.x.iter().rev().map(|m| m.conj()).collect();
    HCDiagram { n_min: -d.n_max, n_max: -d.n_min, dims, x, y }
}

/// A module over `O/t^N` on `V_- + V_+ + V_*`, given by the action of
/// `eps_-, eps_+, eps_*, a_-, a_+, b_-, b_+`.
#[derive(Clone, Debug, PartialEq)]
pub struct OModule {
    pub dims: (usize, usize, usize),
    pub order: usize,
    pub eps_m: CMat,
    pub eps_p: CMat,
    pub eps_s: CMat,
    pub a_m: CMat,
    pub a_p: CMat,
    pub b_m: CMat,
    pub b_p: CMat,
}

impl OModule {
    pub fn total(&self) -> usize {
        self.dims.0 + self.dims.1 + self.dims.2
    }

    /// `t = a_- b_- + b_- a_- + b_+ a_+`.
    pub fn t_action(&self) -> CMat {
        self.a_m.mul(&self.b_m).add(&self.b_m.mul(&self.a_m)).add(&self.b_p.mul(&self.a_p))
    }

    fn base_action(&self, base: &str) -> CMat {
        match base {
            "em" => self.eps_m.clone(),
            "ep" => self.eps_p.clone(),
            "es" => self.eps_s.clone(),
            "bm" => self.b_m.clone(),
            "bp" => self.b_p.clone(),
            "am" => self.a_m.clone(),
            "ap" => self.a_p.clone(),
            "t12" => self.b_m.mul(&self.a_p),
            "t21" => self.b_p.mul(&self.a_m),
            other => panic!("unknown basis label {other}"),
        }
    }

    /// Action of a basis element of `O/t^N` with labels `[i*][t^s*]base`.
    fn label_action(&self, label: &str, t: &CMat) -> CMat {
        let (scalar, rest) = match label.strip_prefix("i*") {
            Some(r) => (Gaussian::i(), r),
            None => (Gaussian::one(), label),
        };
        let (power, base) = match rest.split_once('*') {
            Some((p, b)) => (p.strip_prefix("t^").map_or(1, |k| k.parse().unwrap_or(1)), b),
            None => (0, rest),
        };
        t.pow(power).mul(&self.base_action(base)).scale(&scalar)
    }

    /// Action of an element of `O/t^N` in the basis of the truncated order.
    pub fn act(&self, o: &FinDimAlgebra, x: &Elem) -> CMat {
        let t = self.t_action();
        let n = self.total();
        x.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(CMat::zeros(n, n), |acc, (k, c)| {
            acc.add(&self.label_action(&o.labels()[k], &t).scale(&Gaussian::real(c.clone())))
        })
    }

    /// Checks that the action respects every product of basis elements of `o`.
    pub fn verify(&self, o: &FinDimAlgebra) -> Result<()> {
        let n = self.total();
        if !self.t_action().pow(self.order as u32).is_zero() {
            return Err(Error::RaiseN { n: self.order, reason: "t^N does not act as zero".into() });
        }
        if self.act(o, o.unit()) != CMat::identity(n) {
            return Err(Error::Relation("unit does not act as the identity".into()));
        }
        let real: Vec<usize> = (0..o.dim()).filter(|&k| !o.labels()[k].starts_with("i*")).collect();
        let acts: Vec<CMat> = (0..o.dim()).map(|k| self.act(o, &o.basis(k))).collect();
        for &a in &real {
            for &b in &real {
                let prod = o.mul(&o.basis(a), &o.basis(b));
                if acts[a].mul(&acts[b]) != self.act(o, &prod) {
                    return Err(Error::Relation(format!("{} * {} is not respected", o.labels()[a], o.labels()[b])));
                }
            }
        }
        Ok(())
    }
}

/// The module over `O/t^N` attached to a quiver representation.
pub fn quiver_to_o_module(r: &GelfandRep, order: usize) -> Result<OModule> {
    r.validate()?;
    if r.nilpotency_index() >= order {
        return Err(Error::RaiseN { n: order, reason: format!("a_- b_- has nilpotency index {}", r.nilpotency_index()) });
    }
    let (dm, ds, dp) = r.dims();
    let n = dm + dp + ds;
    let (om, op, os) = (0, dm, dm + dp);
    let block = |r0: usize, c0: usize, m: &CMat| {
        let mut out = CMat::zeros(n, n);
        out.set_block(r0, c0, m);
        out
    };
    let module = OModule {
        dims: (dm, dp, ds),
        order,
        eps_m: block(om, om, &CMat::identity(dm)),
        eps_p: block(op, op, &CMat::identity(dp)),
        eps_s: block(os, os, &CMat::identity(ds)),
        a_m: block(os, om, &r.a_m),
        a_p: block(os, op, &r.a_p),
        b_m: block(om, os, &r.b_m),
        b_p: block(op, os, &r.b_p),
    };
    Ok(module)
}

/// The module `sigma^#(M)` written in the basis where `-` and `+` are swapped:
/// the action of `a` is the conjugate of the action of `sigma(a)`.
pub fn sigma_twist_action(m: &OModule, o: &FinDimAlgebra, sigma: &GroupAction2, x: &Elem) -> CMat {
    let (dm, dp, _) = m.dims;
    let n = m.total();
    // new order V_+ + V_- + V_*
    let perm = CMat::from_fn(n, n, |i, j| {
        let src = if i < dp {
            dm + i
        } else if i < dp + dm {
            i - dp
        } else {
            i
        };
        if src == j {
            Gaussian::one()
        } else {
            Gaussian::zero()
        }
    });
    let a = m.act(o, &sigma.apply(x)).conj();
    perm.mul(&a).mul(&perm.transpose())
}

/// Outcome of the commuting square for conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    pub quiver_square: bool,
    pub module_square: bool,
}

impl SquareReport {
    pub fn ok(&self) -> bool {
        self.quiver_square && self.module_square
    }
}

/// `I(D^dagger) = I(D)^ddagger` exactly, and `E(r^ddagger) = sigma^#(E(r))` on
/// every basis element of `O/t^N`.
pub fn conjugation_square_check(d: &HCDiagram, o: &FinDimAlgebra, order: usize) -> Result<SquareReport> {
    validate_hc(d)?;
    let r = restrict_to_gelfand(d)?;
    let left = restrict_to_gelfand(&conjugate_hc(d))?;
    let right = conjugate_gelfand(&r);
    let quiver_square = left == right;
    let m = quiver_to_o_module(&r, order)?;
    let mc = quiver_to_o_module(&right, order)?;
    let sigma = gelfand_involution(o)?;
    let mut module_square = true;
    for k in 0..o.dim() {
        let b = o.basis(k);
        if mc.act(o, &b) != sigma_twist_action(&m, o, &sigma, &b) {
            module_square = false;
            break;
        }
    }
    Ok(SquareReport { quiver_square, module_square })
}

fn random_gaussian<R: Rng>(rng: &mut R, complex: bool) -> Gaussian {
    let re = Scalar::int(rng.gen_range(-2..=2));
    let im = if complex { Scalar::int(rng.gen_range(-2..=2)) } else { Scalar::zero() };
    Gaussian::new(re, im)
}

fn random_cmat<R: Rng>(rows: usize, cols: usize, rng: &mut R, complex: bool) -> CMat {
    CMat::from_fn(rows, cols, |_, _| random_gaussian(rng, complex))
}

fn random_invertible<R: Rng>(n: usize, rng: &mut R, complex: bool) -> (CMat, CMat) {
    loop {
        let g = random_cmat(n, n, rng, complex);
        if let Some(inv) = g.inverse() {
            return (g, inv);
        }
    }
}

/// A random diagram on the window `{-2, 0, 2}` in the principal block.
///
/// `a_-, b_-` respect a level filtration on `V_*` that makes `a_- b_-` strictly
/// triangular; `b_+` is injective and `a_+` solves `a_+ b_+ = a_- b_-`.
/// The two sides are exchanged at random.
pub fn random_diagram<R: Rng>(rng: &mut R, complex: bool) -> HCDiagram {
    let ds = rng.gen_range(0..=2usize);
    let dm = rng.gen_range(0..=2usize);
    let dp = rng.gen_range(ds..=ds + 1);
    let levels: Vec<usize> = (0..dm).map(|_| rng.gen_range(0..=ds)).collect();
    let mut a_m = CMat::zeros(ds, dm);
    let mut b_m = CMat::zeros(dm, ds);
    for (p, &lev) in levels.iter().enumerate() {
        for i in 0..ds {
            if i >= lev {
                a_m.set(i, p, random_gaussian(rng, complex));
            }
            if lev > i {
                b_m.set(p, i, random_gaussian(rng, complex));
            }
        }
    }
    let (g, ginv) = random_invertible(ds, rng, complex);
    let a_m = g.mul(&a_m);
    let b_m = b_m.mul(&ginv);
    let c = a_m.mul(&b_m);
    let b_p = loop {
        let b = random_cmat(dp, ds, rng, complex);
        if b.rank() == ds {
            break b;
        }
    };
    let bh = b_p.conj().transpose();
    let left = bh.mul(&b_p).inverse().expect("injective").mul(&bh);
    let w = random_cmat(ds, dp, rng, complex);
    let a_p = c.mul(&left).add(&w.mul(&CMat::identity(dp).sub(&b_p.mul(&left))));
    let mut r = GelfandRep::new(a_m, b_m, a_p, b_p).expect("consistent shapes");
    if rng.gen_bool(0.5) {
        r = GelfandRep { dm: r.dp, ds: r.ds, dp: r.dm, a_m: r.a_p, b_m: r.b_p, a_p: r.a_m, b_p: r.b_m };
    }
    from_gelfand(&r)
}

/// The diagram on `{-2, 0, 2}` whose restriction is `r`.
pub fn from_gelfand(r: &GelfandRep) -> HCDiagram {
    HCDiagram {
        n_min: -2,
        n_max: 2,
        dims: vec![r.dm, r.ds, r.dp],
        x: vec![r.a_m.clone(), r.b_p.clone()],
        y: vec![r.b_m.clone(), r.a_p.clone()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::orders::{truncated_order, OrderId};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: i64, im: i64) -> Gaussian {
        Gaussian::new(Scalar::int(re), Scalar::int(im))
    }

    #[test]
    fn documented_validation_examples() {
        validate_hc(&HCDiagram::zero(-2, 2, vec![0, 0, 0]).unwrap()).unwrap();
        validate_hc(&HCDiagram::zero(0, 0, vec![1]).unwrap()).unwrap();
        let d = HCDiagram::zero(2, 2, vec![1]).unwrap();
        let (c1, c2) = d.casimirs(2);
        assert!(c1.is_zero());
        assert_eq!(c2, CMat::scalar(1, Gaussian::from_i64(8)));
        validate_hc(&d).unwrap();
        assert!(validate_hc(&HCDiagram::zero(4, 4, vec![1]).unwrap()).is_err());
    }

    #[test]
    fn restriction_example() {
        let d = HCDiagram::new(0, 2, vec![1, 1], vec![CMat::identity(1)], vec![CMat::zeros(1, 1)]).unwrap();
        validate_hc(&d).unwrap();
        let r = restrict_to_gelfand(&d).unwrap();
        assert_eq!(r.dims(), (0, 1, 1));
        assert_eq!(r.b_p, CMat::identity(1));
        assert!(r.a_p.is_zero());
    }

    #[test]
    fn conjugations_are_involutions() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for complex in [false, true] {
            for _ in 0..10 {
                let d = random_diagram(&mut rng, complex);
                validate_hc(&d).unwrap();
                assert_eq!(conjugate_hc(&conjugate_hc(&d)), d);
                validate_hc(&conjugate_hc(&d)).unwrap();
                let r = restrict_to_gelfand(&d).unwrap();
                assert_eq!(conjugate_gelfand(&conjugate_gelfand(&r)), r);
            }
        }
        let mut r = GelfandRep::zero(1, 1, 0);
        r.a_m = CMat::scalar(1, c(0, 1));
        assert_eq!(conjugate_gelfand(&r).a_p, CMat::scalar(1, c(0, -1)));
    }

    #[test]
    fn semisimple_module_and_t_index() {
        let o = truncated_order(OrderId::O, 2).unwrap();
        let m = quiver_to_o_module(&GelfandRep::zero(1, 1, 1), 2).unwrap();
        assert!(m.t_action().is_zero());
        m.verify(&o).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let r = restrict_to_gelfand(&random_diagram(&mut rng, true)).unwrap();
            let m = quiver_to_o_module(&r, 4).unwrap();
            let t = m.t_action();
            let idx = (0..6).find(|&k| t.pow(k).is_zero()).unwrap() as usize;
            let base = r.nilpotency_index();
            assert!(idx == base || idx == base + 1, "{idx} vs {base}");
        }
        // t on V_- is b_- a_-, which can survive one step longer than a_- b_-
        let r = GelfandRep::new(
            CMat::from_fn(1, 2, |_, j| Gaussian::from_i64(i64::from(j == 0))),
            CMat::from_fn(2, 1, |i, _| Gaussian::from_i64(i64::from(i == 1))),
            CMat::zeros(1, 0),
            CMat::zeros(0, 1),
        )
        .unwrap();
        let m = quiver_to_o_module(&r, 4).unwrap();
        assert_eq!(r.nilpotency_index(), 1);
        assert!(!m.t_action().is_zero() && m.t_action().pow(2).is_zero());
        m.verify(&truncated_order(OrderId::O, 4).unwrap()).unwrap();
    }

    #[test]
    fn square_commutes_on_seeded_diagrams() {
        let n = 3;
        let o = truncated_order(OrderId::O, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for complex in [false, true] {
            for _ in 0..8 {
                let d = random_diagram(&mut rng, complex);
                assert!(conjugation_square_check(&d, &o, n).unwrap().ok());
            }
        }
    }

    #[test]
    fn morphisms_transport() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let o = truncated_order(OrderId::O, 3).unwrap();
        let r = restrict_to_gelfand(&random_diagram(&mut rng, true)).unwrap();
        let s = restrict_to_gelfand(&random_diagram(&mut rng, true)).unwrap();
        let sum = r.direct_sum(&s);
        let (dm, ds, dp) = r.dims();
        let inc = |a: usize, b: usize| CMat::from_fn(a + b, a, |i, j| if i == j { Gaussian::one() } else { Gaussian::zero() });
        let f = GelfandMor { fm: inc(dm, s.dm), fs: inc(ds, s.ds), fp: inc(dp, s.dp) };
        f.check(&r, &sum).unwrap();
        let (mr, ms) = (quiver_to_o_module(&r, 3).unwrap(), quiver_to_o_module(&sum, 3).unwrap());
        let phi = f.on_o_module();
        for k in 0..o.dim() {
            let b = o.basis(k);
            assert_eq!(phi.mul(&mr.act(&o, &b)), ms.act(&o, &b).mul(&phi));
        }
    }
}
