//! Deterministic verification suites behind `gelfand-lab verify`.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::orders::{
    complexification_check, corner_check, galois_check, idempotent_conjugacy_check, lambda_map_check, og_to_a_check, truncated_order,
    OrderId,
};
use crate::algebra::{division_verdict, DivisionKind, DivisionVerdict};
use crate::error::{Error, Result};
use crate::hc::{casimir_table, conjugation_square_check, random_diagram};
use crate::lattice::{
    build_normal_map, cokernel, normal_forms_up_to, perturbed_normal_map, reduce_to_normal_form, Case, LatticeMap, NormalForm,
};
use crate::repq::{is_isomorphic, is_schurian, top, RepQ};
use crate::scalar::Scalar;

/// Largest truncation order tried when a computation asks for more.
pub const MAX_N: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Schurian,
    AbsCyclic,
    Algebra,
    Hc,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "schurian" => Ok(Suite::Schurian),
            "abscyclic" => Ok(Suite::AbsCyclic),
            "algebra" => Ok(Suite::Algebra),
            "hc" => Ok(Suite::Hc),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!("unknown suite '{other}'"))),
        }
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Schurian => "schurian",
            Suite::AbsCyclic => "abscyclic",
            Suite::Algebra => "algebra",
            Suite::Hc => "hc",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: String,
    /// The statement being exercised.
    pub statement: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub n: usize,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} seed {} N {}", self.suite, self.seed, self.n);
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {} ({}): {}", if c.pass { "pass" } else { "FAIL" }, c.id, c.statement, c.detail);
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(out, "{}: {passed}/{} checks passed", if self.pass() { "PASS" } else { "FAIL" }, self.checks.len());
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "seed": self.seed,
            "N": self.n,
            "pass": self.pass(),
            "checks": self.checks.iter().map(|c| json!({
                "id": c.id, "statement": c.statement, "pass": c.pass, "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    /// Records a check; `RaiseN` propagates so the caller can report exhaustion.
    fn add(&mut self, id: impl Into<String>, statement: &str, outcome: Result<(bool, String)>) -> Result<()> {
        let (pass, detail) = match outcome {
            Ok(x) => x,
            Err(e @ Error::RaiseN { .. }) => return Err(e),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(Check { id: id.into(), statement: statement.to_string(), pass, detail });
        Ok(())
    }
}

/// Runs `f` at order `n`, doubling it on `RaiseN` up to [`MAX_N`].
pub fn with_raise<T>(n: usize, mut f: impl FnMut(usize) -> Result<T>) -> Result<T> {
    let mut n = n.max(2);
    loop {
        match f(n) {
            Err(Error::RaiseN { .. }) if n < MAX_N => n = (2 * n).min(MAX_N),
            other => return other,
        }
    }
}

/// Cokernel of the normal map, raising the order as needed.
pub fn normal_cokernel(nf: &NormalForm, n: usize) -> Result<RepQ> {
    with_raise(n, |n| cokernel(&build_normal_map(nf, n)?))
}

pub fn run_suite(suite: Suite, seed: u64, n: usize) -> Result<VerificationReport> {
    let mut b = Builder { checks: Vec::new() };
    let suites: Vec<Suite> = match suite {
        Suite::All => vec![Suite::Schurian, Suite::AbsCyclic, Suite::Algebra, Suite::Hc],
        s => vec![s],
    };
    for s in suites {
        match s {
            Suite::Schurian => schurian_suite(&mut b)?,
            Suite::AbsCyclic => abscyclic_suite(&mut b, seed, n)?,
            Suite::Algebra => algebra_suite(&mut b, n)?,
            Suite::Hc => hc_suite(&mut b, seed, n)?,
            Suite::All => unreachable!(),
        }
    }
    Ok(VerificationReport { suite: suite.name().to_string(), seed, n, checks: b.checks })
}

fn iso_outcome(m: &RepQ, n: &RepQ, expect_iso: bool) -> Result<(bool, String)> {
    let cert = is_isomorphic(m, n)?;
    Ok(match cert {
        crate::repq::IsoCertificate::Iso(f) => {
            let ok = f.check(m, n).is_ok() && f.is_invertible();
            (expect_iso && ok, format!("isomorphism found (certificate verified: {ok})"))
        }
        crate::repq::IsoCertificate::NonIso(why) => (!expect_iso, format!("non-isomorphic: {why}")),
    })
}

fn schurian_suite(b: &mut Builder) -> Result<()> {
    let six = RepQ::schurian_six();
    let expected = [2, 1, 1, 1, 2, 2];
    for ((name, m), dim) in six.iter().zip(expected) {
        let r = is_schurian(m);
        let mut ok = r.verdict.is_yes() && r.end_dim == dim;
        let mut detail = format!("End of dimension {} is a division algebra: {}", r.end_dim, r.verdict.label());
        if dim == 2 {
            let square_ok = matches!(&r.verdict, DivisionVerdict::Yes { kind: DivisionKind::Complex, witness_square: Some(s), .. } if *s == Scalar::int(-1))
                && r.witness.as_ref().is_some_and(|w| w.compose(w) == m.identity().scale(&Scalar::int(-1)));
            ok &= square_ok;
            let _ = write!(detail, "; witness squares to -1: {square_ok}");
        }
        b.add(format!("schurian.{name}"), "the six Schurian objects", Ok((ok, detail)))?;
    }
    for i in 0..six.len() {
        for j in i + 1..six.len() {
            let id = format!("noniso.{}-{}", six[i].0, six[j].0);
            b.add(id, "the six Schurian objects are pairwise non-isomorphic", iso_outcome(&six[i].1, &six[j].1, false))?;
        }
    }
    for (name, m) in &six {
        let d = m.dual();
        let ok = d.validate().is_ok() && d.dim_vector() == m.dim_vector() && d.dual() == *m;
        b.add(format!("dual.{name}"), "duality is an involution preserving dimension vectors", Ok((ok, format!("D(M) has dimension vector {:?}", d.dim_vector()))))?;
    }
    b.add("dual.exchange-b", "duality exchanges the two modules of dimension vector (1,1)", iso_outcome(&six[2].1.dual(), &six[3].1, true))?;
    b.add("top.c1", "the first module of dimension vector (1,2) has top T+T", Ok({
        let t = top(&six[4].1);
        (t == (0, 2), format!("top multiplicities (S, T) = {t:?}"))
    }))?;
    Ok(())
}

const LAMBDAS: [(i64, i64); 4] = [(1, 1), (2, 1), (1, 2), (-1, 1)];

fn lambdas() -> Vec<Scalar> {
    LAMBDAS.iter().map(|&(p, q)| Scalar::frac(p, q)).collect()
}

const SCHURIAN_VECTORS: [(usize, usize); 4] = [(1, 0), (0, 1), (1, 1), (1, 2)];

fn abscyclic_suite(b: &mut Builder, seed: u64, n: usize) -> Result<()> {
    let forms = normal_forms_up_to(3, &lambdas());
    let mut cokers = Vec::new();
    for nf in &forms {
        let m = normal_cokernel(nf, n)?;
        let (got, want) = (m.dim_vector(), nf.dimension_vector());
        b.add(format!("dimvec.{nf}"), "dimension vector formula", Ok((got == want, format!("{got:?}, formula {want:?}"))))?;
        cokers.push((nf.clone(), m));
    }
    for (nf, m) in &cokers {
        if SCHURIAN_VECTORS.contains(&m.dim_vector()) {
            continue;
        }
        let r = is_schurian(m);
        let rad = matches!(&r.verdict, DivisionVerdict::No { reason, .. } if reason.starts_with("radical"));
        b.add(format!("exhaustive.{nf}"), "no Schurian objects beyond the six", Ok((r.verdict.is_no(), format!("End dim {}, verdict {} (radical witness: {rad})", r.end_dim, r.verdict.label()))))?;
    }
    for (nf, m) in cokers.iter().filter(|(nf, _)| nf.k + nf.l <= 2) {
        let t = top(m);
        let want = if nf.case.is_type_one() { (0, 1) } else { (1, 0) };
        b.add(format!("top.{nf}"), "absolutely cyclic cokernels have simple top", Ok((t == want, format!("top {t:?}"))))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..200 {
        let nf = forms.choose(&mut rng).expect("nonempty").clone();
        let outcome = with_raise(n.max(16), |n| {
            let phi = perturbed_normal_map(&nf, n, &mut rng)?;
            let red = reduce_to_normal_form(&phi)?;
            red.verify(&phi)?;
            Ok(red.normal_form)
        })
        .map(|got| (got == nf.canonicalized(), format!("{nf} -> {got}")));
        b.add(format!("reduce.{i:03}"), "reduction recovers the normal form", outcome)?;
    }
    let d = |k: usize, l: usize, lam: Scalar| NormalForm::with_any_lambda(k, l, lam).and_then(|nf| normal_cokernel(&nf, n));
    let (two, half, three) = (d(1, 0, Scalar::int(2))?, d(1, 0, Scalar::frac(1, 2))?, d(1, 0, Scalar::int(3))?);
    b.add("lambda.inverse", "lambda and 1/lambda give isomorphic modules when l = 0", iso_outcome(&two, &half, true))?;
    b.add("lambda.distinct", "lambda = 2 and 3 give non-isomorphic modules when l = 0", iso_outcome(&two, &three, false))?;
    b.add("lambda.minus", "lambda = 2 and -2 give non-isomorphic modules when l = 0", iso_outcome(&two, &d(1, 0, Scalar::int(-2))?, false))?;
    let l1: Vec<RepQ> = [1, 2, 3].iter().map(|&x| d(1, 1, Scalar::int(x))).collect::<Result<_>>()?;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        b.add(format!("lambda.l1.{}-{}", i + 1, j + 1), "different lambda give non-isomorphic modules when l >= 1", iso_outcome(&l1[i], &l1[j], false))?;
    }
    for (k, l) in [(1, 1), (1, 2), (2, 1)] {
        let ci = normal_cokernel(&NormalForm::new(Case::IIcI, k, l)?, n)?;
        let cii = normal_cokernel(&NormalForm::new(Case::IIcII, k, l)?, n)?;
        b.add(format!("iic.{k}.{l}"), "the two variants of case II.c are non-isomorphic", iso_outcome(&ci, &cii, false))?;
    }
    let small = normal_forms_up_to(2, &lambdas());
    for i in 0..20 {
        let nf = small.choose(&mut rng).expect("nonempty").clone();
        let m = with_raise(n.max(12), |n| cokernel(&perturbed_normal_map(&nf, n, &mut rng)?))?;
        let dual = m.dual();
        let outcome = if dual.validate().is_err() || dual.dim_vector() != m.dim_vector() {
            Ok((false, "dual fails to validate or changes the dimension vector".into()))
        } else {
            iso_outcome(&dual.dual(), &m, true).map(|(ok, s)| (ok, format!("{nf}: {s}")))
        };
        b.add(format!("dual.coker.{i:02}"), "duality is an involution up to isomorphism", outcome)?;
    }
    Ok(())
}

fn unit_outcome(r: Result<()>, what: &str) -> Result<(bool, String)> {
    match r {
        Ok(()) => Ok((true, format!("{what} verified"))),
        Err(e @ Error::RaiseN { .. }) => Err(e),
        Err(e) => Ok((false, e.to_string())),
    }
}

/// `A/J` is three-dimensional, `j` squares to `-e` there and `e (A/J) e` is complex.
pub fn real_gelfand_quotient_check(n: usize) -> Result<(bool, String)> {
    let a = truncated_order(OrderId::A, n)?;
    let (q, proj) = a.quotient(&a.radical())?;
    let jbar = proj.apply(&a.el("j"));
    let ebar = proj.apply(&a.el("e"));
    let square = q.mul(&jbar, &jbar) == q.scale(&Scalar::int(-1), &ebar);
    let (corner, _) = q.corner(&ebar)?;
    let complex = matches!(division_verdict(&corner, 0), DivisionVerdict::Yes { kind: DivisionKind::Complex, .. });
    let fbar = proj.apply(&a.el("f"));
    let (real, _) = q.corner(&fbar)?;
    let ok = q.dim() == 3 && square && complex && real.dim() == 1;
    Ok((ok, format!("dim A/J = {}, jbar^2 = -ebar: {square}, e(A/J)e complex: {complex}, f(A/J)f of dim {}", q.dim(), real.dim())))
}

fn algebra_suite(b: &mut Builder, n: usize) -> Result<()> {
    b.add("map.lambda", "Lambda is isomorphic to A/tA", unit_outcome(lambda_map_check(), "Lambda -> A/tA"))?;
    for k in [2, 3, 4] {
        b.add(format!("map.og.{k}"), "the invariants of O are isomorphic to A", unit_outcome(og_to_a_check(k), "O^G -> A"))?;
    }
    b.add("map.galois", "the Galois crossed product is a matrix algebra", unit_outcome(galois_check(), "Q(i)[G] -> M_2(Q)"))?;
    for k in [2, 3] {
        b.add(format!("map.complexification.{k}"), "C (x) A is isomorphic to O", unit_outcome(complexification_check(k), "C (x) A -> O"))?;
    }
    b.add("idempotents", "the idempotents of the crossed product are conjugate", unit_outcome(idempotent_conjugacy_check(2), "conjugacy"))?;
    let k = n.clamp(2, 4);
    b.add(format!("radical.A.{k}"), "A/J is C x R", real_gelfand_quotient_check(k))?;
    b.add(format!("radical.H.{k}"), "H/J is M_2(R) x R", {
        let h = truncated_order(OrderId::H, k)?;
        let q = h.semisimple_quotient()?;
        Ok((q.dim() == 5 && q.center().len() == 2, format!("dim H/J = {}, center of dim {}", q.dim(), q.center().len())))
    })?;
    b.add("corner", "the corner of the crossed product matches A", corner_check(2).map(|r| (r.matches(), format!("{r:?}"))))?;
    Ok(())
}

fn hc_suite(b: &mut Builder, seed: u64, n: usize) -> Result<()> {
    let order = n.clamp(3, 4);
    let o = truncated_order(OrderId::O, order)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..100 {
        let complex = i % 2 == 1;
        let d = random_diagram(&mut rng, complex);
        let rows = casimir_table(&d);
        let agree = rows.iter().all(|r| r.agrees());
        let outcome = conjugation_square_check(&d, &o, order)
            .map(|r| (r.ok() && agree, format!("quiver square {}, module square {}, Casimir agreement {agree}", r.quiver_square, r.module_square)));
        b.add(format!("square.{i:03}"), "the conjugation square commutes", outcome)?;
    }
    for nf in normal_forms_up_to(1, &[Scalar::int(2)]) {
        let m = normal_cokernel(&nf, n)?;
        let t = top(&m);
        let want = if nf.case.is_type_one() { (0, 1) } else { (1, 0) };
        b.add(format!("top.{nf}"), "case I cokernels have top T, case II top S", Ok((t == want, format!("top {t:?}"))))?;
    }
    Ok(())
}

/// Reduces a map, raising the order on request.
pub fn reduce_with_raise(phi: &LatticeMap) -> Result<crate::lattice::Reduction> {
    let base = phi.order();
    with_raise(base, |n| {
        let lifted = if n == base { phi.clone() } else { lift(phi, n)? };
        reduce_to_normal_form(&lifted)
    })
}

/// The same polynomial entries read at a larger order.
pub fn lift(phi: &LatticeMap, n: usize) -> Result<LatticeMap> {
    let m = crate::lattice::SMat::from_fn(phi.matrix.rows(), phi.matrix.cols(), n, |i, j| {
        crate::lattice::Series::from_coeffs(phi.matrix.get(i, j).coeffs().to_vec(), n)
    });
    LatticeMap::new(phi.source.clone(), phi.target.clone(), m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schurian_suite_passes() {
        let r = run_suite(Suite::Schurian, 0, 8).unwrap();
        assert!(r.pass(), "{}", r.to_text());
        assert_eq!(r.checks.iter().filter(|c| c.id.starts_with("noniso")).count(), 15);
    }

    #[test]
    fn algebra_suite_passes() {
        let r = run_suite(Suite::Algebra, 0, 4).unwrap();
        assert!(r.pass(), "{}", r.to_text());
    }

    #[test]
    fn raise_doubles_until_success() {
        let mut seen = Vec::new();
        let got = with_raise(4, |n| {
            seen.push(n);
            if n < 16 {
                Err(Error::RaiseN { n, reason: "small".into() })
            } else {
                Ok(n)
            }
        });
        assert_eq!(got.unwrap(), 16);
        assert_eq!(seen, vec![4, 8, 16]);
        assert!(with_raise(4, |n| -> Result<()> { Err(Error::RaiseN { n, reason: "never".into() }) }).is_err());
    }
}
