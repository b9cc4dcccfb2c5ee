//! JSON formats for modules, lattice maps, normal forms, diagrams and algebras.
//!
//! Scalars are strings such as `"3/2"` or `"1/2-sqrt(5)"` (plain integers are
//! accepted), series are coefficient lists starting at `t^0`, complex numbers
//! are `["re", "im"]`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::FinDimAlgebra;
use crate::complex::Gaussian;
use crate::error::{Error, Result};
use crate::hc::{CMat, HCDiagram};
use crate::lattice::{Case, LatticeMap, LatticeSum, NormalForm, SMat, Series};
use crate::matrix::Matrix;
use crate::repq::{RepQ, RepQMor};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Text(String),
}

impl ScalarJson {
    pub fn parse(&self) -> Result<Scalar> {
        match self {
            ScalarJson::Int(n) => Ok(Scalar::int(*n)),
            ScalarJson::Text(s) => s.parse(),
        }
    }
}

pub fn scalar_json(s: &Scalar) -> ScalarJson {
    ScalarJson::Text(s.to_string())
}

fn parse_matrix(rows: &[Vec<ScalarJson>], shape: (usize, usize), name: &str) -> Result<Matrix<Scalar>> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::Parse(format!("{name} must be {}x{}", shape.0, shape.1)));
    }
    let parsed = rows.iter().map(|r| r.iter().map(|x| x.parse()).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_fn(shape.0, shape.1, |i, j| parsed[i][j].clone()))
}

fn matrix_json(m: &Matrix<Scalar>) -> Vec<Vec<ScalarJson>> {
    m.to_rows().iter().map(|r| r.iter().map(scalar_json).collect()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepQJson {
    pub u: usize,
    pub v: usize,
    #[serde(rename = "X1")]
    pub x1: Vec<Vec<ScalarJson>>,
    #[serde(rename = "X2")]
    pub x2: Vec<Vec<ScalarJson>>,
    #[serde(rename = "Y1")]
    pub y1: Vec<Vec<ScalarJson>>,
    #[serde(rename = "Y2")]
    pub y2: Vec<Vec<ScalarJson>>,
}

/// Parses a module without checking its relations.
pub fn repq_from_json(text: &str) -> Result<RepQ> {
    let j: RepQJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let (u, v) = (j.u, j.v);
    // a matrix with zero rows has no way to record its column count
    let fix = |rows: &Vec<Vec<ScalarJson>>, shape: (usize, usize)| if shape.0 == 0 { Vec::new() } else { rows.clone() };
    RepQ::new(
        u,
        v,
        parse_matrix(&fix(&j.x1, (v, u)), (v, u), "X1")?,
        parse_matrix(&fix(&j.x2, (v, u)), (v, u), "X2")?,
        parse_matrix(&fix(&j.y1, (u, v)), (u, v), "Y1")?,
        parse_matrix(&fix(&j.y2, (u, v)), (u, v), "Y2")?,
    )
}

pub fn repq_to_json(m: &RepQ) -> Value {
    serde_json::to_value(RepQJson {
        u: m.u,
        v: m.v,
        x1: matrix_json(&m.x1),
        x2: matrix_json(&m.x2),
        y1: matrix_json(&m.y1),
        y2: matrix_json(&m.y2),
    })
    .expect("serializable")
}

pub fn repq_mor_to_json(f: &RepQMor) -> Value {
    serde_json::json!({ "S": matrix_json(&f.s), "T1": matrix_json(&f.t1), "T2": matrix_json(&f.t2) })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeMapJson {
    pub source: Vec<String>,
    pub target: Vec<String>,
    #[serde(rename = "N")]
    pub n: usize,
    pub entries: Vec<Vec<Vec<ScalarJson>>>,
}

fn parse_sum(names: &[String]) -> Result<LatticeSum> {
    LatticeSum::new(names.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>()?)
}

fn series_json(s: &Series) -> Vec<ScalarJson> {
    let last = s.coeffs().iter().rposition(|c| !crate::field::Field::is_zero(c)).map_or(1, |p| p + 1);
    s.coeffs()[..last].iter().map(scalar_json).collect()
}

/// Parses a lattice map at order `n_override` when given, else at its own `N`.
pub fn lattice_map_from_json(text: &str, n_override: Option<usize>) -> Result<LatticeMap> {
    let j: LatticeMapJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let n = n_override.unwrap_or(j.n);
    if n == 0 {
        return Err(Error::Parse("N must be positive".into()));
    }
    let (source, target) = (parse_sum(&j.source)?, parse_sum(&j.target)?);
    let (rows, cols) = (source.rank(), target.rank());
    if j.entries.len() != rows || j.entries.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse(format!("entries must be {rows}x{cols}")));
    }
    let mut m = SMat::zeros(rows, cols, n);
    for (i, row) in j.entries.iter().enumerate() {
        for (jdx, coeffs) in row.iter().enumerate() {
            let c = coeffs.iter().map(|x| x.parse()).collect::<Result<Vec<_>>>()?;
            if c.len() > n && c[n..].iter().any(|x| !crate::field::Field::is_zero(x)) {
                return Err(Error::RaiseN { n, reason: format!("entry ({i},{jdx}) has terms beyond t^{}", n - 1) });
            }
            m.set(i, jdx, Series::from_coeffs(c, n));
        }
    }
    LatticeMap::new(source, target, m)
}

pub fn lattice_map_to_json(phi: &LatticeMap) -> Value {
    serde_json::to_value(LatticeMapJson {
        source: phi.source.summands().iter().map(|l| l.to_string()).collect(),
        target: phi.target.summands().iter().map(|l| l.to_string()).collect(),
        n: phi.order(),
        entries: (0..phi.matrix.rows()).map(|i| (0..phi.matrix.cols()).map(|j| series_json(phi.matrix.get(i, j))).collect()).collect(),
    })
    .expect("serializable")
}

pub fn series_matrix_to_json(m: &SMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| serde_json::to_value((0..m.cols()).map(|j| series_json(m.get(i, j))).collect::<Vec<_>>()).expect("serializable"))
            .collect(),
    )
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalFormJson {
    pub case: String,
    pub k: usize,
    #[serde(default)]
    pub l: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<ScalarJson>,
}

pub fn normal_form_to_json(nf: &NormalForm) -> Value {
    serde_json::to_value(NormalFormJson {
        case: nf.case.tag().to_string(),
        k: nf.k,
        l: nf.l,
        lambda: nf.lambda.as_ref().map(scalar_json),
    })
    .expect("serializable")
}

/// Parses a normal form; case II.d accepts any nonzero `lambda`.
pub fn normal_form_from_json(text: &str) -> Result<NormalForm> {
    let j: NormalFormJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let case: Case = j.case.parse()?;
    match (case, j.lambda) {
        (Case::IId, Some(lam)) => NormalForm::with_any_lambda(j.k, j.l, lam.parse()?),
        (Case::IId, None) => Err(Error::Parse("case II.d needs lambda".into())),
        (_, Some(_)) => Err(Error::Parse("lambda only applies to II.d".into())),
        (c, None) => NormalForm::new(c, j.k, j.l),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramJson {
    pub window: [i64; 2],
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub x: BTreeMap<String, Vec<Vec<[ScalarJson; 2]>>>,
    #[serde(default)]
    pub y: BTreeMap<String, Vec<Vec<[ScalarJson; 2]>>>,
}

fn parse_cmat(rows: Option<&Vec<Vec<[ScalarJson; 2]>>>, shape: (usize, usize), name: &str) -> Result<CMat> {
    let Some(rows) = rows else { return Ok(CMat::zeros(shape.0, shape.1)) };
    if shape.0 == 0 {
        return Ok(CMat::zeros(0, shape.1));
    }
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::Parse(format!("{name} must be {}x{}", shape.0, shape.1)));
    }
    let mut m = CMat::zeros(shape.0, shape.1);
    for (i, r) in rows.iter().enumerate() {
        for (j, [re, im]) in r.iter().enumerate() {
            m.set(i, j, Gaussian::new(re.parse()?, im.parse()?));
        }
    }
    Ok(m)
}

fn cmat_json(m: &CMat) -> Vec<Vec<[ScalarJson; 2]>> {
    m.to_rows().iter().map(|r| r.iter().map(|z| [scalar_json(&z.re), scalar_json(&z.im)]).collect()).collect()
}

pub fn diagram_from_json(text: &str) -> Result<HCDiagram> {
    let j: DiagramJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let [lo, hi] = j.window;
    if lo % 2 != 0 || hi % 2 != 0 || lo > hi {
        return Err(Error::Parse(format!("window [{lo}, {hi}] must be even and ordered")));
    }
    let weights: Vec<i64> = (0..=((hi - lo) / 2)).map(|i| lo + 2 * i).collect();
    let dims: Vec<usize> = weights.iter().map(|n| j.dims.get(&n.to_string()).copied().unwrap_or(0)).collect();
    let mut x = Vec::new();
    let mut y = Vec::new();
    for w in 0..weights.len().saturating_sub(1) {
        let n = weights[w];
        x.push(parse_cmat(j.x.get(&n.to_string()), (dims[w + 1], dims[w]), &format!("x_{n}"))?);
        y.push(parse_cmat(j.y.get(&(n + 2).to_string()), (dims[w], dims[w + 1]), &format!("y_{}", n + 2))?);
    }
    HCDiagram::new(lo, hi, dims, x, y)
}

pub fn diagram_to_json(d: &HCDiagram) -> Value {
    let weights = d.weights();
    let dims = weights.iter().zip(&d.dims).map(|(n, k)| (n.to_string(), *k)).collect();
    let x = weights.iter().zip(&d.x).map(|(n, m)| (n.to_string(), cmat_json(m))).collect();
    let y = weights.iter().skip(1).zip(&d.y).map(|(n, m)| (n.to_string(), cmat_json(m))).collect();
    serde_json::to_value(DiagramJson { window: [d.n_min, d.n_max], dims, x, y }).expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    dim: usize,
    labels: Vec<String>,
    unit: Vec<ScalarJson>,
    /// Entries `(i, j, k, c)`: the product of basis elements `i` and `j` has `c` at `k`.
    sc: Vec<(usize, usize, usize, ScalarJson)>,
}

pub fn algebra_to_json(a: &FinDimAlgebra) -> Value {
    let mut sc = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            sc.extend(a.basis_product(i, j).iter().map(|(k, c)| (i, j, *k, scalar_json(c))));
        }
    }
    let out = AlgebraJson { dim: a.dim(), labels: a.labels().to_vec(), unit: a.unit().iter().map(scalar_json).collect(), sc };
    serde_json::to_value(out).expect("serializable")
}

pub fn algebra_from_json(text: &str) -> Result<FinDimAlgebra> {
    let raw: AlgebraJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.labels.len() != raw.dim {
        return Err(Error::Parse(format!("{} labels for dimension {}", raw.labels.len(), raw.dim)));
    }
    let unit = raw.unit.iter().map(ScalarJson::parse).collect::<Result<Vec<_>>>()?;
    let mut table = vec![vec![Vec::new(); raw.dim]; raw.dim];
    for (i, j, k, c) in &raw.sc {
        if *i >= raw.dim || *j >= raw.dim {
            return Err(Error::Parse(format!("structure constant ({i}, {j}) out of range")));
        }
        table[*i][*j].push((*k, c.parse()?));
    }
    let table = table.into_iter().map(|r| r.into_iter().map(crate::sparse::normalize).collect()).collect();
    FinDimAlgebra::new(raw.labels, table, unit)
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_normal_map;

    #[test]
    fn module_round_trip() {
        for (_, m) in RepQ::schurian_six() {
            let back = repq_from_json(&repq_to_json(&m).to_string()).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn lattice_map_round_trip_and_errors() {
        let nf = NormalForm::with_any_lambda(1, 1, Scalar::frac(-3, 2)).unwrap();
        let phi = build_normal_map(&nf, 6).unwrap();
        let text = lattice_map_to_json(&phi).to_string();
        assert_eq!(lattice_map_from_json(&text, None).unwrap(), phi);
        let bad = r#"{"source":["Q"],"target":["Q"],"N":4,"entries":[[["0","1/0"]]]}"#;
        assert!(matches!(lattice_map_from_json(bad, None), Err(Error::Parse(_))));
        let unknown = r#"{"source":["X"],"target":["Q"],"N":4,"entries":[[[1]]]}"#;
        assert!(lattice_map_from_json(unknown, None).is_err());
    }

    #[test]
    fn normal_form_format() {
        let nf = NormalForm::with_lambda(1, 0, Scalar::frac(1, 2)).unwrap();
        let v = normal_form_to_json(&nf);
        assert_eq!(v, serde_json::json!({"case": "II.d", "k": 1, "l": 0, "lambda": "1/2"}));
        assert_eq!(normal_form_from_json(&v.to_string()).unwrap(), NormalForm { canonical: false, ..nf });
    }

    #[test]
    fn diagram_round_trip() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let d = crate::hc::random_diagram(&mut rng, true);
        assert_eq!(diagram_from_json(&diagram_to_json(&d).to_string()).unwrap(), d);
        let text = r#"{"window":[0,2],"dims":{"0":1,"2":1},"x":{"0":[[["1","0"]]]}}"#;
        let d = diagram_from_json(text).unwrap();
        assert_eq!(d.x_at(0), CMat::identity(1));
    }

    #[test]
    fn algebra_round_trip() {
        let a = crate::algebra::orders::truncated_order(crate::algebra::orders::OrderId::A, 2).unwrap();
        let back = algebra_from_json(&algebra_to_json(&a).to_string()).unwrap();
        assert_eq!(back.dim(), a.dim());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert_eq!(back.basis_product(i, j), a.basis_product(i, j));
            }
        }
        assert!(algebra_from_json(r#"{"dim":1,"labels":[],"unit":[1],"sc":[]}"#).is_err());
    }
}
