use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gelfand_lab::algebra::orders::{gelfand_crossed_product, truncated_order, OrderId};
use gelfand_lab::algebra::FinDimAlgebra;
use gelfand_lab::error::{Error, Result};
use gelfand_lab::io::{
    algebra_from_json, algebra_to_json, lattice_map_from_json, normal_form_to_json, read_file, repq_from_json, repq_mor_to_json,
    repq_to_json, series_matrix_to_json, write_json,
};
use gelfand_lab::lattice::{cokernel, LatticeMap};
use gelfand_lab::repq::{end_algebra, hom_basis, is_indecomposable, is_isomorphic, is_schurian, top, IsoCertificate, RepQ};
use gelfand_lab::verify::{reduce_with_raise, run_suite, with_raise, Suite, MAX_N};

#[derive(Parser)]
#[command(name = "gelfand-lab", version, about = "Exact computations for representations of the real Gelfand order")]
struct Cli {
    /// Truncation order N.
    #[arg(long, global = true, env = "GELFAND_LAB_N")]
    n_trunc: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Scalar field of the inputs: Q or sqrtD.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Output directory (verify, reduce, hom, crossed) or file (dual, coker).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Schurian,
    Abscyclic,
    Algebra,
    Hc,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
    /// Reduce a lattice map to its normal form.
    Reduce { input: PathBuf },
    /// Report on a module.
    Inspect { input: PathBuf },
    /// Dual of a module.
    Dual { input: PathBuf },
    /// Isomorphism test for two indecomposable modules.
    Iso { first: PathBuf, second: PathBuf },
    /// Basis of a Hom space.
    Hom { first: PathBuf, second: PathBuf },
    /// Cokernel of a lattice map.
    Coker { input: PathBuf },
    /// Crossed product of a truncated order, or structure of a dumped algebra.
    Crossed {
        #[arg(long, default_value = "O")]
        order: String,
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
}

const DEFAULT_N: usize = 8;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Io(_) | Error::Shape(_) | Error::FieldMismatch(..) => 1,
            Error::RaiseN { .. } => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn violation(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Radicand allowed by `--field`.
fn parse_field(s: &str) -> Result<Option<u64>> {
    if s == "Q" {
        return Ok(None);
    }
    let d = s
        .strip_prefix("sqrt")
        .and_then(|d| d.parse::<u64>().ok())
        .filter(|&d| d > 1 && gelfand_lab::scalar::is_squarefree(d))
        .ok_or_else(|| Error::Parse(format!("field must be Q or sqrtD with D squarefree, got '{s}'")))?;
    Ok(Some(d))
}

/// Rejects inputs mentioning square roots outside the chosen field.
fn check_field(text: &str, field: Option<u64>) -> Result<()> {
    for part in text.split("sqrt(").skip(1) {
        let digits: String = part.chars().take_while(|c| c.is_ascii_digit()).collect();
        let d: u64 = digits.parse().map_err(|_| Error::Parse(format!("bad radicand in 'sqrt({part}'")))?;
        if field != Some(d) {
            return Err(Error::Parse(format!(
                "sqrt({d}) is outside the field {}",
                field.map_or("Q".to_string(), |f| format!("Q(sqrt({f}))"))
            )));
        }
    }
    Ok(())
}

struct Ctx {
    n: Option<usize>,
    seed: u64,
    field: Option<u64>,
    out: Option<PathBuf>,
}

impl Ctx {
    fn read(&self, path: &Path) -> Result<String> {
        let text = read_file(path)?;
        check_field(&text, self.field)?;
        Ok(text)
    }

    fn module(&self, path: &Path) -> Result<RepQ> {
        repq_from_json(&self.read(path)?)
    }

    fn emit(&self, name: &str, value: &Value) -> Result<()> {
        match &self.out {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
                write_json(&dir.join(name), value)
            }
            None => Ok(()),
        }
    }

    fn emit_file(&self, value: &Value) -> Result<()> {
        match &self.out {
            Some(path) => write_json(path, value),
            None => {
                println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let ctx = Ctx { n: cli.n_trunc, seed: cli.seed, field: parse_field(&cli.field)?, out: cli.out };
    match cli.command {
        Command::Verify { suite } => verify(&ctx, suite),
        Command::Reduce { input } => reduce(&ctx, &input),
        Command::Inspect { input } => inspect(&ctx, &input),
        Command::Dual { input } => {
            let m = ctx.module(&input)?;
            m.validate()?;
            ctx.emit_file(&repq_to_json(&m.dual()))?;
            Ok(())
        }
        Command::Iso { first, second } => iso(&ctx, &first, &second),
        Command::Hom { first, second } => hom(&ctx, &first, &second),
        Command::Coker { input } => coker(&ctx, &input),
        Command::Crossed { order, algebra } => crossed(&ctx, &order, algebra.as_deref()),
    }
}

fn verify(ctx: &Ctx, suite: SuiteArg) -> std::result::Result<(), Failure> {
    let suite = match suite {
        SuiteArg::Schurian => Suite::Schurian,
        SuiteArg::Abscyclic => Suite::AbsCyclic,
        SuiteArg::Algebra => Suite::Algebra,
        SuiteArg::Hc => Suite::Hc,
        SuiteArg::All => Suite::All,
    };
    let n = ctx.n.unwrap_or(DEFAULT_N);
    let report = run_suite(suite, ctx.seed, n).map_err(exhausted)?;
    let text = report.to_text();
    print!("{text}");
    if let Some(dir) = &ctx.out {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(dir.join("report.txt"), &text).map_err(|e| Error::Io(e.to_string()))?;
        write_json(&dir.join("report.json"), &report.to_json())?;
    }
    if report.pass() {
        Ok(())
    } else {
        Err(violation(format!("{} checks failed", report.failures().count())))
    }
}

fn exhausted(e: Error) -> Failure {
    match e {
        Error::RaiseN { .. } => Failure { code: 3, message: format!("{e} (gave up at N={MAX_N})") },
        e => e.into(),
    }
}

/// Parses a lattice map, raising its order when entries do not fit.
fn lattice_map(ctx: &Ctx, input: &Path) -> Result<LatticeMap> {
    let text = ctx.read(input)?;
    match lattice_map_from_json(&text, ctx.n) {
        Err(Error::RaiseN { n, .. }) => with_raise(2 * n, |n| lattice_map_from_json(&text, Some(n))),
        other => other,
    }
}

fn reduce(ctx: &Ctx, input: &Path) -> std::result::Result<(), Failure> {
    let phi = lattice_map(ctx, input).map_err(exhausted)?;
    let red = reduce_with_raise(&phi).map_err(exhausted)?;
    let base = if red.eta.order() == phi.order() { phi } else { gelfand_lab::verify::lift(&phi, red.eta.order())? };
    red.verify(&base)?;
    println!("N {} seed {}", red.eta.order(), ctx.seed);
    println!("{}", red.normal_form);
    println!("certificate verified");
    ctx.emit("normal_form.json", &normal_form_to_json(&red.normal_form))?;
    ctx.emit("eta.json", &series_matrix_to_json(&red.eta))?;
    ctx.emit("xi.json", &series_matrix_to_json(&red.xi))?;
    Ok(())
}

fn inspect(ctx: &Ctx, input: &Path) -> std::result::Result<(), Failure> {
    let m = ctx.module(input)?;
    println!("dimension vector ({},{})", m.u, m.v);
    if let Err(e) = m.validate() {
        println!("invalid: {e}");
        return Err(e.into());
    }
    println!("valid");
    let (s, t) = top(&m);
    let top_text = match (s, t) {
        (0, 0) => "0".to_string(),
        _ => {
            let mut parts = Vec::new();
            for (name, k) in [("S", s), ("T", t)] {
                match k {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    k => parts.push(format!("{name}^{k}")),
                }
            }
            parts.join("+")
        }
    };
    let cyclic = if s + t == 1 { "absolutely cyclic" } else { "not absolutely cyclic" };
    println!("top = {top_text}, {cyclic}");
    let report = is_schurian(&m);
    let end = match report.end_dim {
        1 if report.verdict.is_yes() => " (End = R)".to_string(),
        2 if report.verdict.is_yes() => " (End = C)".to_string(),
        _ => String::new(),
    };
    println!("End dimension {}{end}", end_algebra(&m).0.dim());
    println!("Schurian: {}", report.verdict.label());
    println!("indecomposable: {}", is_indecomposable(&m).label());
    Ok(())
}

fn iso(ctx: &Ctx, first: &Path, second: &Path) -> std::result::Result<(), Failure> {
    let (m, n) = (ctx.module(first)?, ctx.module(second)?);
    m.validate()?;
    n.validate()?;
    match is_isomorphic(&m, &n)? {
        IsoCertificate::Iso(f) => {
            f.check(&m, &n)?;
            println!("isomorphic (certificate verified)");
            ctx.emit("iso.json", &repq_mor_to_json(&f))?;
        }
        IsoCertificate::NonIso(why) => println!("not isomorphic: {why}"),
    }
    Ok(())
}

fn hom(ctx: &Ctx, first: &Path, second: &Path) -> std::result::Result<(), Failure> {
    let (m, n) = (ctx.module(first)?, ctx.module(second)?);
    m.validate()?;
    n.validate()?;
    let h = hom_basis(&m, &n);
    println!("dim Hom = {}", h.dim());
    ctx.emit("hom.json", &Value::Array(h.basis.iter().map(repq_mor_to_json).collect()))?;
    Ok(())
}

fn coker(ctx: &Ctx, input: &Path) -> std::result::Result<(), Failure> {
    let phi = lattice_map(ctx, input).map_err(exhausted)?;
    let base = phi.order();
    let m = with_raise(base, |n| cokernel(&if n == base { phi.clone() } else { gelfand_lab::verify::lift(&phi, n)? }))
        .map_err(exhausted)?;
    ctx.emit_file(&repq_to_json(&m))?;
    Ok(())
}

fn structure(a: &FinDimAlgebra) -> Result<Value> {
    let q = a.semisimple_quotient()?;
    Ok(json!({
        "dim": a.dim(),
        "radical": a.radical().len(),
        "center": a.center().len(),
        "semisimple_quotient": q.dim(),
        "quotient_center": q.center().len(),
    }))
}

fn crossed(ctx: &Ctx, order: &str, algebra: Option<&Path>) -> std::result::Result<(), Failure> {
    let n = ctx.n.unwrap_or(DEFAULT_N);
    let (base, b) = match algebra {
        Some(path) => {
            let a = algebra_from_json(&ctx.read(path)?)?;
            a.check_unit()?;
            a.check_associative()?;
            (None, a)
        }
        None => {
            let id: OrderId = order.parse()?;
            if id == OrderId::O {
                let (o, b) = gelfand_crossed_product(n)?;
                (Some(o), b)
            } else {
                (None, truncated_order(id, n)?)
            }
        }
    };
    println!("N {n} seed {}", ctx.seed);
    if let Some(o) = &base {
        println!("base {}", structure(o)?);
    }
    let s = structure(&b)?;
    println!("algebra {s}");
    ctx.emit("algebra.json", &algebra_to_json(&b))?;
    ctx.emit("structure.json", &s)?;
    Ok(())
}
