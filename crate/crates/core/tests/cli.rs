use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gelfand_lab::io::repq_to_json;
use gelfand_lab::repq::RepQ;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gelfand-lab")).args(args).env_remove("GELFAND_LAB_N").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn module(dir: &Path, name: &str, m: &RepQ) -> PathBuf {
    write(dir, name, &repq_to_json(m).to_string())
}

#[test]
fn reduce_examples() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", r#"{"source":["P"],"target":["P"],"N":6,"entries":[[["0","1"],["0"]],[["0"],["0","1"]]]}"#);
    let out = dir.path().join("cert");
    let o = run(&["reduce", p.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    assert!(stdout(&o).contains("II.d k=1 l=0 lambda=1"));
    for f in ["normal_form.json", "eta.json", "xi.json"] {
        assert!(out.join(f).exists());
    }
    let q = write(dir.path(), "q.json", r#"{"source":["Q"],"target":["Q"],"N":4,"entries":[[["0","1"]]]}"#);
    let o = run(&["reduce", q.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("I.a k=1"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"source":["Q"],"target":["Q"],"N":4,"entries":[[["0","1/0"]]]}"#);
    assert_eq!(run(&["reduce", bad.to_str().unwrap()]).status.code(), Some(1));
    let zero = write(dir.path(), "zero.json", r#"{"source":["Q"],"target":["Q"],"N":4,"entries":[[["0"]]]}"#);
    assert_eq!(run(&["reduce", zero.to_str().unwrap()]).status.code(), Some(2));
    let mut coeffs = vec!["0"; 100];
    coeffs.push("1");
    let deep = format!(r#"{{"source":["Q"],"target":["Q"],"N":4,"entries":[[{}]]}}"#, serde_json::to_string(&coeffs).unwrap());
    let deep = write(dir.path(), "deep.json", &deep);
    assert_eq!(run(&["reduce", deep.to_str().unwrap()]).status.code(), Some(3));
    let far = write(dir.path(), "far.json", r#"{"source":["Q"],"target":["Q"],"N":2,"entries":[[["0","0","0","1"]]]}"#);
    let o = run(&["reduce", far.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("I.a k=3"));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(1));
    let sqrt = write(dir.path(), "s.json", r#"{"source":["Q"],"target":["Q"],"N":4,"entries":[[["0","sqrt(2)"]]]}"#);
    assert_eq!(run(&["reduce", sqrt.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["reduce", sqrt.to_str().unwrap(), "--field", "sqrt2"]).status.code(), Some(0));
}

#[test]
fn inspect_reports() {
    let dir = tempfile::tempdir().unwrap();
    let six = RepQ::schurian_six();
    let o = run(&["inspect", module(dir.path(), "s.json", &six[0].1).to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.contains("dimension vector (1,0)") && text.contains("Schurian: yes") && text.contains("End = C"), "{text}");
    let o = run(&["inspect", module(dir.path(), "c1.json", &six[4].1).to_str().unwrap()]);
    assert!(stdout(&o).contains("top = T^2, not absolutely cyclic"));
    let mut broken = six[2].1.clone();
    broken.x1 = gelfand_lab::matrix::Matrix::from_i64(&[&[1]]);
    let o = run(&["inspect", module(dir.path(), "bad.json", &broken).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("relation"));
}

#[test]
fn module_commands() {
    let dir = tempfile::tempdir().unwrap();
    let six = RepQ::schurian_six();
    let b1 = module(dir.path(), "b1.json", &six[2].1);
    let b2 = module(dir.path(), "b2.json", &six[3].1);
    let dual = dir.path().join("d.json");
    assert_eq!(run(&["dual", b1.to_str().unwrap(), "--out", dual.to_str().unwrap()]).status.code(), Some(0));
    let o = run(&["iso", dual.to_str().unwrap(), b2.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("isomorphic"));
    let o = run(&["iso", b1.to_str().unwrap(), b2.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("not isomorphic"));
    let o = run(&["hom", b1.to_str().unwrap(), b1.to_str().unwrap()]);
    assert!(stdout(&o).contains("dim Hom = 1"));
    let q = write(dir.path(), "q.json", r#"{"source":["Q"],"target":["Q"],"N":4,"entries":[[["0","1"]]]}"#);
    let o = run(&["coker", q.to_str().unwrap()]);
    let m = gelfand_lab::io::repq_from_json(&stdout(&o)).unwrap();
    assert_eq!(m.dim_vector(), (1, 1));
    let o = run(&["crossed", "--n-trunc", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"dim\":72"), "{}", stdout(&o));
}

#[test]
fn verify_is_reproducible() {
    let a = run(&["verify", "--suite", "schurian"]);
    let b = run(&["verify", "--suite", "schurian"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("suite schurian seed 0 N 8"));
    let c = Command::new(env!("CARGO_BIN_EXE_gelfand-lab")).args(["verify", "--suite", "algebra"]).env("GELFAND_LAB_N", "3").output().unwrap();
    assert!(stdout(&c).starts_with("suite algebra seed 0 N 3"));
}
