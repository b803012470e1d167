use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_gsio");

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn gsio(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn diag(f: &str, psi: &str) -> String {
    format!(r#"{{"entries": [[{f}, {{"laurent": []}}], [{{"laurent": []}}, {psi}]]}}"#)
}

fn mono(k: i64) -> String {
    format!(r#"{{"laurent": [[{k}, 1, 0]]}}"#)
}

#[test]
fn index_of_powers() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "h.json", &diag(&mono(2), &mono(3)));
    let o = gsio(&["index", "--symbol", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "index=1");
}

#[test]
fn verdict_for_vanishing_symbol() {
    let dir = tempfile::tempdir().unwrap();
    let f = r#"{"laurent": [[1, 1, 0], [0, -1, 0]]}"#;
    let p = write(dir.path(), "h.json", &diag(f, &mono(0)));
    let o = gsio(&["verdict", "--symbol", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "not_fredholm reason=f_vanishes_on_circle");
}

#[test]
fn verdict_for_shift() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "h.json", &diag(&mono(1), &mono(0)));
    let o = gsio(&["verdict", "--symbol", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("fredholm index=-1 dim_ker=0 dim_coker=1"), "{out}");
}

#[test]
fn parse_error_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "h.json", "{\"entries\": [[1, 2]");
    let o = gsio(&["index", "--symbol", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error reason=parse_error"), "{}", stderr(&o));
}

#[test]
fn bad_denominator_abstains() {
    let dir = tempfile::tempdir().unwrap();
    let psi = r#"{"type": "rational", "num": {"laurent": [[0, 1, 0]]}, "den": {"laurent": [[1, 1, 0], [0, -1, 0]]}}"#;
    let p = write(dir.path(), "h.json", &diag(&mono(1), psi));
    let o = gsio(&["index", "--symbol", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error reason=not_invertible_on_circle"));
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "h.json", &diag(&mono(0), &mono(0)));
    let s = p.to_str().unwrap();
    assert_eq!(gsio(&["spectrum", "--symbol", s, "--order", "2"]).status.code(), Some(1));
    assert_eq!(gsio(&["rho", "--symbol", s, "--radii", "0.5,1.5"]).status.code(), Some(1));
    assert_eq!(gsio(&["rho", "--symbol", s, "--grid", "8"]).status.code(), Some(1));
    assert_eq!(gsio(&["nonsense"]).status.code(), Some(1));
    assert_eq!(gsio(&["index"]).status.code(), Some(1));
    assert_eq!(gsio(&["--help"]).status.code(), Some(0));
}

#[test]
fn outputs_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let f = r#"{"laurent": [[1, 1, 0], [-1, 0.25, 0.5]]}"#;
    let p = write(dir.path(), "h.json", &diag(f, &mono(-1)));
    let s = p.to_str().unwrap();
    for cmd in ["spectrum", "assemble", "berezin"] {
        let a = gsio(&[cmd, "--symbol", s, "--order", "16", "--grid", "16"]);
        let b = gsio(&[cmd, "--symbol", s, "--order", "16", "--grid", "16"]);
        assert_eq!(a.status.code(), Some(0), "{cmd}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn assemble_identity() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "h.json", &diag(&mono(0), &mono(0)));
    let out = dir.path().join("s.csv");
    let o = gsio(&["assemble", "--symbol", p.to_str().unwrap(), "--order", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "row_mode,col_mode,re,im");
    assert_eq!(lines.len(), 9);
    assert!(lines[1..].iter().all(|l| {
        let c: Vec<&str> = l.split(',').collect();
        c[0] == c[1] && c[2] == "1" && c[3] == "0"
    }));
}

#[test]
fn assemble_binary_size() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "h.json", &diag(&mono(1), &mono(0)));
    let out = dir.path().join("s.bin");
    let o = gsio(&["assemble", "--symbol", p.to_str().unwrap(), "--order", "4", "--format", "bin", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::metadata(out).unwrap().len(), 8 * 8 * 16);
}

#[test]
fn factorize_scalar_json() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "f.json", r#"{"laurent": [[2, 1, 0], [-1, 0.1, 0]]}"#);
    let out = dir.path().join("w.json");
    let o = gsio(&["factorize", "--symbol", p.to_str().unwrap(), "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("kappa=2 "));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["kappa"], serde_json::json!([2]));
    assert!(v["reconstruction_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn factorize_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "h.json", &diag(&mono(2), &mono(-1)));
    let o = gsio(&["factorize", "--symbol", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("kappa=2,-1 "), "{}", stdout(&o));
}

#[test]
fn classify_identity() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "h.json", &diag(&mono(0), &mono(0)));
    let o = gsio(&["classify", "--symbol", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("self_adjoint=true"), "{out}");
    assert!(out.contains("zero=false"), "{out}");
}

#[test]
fn rho_recovers_constant() {
    let dir = tempfile::tempdir().unwrap();
    let c = r#"{"laurent": [[0, 2, 1]]}"#;
    let p = write(dir.path(), "h.json", &diag(c, c));
    let o = gsio(&["rho", "--symbol", p.to_str().unwrap(), "--grid", "16"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 17);
    for line in out.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((v[1] - 2.0).abs() < 1e-9 && (v[2] - 1.0).abs() < 1e-9, "{line}");
    }
}
