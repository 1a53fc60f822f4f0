use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bogoliubov_cli::formfile::FormFile;
use bogoliubov_core::BcsParams;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bogoliubov"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn pairing_file(dir: &Path, delta: f64) -> PathBuf {
    let path = dir.join(format!("pairing_{delta}.json"));
    let p = BcsParams::new(1.0, 0.3, delta, 0.0).unwrap();
    std::fs::write(&path, FormFile::pairing(&p).to_json()).unwrap();
    path
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn analyze_positive_definite() {
    let dir = TempDir::new().unwrap();
    let f = pairing_file(dir.path(), 0.5);
    let o = run(&["analyze", "--input", f.to_str().unwrap(), "--emit-modes"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&stdout(&o));
    assert_eq!(v["classification"], "PositiveDefinite");
    let l0 = v["modes"][0]["lambda"][0].as_f64().unwrap();
    let l1 = v["modes"][1]["lambda"][0].as_f64().unwrap();
    let alpha = 0.75f64.sqrt();
    assert!((l0 - (alpha - 0.3)).abs() < 1e-12 && (l1 - (alpha + 0.3)).abs() < 1e-12);
    assert_eq!(v["modes"][0]["hermitian"], true);
    assert!(v["thresholds"]["positivity"].as_f64().unwrap() > 0.95);
    assert_eq!(v["normal_modes"]["invariants"].as_array().unwrap().len(), 2);
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn analyze_jordan_point_warns() {
    let dir = TempDir::new().unwrap();
    let f = pairing_file(dir.path(), 1.0);
    let o = run(&["analyze", "--input", f.to_str().unwrap()]);
    assert!(o.status.success());
    let v = json(&stdout(&o));
    assert_eq!(v["classification"], "NonDiagonalizable");
    let warnings: Vec<&str> = v["warnings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_str().unwrap())
        .collect();
    assert!(warnings.contains(&"eigenvalues all real and non-zero; Jordan blocks detected"));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = pairing_file(dir.path(), 1.2);
    let a = run(&["analyze", "--input", f.to_str().unwrap(), "--emit-modes"]);
    let b = run(&["analyze", "--input", f.to_str().unwrap(), "--emit-modes"]);
    assert_eq!(a.stdout, b.stdout);
    let s1 = run(&["sweep", "--param", "delta", "--range", "0.85:1.1:60", "--kappa", "0.05", "--jobs", "1"]);
    let s4 = run(&["sweep", "--param", "delta", "--range", "0.85:1.1:60", "--kappa", "0.05", "--jobs", "4"]);
    assert!(s1.status.success());
    assert_eq!(s1.stdout, s4.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.csv");
    let o = run(&["bcs", "--delta", "1.2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let (header, rows) = csv_rows(&std::fs::read_to_string(out).unwrap());
    assert_eq!(header[0], "delta");
    assert_eq!(rows[0][2], "UnstableComplex");
    let im: f64 = rows[0][4].parse().unwrap();
    assert!((im - 0.44f64.sqrt()).abs() < 1e-12);
}

#[test]
fn parse_errors() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    let o = run(&["analyze", "--input", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n_modes\": 1,\n \"A\": [[[1, 0]]],\n \"B\": [[[0, 0]]],\n \"C\": 1}").unwrap();
    let o = run(&["analyze", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));

    let missing = run(&["analyze", "--input", dir.path().join("nope").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn structure_violation_quotes_norms() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("asym.json");
    std::fs::write(
        &f,
        r#"{"n_modes": 2, "A": [[[1, 0], [0.5, 0]], [[0, 0], [1, 0]]], "B": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]}"#,
    )
    .unwrap();
    let o = run(&["analyze", "--input", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("‖A‖ ="), "{}", stderr(&o));
}

#[test]
fn sweep_regimes() {
    let o = run(&["sweep", "--param", "delta", "--range", "0:1.5:301"]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(
        header,
        ["epsilon", "gamma", "delta", "kappa", "code", "classification", "max_im", "min_sigma"]
    );
    assert_eq!(rows.len(), 301);
    let codes: Vec<u8> = rows.iter().map(|r| r[4].parse().unwrap()).collect();
    let changes: Vec<f64> = (1..rows.len())
        .filter(|&k| codes[k] != codes[k - 1])
        .map(|k| rows[k][2].parse().unwrap())
        .collect();
    assert!((changes[0] - 0.91f64.sqrt()).abs() <= 0.005);
    assert!(changes[1..].iter().all(|d| (d - 1.0).abs() <= 0.005));

    let doc = run(&["sweep", "--param", "delta", "--range", "0.85:1.1:251", "--kappa", "0.05", "--format", "doc"]);
    let v = json(&stdout(&doc));
    assert!(v["thresholds"]["outer_numeric"].as_f64().is_some());
    assert!(v["thresholds"]["note"].as_str().unwrap().contains("literal"));

    let two = run(&["sweep", "--param", "delta", "--range", "0.8:1.2:5", "--param2", "kappa", "--range2", "0:0.1:3"]);
    assert!(two.status.success());
    assert_eq!(csv_rows(&stdout(&two)).1.len(), 15);
}

#[test]
fn bad_ranges() {
    for r in ["1:1:10", "0:1:1", "0:1", "a:b:c"] {
        let o = run(&["sweep", "--param", "delta", "--range", r]);
        assert_eq!(o.status.code(), Some(6), "{r}");
    }
    let o = run(&["sweep", "--param", "epsilon", "--range", "0:1:3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn evolve_traces() {
    let dir = TempDir::new().unwrap();
    let stable = pairing_file(dir.path(), 0.97);
    let o = run(&["evolve", "--input", stable.to_str().unwrap(), "--t", "0:10:21"]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header.len(), 7);
    assert_eq!(rows[0][2..5], ["1.0", "0.0", "0.0"]);
    for r in &rows {
        let max_u: f64 = r[2].parse().unwrap();
        assert!(max_u < 50.0);
        assert!(r[3].parse::<f64>().unwrap() < 1e-9);
        assert!(r[4].parse::<f64>().unwrap() < 1e-9);
    }

    let unstable = pairing_file(dir.path(), 1.2);
    let o = run(&["evolve", "--input", unstable.to_str().unwrap(), "--t", "5:10:11"]);
    let (_, rows) = csv_rows(&stdout(&o));
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[2].parse::<f64>().unwrap().ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    assert!((slope / 0.44f64.sqrt() - 1.0).abs() < 0.01, "{slope}");

    let o = run(&["evolve", "--input", unstable.to_str().unwrap(), "--t", "1", "--complex-time", "1"]);
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows[0][1], "1.0");
    assert!(rows[0][4].parse::<f64>().unwrap() > 1e-2);

    let o = run(&["evolve", "--input", unstable.to_str().unwrap(), "--t", "400"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn oracle_table() {
    let dir = TempDir::new().unwrap();
    let f = pairing_file(dir.path(), 0.5);
    let o = run(&["oracle", "--input", f.to_str().unwrap(), "--nmax", "14", "--levels", "6"]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["level", "fock", "lattice", "deviation"]);
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r[3].parse::<f64>().unwrap() < 1e-3));

    let f = pairing_file(dir.path(), 0.97);
    let o = run(&["oracle", "--input", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(7));
}

#[test]
fn bcs_sweep_and_emitted_form() {
    let dir = TempDir::new().unwrap();
    let form = dir.path().join("form.json");
    let o = run(&["bcs", "--delta", "0.5", "--sweep", "0:1.5:31", "--emit-form", form.to_str().unwrap()]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header.len(), 12);
    assert_eq!(rows.len(), 31);
    let a = run(&["analyze", "--input", form.to_str().unwrap()]);
    assert_eq!(json(&stdout(&a))["classification"], "PositiveDefinite");
}

#[test]
fn help_lists_codes() {
    let o = run(&["--help"]);
    assert!(o.status.success());
    let h = stdout(&o);
    assert!(h.contains("3  NonDiagonalizable"));
    assert!(h.contains("7 wrong regime"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
