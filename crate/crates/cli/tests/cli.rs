use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;
use spinlab_cli::{run, CommandResult, EXIT_CERTIFICATION, EXIT_VALIDATION};

fn spinlab(args: &[&str]) -> CommandResult {
    let out = Command::new(env!("CARGO_BIN_EXE_spinlab"))
        .args(args)
        .env_remove("SPINLAB_TOL")
        .output()
        .expect("binary runs");
    CommandResult {
        exit_code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_file(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn build_tetrahedral_six() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t6.json");
    let r = spinlab(&["build", "--family", "tetrahedral", "--spin", "6", "--out", path_str(&out)]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.trim(), "family=binary_tetrahedral s=6 candidates=2 dim=2 order=2");
    let v = json_file(&out);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["certified_order"], 2);
    assert_eq!(v["subspace"]["doubled_spin"], 12);
}

#[test]
fn build_empty_dihedral_is_not_an_error() {
    let r = spinlab(&["build", "--family", "dihedral", "--n", "2", "--spin", "1"]);
    assert_eq!(r.exit_code, 0);
    assert!(r.stderr.contains("dim=0"));
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["dim"], 0);
    assert!(v["subspace"].is_null());
}

#[test]
fn build_icosahedral_thirty() {
    let r = spinlab(&["build", "--family", "icosahedral", "--spin", "30"]);
    assert_eq!(r.exit_code, 0);
    assert!(r.stderr.contains("dim=2 order=5"), "{}", r.stderr);
}

#[test]
fn validation_errors_exit_two() {
    for args in [
        &["build", "--family", "dodecahedral", "--spin", "6"][..],
        &["build", "--family", "tetrahedral", "--spin", "6/4"],
        &["build", "--family", "dihedral", "--spin", "2"],
        &["build", "--family", "tetrahedral", "--spin", "6", "--tol", "2"],
        &["scan", "--family", "octahedral", "--spin-min", "5", "--spin-max", "2"],
        &["range", "--spin", "x"],
        &["range", "--spin", "1", "--count", "0"],
        &["majorana"],
        &["frobnicate"],
    ] {
        let r = spinlab(args);
        assert_eq!(r.exit_code, EXIT_VALIDATION, "{args:?}: {}", r.stderr);
    }
}

#[test]
fn check_states() {
    let dir = tempfile::tempdir().unwrap();
    let mid = dir.path().join("m0.json");
    fs::write(&mid, r#"{"doubled_spin":2,"amps":[[0,0],[1,0],[0,0]]}"#).unwrap();
    let r = spinlab(&["check", path_str(&mid)]);
    assert_eq!(r.exit_code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["order"], 1);
    assert_eq!(v["design"]["order"], 1);
    assert_eq!(v["points"].as_array().unwrap().len(), 2);

    let octa = dir.path().join("octa.json");
    let r = std::f64::consts::FRAC_1_SQRT_2;
    fs::write(
        &octa,
        format!(r#"{{"doubled_spin":6,"amps":[[0,0],[{m},0],[0,0],[0,0],[0,0],[{r},0],[0,0]]}}"#, m = -r),
    )
    .unwrap();
    let out = spinlab(&["check", path_str(&octa)]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["order"], 3);
    assert_eq!(v["design"]["order"], 3);
}

#[test]
fn build_then_check_reproduces_order() {
    let dir = tempfile::tempdir().unwrap();
    for (family, spin) in [("tetrahedral", "6"), ("octahedral", "12"), ("dihedral", "2")] {
        let out = dir.path().join(format!("{family}.json"));
        let mut args = vec!["build", "--family", family, "--spin", spin, "--out", path_str(&out)];
        if family == "dihedral" {
            args.extend(["--n", "2"]);
        }
        assert_eq!(spinlab(&args).exit_code, 0);
        let built = json_file(&out)["certified_order"].as_u64().unwrap();
        let r = spinlab(&["check", path_str(&out)]);
        let checked: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(checked["order"].as_u64().unwrap(), built, "{family}");
        assert_eq!(checked["kind"], "subspace");
    }
}

#[test]
fn check_demands_order() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t6.json");
    spinlab(&["build", "--family", "tetrahedral", "--spin", "6", "--out", path_str(&out)]);
    assert_eq!(spinlab(&["check", path_str(&out), "--require-order", "2"]).exit_code, 0);
    let r = spinlab(&["check", path_str(&out), "--require-order", "3"]);
    assert_eq!(r.exit_code, EXIT_CERTIFICATION);
    assert!(!r.stdout.is_empty());
}

#[test]
fn check_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    for text in ["{", r#"{"doubled_spin":2,"amps":[[1,0]]}"#, r#"{"hello":1}"#] {
        fs::write(&bad, text).unwrap();
        assert_eq!(spinlab(&["check", path_str(&bad)]).exit_code, EXIT_VALIDATION, "{text}");
    }
    assert_eq!(spinlab(&["check", "/nonexistent/file.json"]).exit_code, EXIT_VALIDATION);
}

#[test]
fn scan_tables() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("oct.csv");
    let r = spinlab(&[
        "scan", "--family", "octahedral", "--spin-min", "1", "--spin-max", "30", "--csv-out", path_str(&csv_path),
    ]);
    assert_eq!(r.exit_code, 0);
    let mut rdr = csv::Reader::from_path(&csv_path).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["family", "s", "candidates", "dim", "order"]);
    let nontrivial: Vec<String> = rdr
        .records()
        .map(|r| r.unwrap())
        .filter(|r| r[3].parse::<usize>().unwrap() >= 2)
        .map(|r| r[1].to_string())
        .collect();
    let want: Vec<String> = [12, 16, 18, 20, 21, 22, 24, 25, 26, 27, 28, 29, 30].iter().map(|s| s.to_string()).collect();
    assert_eq!(nontrivial, want);
    assert!(r.stdout.contains("nontrivial=13"));

    let r = spinlab(&["scan", "--family", "dihedral", "--n", "2", "--spin-min", "1", "--spin-max", "5"]);
    let dims: Vec<(String, String)> = csv::Reader::from_reader(r.stdout.as_bytes())
        .records()
        .map(|r| r.unwrap())
        .map(|r| (r[1].to_string(), r[3].to_string()))
        .filter(|(s, _)| !s.contains('/'))
        .collect();
    assert_eq!(dims[0], ("1".into(), "0".into()));
    assert_eq!(dims[1], ("2".into(), "2".into()));
    assert_eq!(dims[2], ("3".into(), "1".into()));
    assert!(dims[3].1.parse::<usize>().unwrap() >= 2);
}

#[test]
fn majorana_conversions() {
    let dir = tempfile::tempdir().unwrap();
    let coherent = dir.path().join("coherent.json");
    fs::write(&coherent, r#"{"doubled_spin":3,"amps":[[1,0],[0,0],[0,0],[0,0]]}"#).unwrap();
    let csv_path = dir.path().join("pts.csv");
    let r = spinlab(&["majorana", "--state", path_str(&coherent), "--out", path_str(&csv_path)]);
    assert_eq!(r.exit_code, 0);
    let rows: Vec<csv::StringRecord> = csv::Reader::from_path(&csv_path).unwrap().records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.windows(2).all(|w| w[0] == w[1]));

    let octa = dir.path().join("octa.json");
    fs::write(&octa, r#"{"points":[[1,0,0],[-1,0,0],[0,1,0],[0,-1,0],[0,0,1],[0,0,-1]]}"#).unwrap();
    let state_path = dir.path().join("state.json");
    let r = spinlab(&["majorana", "--points", path_str(&octa), "--spin", "3", "--out", path_str(&state_path)]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    let v = json_file(&state_path);
    assert_eq!(v["doubled_spin"], 6);
    let amps: Vec<[f64; 2]> = serde_json::from_value(v["amps"].clone()).unwrap();
    // ∝ |3,2⟩ − |3,−2⟩ up to phase; the other amplitudes vanish.
    let (a, b) = (amps[1], amps[5]);
    assert!((a[0] * a[0] + a[1] * a[1] - 0.5).abs() < 1e-12);
    assert!((a[0] + b[0]).abs() < 1e-12 && (a[1] + b[1]).abs() < 1e-12);
    for k in [0, 2, 3, 4, 6] {
        assert!(amps[k][0].abs() + amps[k][1].abs() < 1e-12);
    }

    let wrong = spinlab(&["majorana", "--points", path_str(&octa), "--spin", "2"]);
    assert_eq!(wrong.exit_code, EXIT_VALIDATION);
}

#[test]
fn majorana_roundtrip_file() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("s.json");
    fs::write(&state, r#"{"doubled_spin":4,"amps":[[0.1,0.2],[0.3,-0.1],[0.5,0],[-0.2,0.4],[0.1,0.6]]}"#).unwrap();
    let pts = dir.path().join("p.json");
    let back = dir.path().join("b.json");
    assert_eq!(spinlab(&["majorana", "--state", path_str(&state), "--out", path_str(&pts)]).exit_code, 0);
    assert_eq!(spinlab(&["majorana", "--points", path_str(&pts), "--out", path_str(&back)]).exit_code, 0);
    let amps = |p: &Path| -> Vec<[f64; 2]> { serde_json::from_value(json_file(p)["amps"].clone()).unwrap() };
    let (a, b) = (amps(&state), amps(&back));
    let na: f64 = a.iter().map(|z| z[0] * z[0] + z[1] * z[1]).sum();
    let (mut re, mut im) = (0.0, 0.0);
    for (x, y) in a.iter().zip(&b) {
        re += x[0] * y[0] + x[1] * y[1];
        im += x[0] * y[1] - x[1] * y[0];
    }
    let fidelity = (re * re + im * im) / na;
    assert!((fidelity - 1.0).abs() < 1e-10);
}

fn csv_norms(path: &Path) -> Vec<f64> {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["sx", "sy", "sz"]);
    rdr.records()
        .map(|r| {
            let r = r.unwrap();
            (0..3).map(|i| r[i].parse::<f64>().unwrap().powi(2)).sum::<f64>().sqrt()
        })
        .collect()
}

#[test]
fn range_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let half = dir.path().join("half.csv");
    let r = spinlab(&["range", "--spin", "1/2", "--count", "1000", "--seed", "3", "--csv-out", path_str(&half)]);
    assert_eq!(r.exit_code, 0);
    let norms = csv_norms(&half);
    assert_eq!(norms.len(), 1000);
    assert!(norms.iter().all(|n| (n - 0.5).abs() < 1e-9));

    let one = dir.path().join("one.csv");
    let r = spinlab(&["range", "--spin", "1", "--count", "100000", "--seed", "3", "--csv-out", path_str(&one)]);
    let max: f64 = r.stdout.trim().strip_prefix("max_norm=").unwrap().parse().unwrap();
    assert!(max <= 1.0 + 1e-9);
    let norms = csv_norms(&one);
    assert!(norms.iter().all(|n| *n <= 1.0 + 1e-9));
    assert!(norms.iter().any(|n| *n < 0.5));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        spinlab(&["range", "--spin", "2", "--count", "500", "--seed", "11", "--csv-out", path_str(p)]);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let first = run(["spinlab", "build", "--family", "octahedral", "--spin", "12"]);
    let second = run(["spinlab", "build", "--family", "octahedral", "--spin", "12"]);
    assert_eq!(first, second);
}

#[test]
fn tolerance_comes_from_environment() {
    let via = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_spinlab"));
        cmd.args(["build", "--family", "icosahedral", "--spin", "30"]).env_remove("SPINLAB_TOL");
        if let Some(t) = env {
            cmd.env("SPINLAB_TOL", t);
        }
        if let Some(t) = flag {
            cmd.args(["--tol", t]);
        }
        let out = cmd.output().unwrap();
        (out.status.code(), String::from_utf8(out.stderr).unwrap())
    };
    let from_env = via(Some("0.8"), None);
    assert_eq!(from_env, via(None, Some("0.8")));
    assert!(from_env.1.contains("dim=1"), "{}", from_env.1);
    assert!(via(None, None).1.contains("dim=2"));
    assert_eq!(via(Some("not-a-number"), None).0, Some(EXIT_VALIDATION));
}

#[test]
fn help_is_success() {
    let r = run(["spinlab", "--help"]);
    assert_eq!(r.exit_code, 0);
    assert!(r.stdout.contains("build"));
}
