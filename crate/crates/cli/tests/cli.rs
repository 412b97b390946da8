use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use unitary_birkhoff::io::{matrix_from_json, matrix_to_json, report_from_json, weights_from_json, weights_to_json};
use unitary_birkhoff::{decompose, golden, random_xu, verify, StrategyChoice, Tolerance};

fn birkhoff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_birkhoff"))
        .args(args)
        .env_remove("BIRKHOFF_TOL")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn even_only_on_reference_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", &matrix_to_json(&golden::phased_fourier4()));
    let out = birkhoff(&["decompose", "--in", s(&x), "--strategy", "even-only"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let w = weights_from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let (even, odd) = golden::split_by_parity(&w);
    assert!(odd.iter().all(|c| c.norm() == 0.0));
    assert!(golden::match_multiset(&even, &golden::phased_fourier4_expected(), 1e-9));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reconstruction"));
}

#[test]
fn every_strategy_runs() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", &matrix_to_json(random_xu(4, 2).matrix()));
    for strategy in ["general", "canonical-tau", "even-only", "even-odd-split"] {
        let out = birkhoff(&["decompose", "--in", s(&x), "--strategy", strategy, "--seed", "5"]);
        assert_eq!(out.status.code(), Some(0), "{strategy}");
    }
    let out = birkhoff(&["decompose", "--in", s(&x), "--strategy", "canonical-tau", "--tau", "[2,1,4,3]"]);
    assert_eq!(out.status.code(), Some(0));
    let w = weights_from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(w.strategy().tau().unwrap().to_string(), "[2,1,4,3]");
}

#[test]
fn non_unitary_input_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.csv", "1,1\n0,1\n");
    let out = birkhoff(&["decompose", "--in", s(&x)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unitarity residual"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(birkhoff(&["decompose", "--bogus"]).status.code(), Some(2));
    assert_eq!(birkhoff(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(birkhoff(&["irrep-table", "--n", "9"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", &matrix_to_json(random_xu(4, 2).matrix()));
    let out = birkhoff(&["decompose", "--in", s(&x), "--strategy", "even-only", "--tau", "[2,1,3,4]"]);
    assert_eq!(out.status.code(), Some(2));
    let small = write(dir.path(), "s.json", &matrix_to_json(random_xu(3, 2).matrix()));
    assert_eq!(birkhoff(&["decompose", "--in", s(&small), "--strategy", "even-only"]).status.code(), Some(2));
}

#[test]
fn tampered_weights_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let xm = random_xu(4, 11);
    let x = write(dir.path(), "x.json", &matrix_to_json(xm.matrix()));
    let mut w = decompose(xm.matrix(), &StrategyChoice::EvenOddSplit, Tolerance::default()).unwrap();
    let good = write(dir.path(), "good.json", &weights_to_json(&w));
    assert_eq!(birkhoff(&["verify", "--weights", s(&good), "--matrix", s(&x)]).status.code(), Some(0));
    w.weights_mut()[3] += 1e-6;
    let bad = write(dir.path(), "bad.json", &weights_to_json(&w));
    let out = birkhoff(&["verify", "--weights", s(&bad), "--matrix", s(&x)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    // a loose enough tolerance accepts the perturbation
    let out = Command::new(env!("CARGO_BIN_EXE_birkhoff"))
        .args(["verify", "--weights", s(&bad), "--matrix", s(&x)])
        .env("BIRKHOFF_TOL", "1e-3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let a = birkhoff(&["random-xu", "--n", "5", "--seed", "42"]);
    let b = birkhoff(&["random-xu", "--n", "5", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let m = matrix_from_json(&String::from_utf8(a.stdout).unwrap()).unwrap();
    assert_eq!(&m, random_xu(5, 42).matrix());

    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", &matrix_to_json(&m));
    let run = || birkhoff(&["decompose", "--in", s(&x), "--strategy", "general", "--seed", "9"]).stdout;
    assert_eq!(run(), run());
}

#[test]
fn file_round_trip_matches_in_memory_report() {
    let dir = tempfile::tempdir().unwrap();
    let m = random_xu(5, 3);
    let x = write(dir.path(), "x.json", &matrix_to_json(m.matrix()));
    let wpath = dir.path().join("w.json");
    let rpath = dir.path().join("r.json");
    let out = birkhoff(&["decompose", "--in", s(&x), "--strategy", "even-odd-split", "--out", s(&wpath)]);
    assert_eq!(out.status.code(), Some(0));
    let out = birkhoff(&["verify", "--weights", s(&wpath), "--matrix", s(&x), "--out", s(&rpath)]);
    assert_eq!(out.status.code(), Some(0));

    let w = decompose(m.matrix(), &StrategyChoice::EvenOddSplit, Tolerance::default()).unwrap();
    let expected = verify(&w, m.matrix(), Tolerance::default()).residuals();
    let from_file = report_from_json(&std::fs::read_to_string(&rpath).unwrap()).unwrap();
    assert_eq!(from_file, expected);
    assert_eq!(weights_from_json(&std::fs::read_to_string(&wpath).unwrap()).unwrap().weights(), w.weights());
}

#[test]
fn embed_classify_and_tables() {
    let dir = tempfile::tempdir().unwrap();
    let u = write(dir.path(), "u.csv", "0,1\n1,0\n");
    let xpath = dir.path().join("x.csv");
    assert_eq!(birkhoff(&["embed", "--in", s(&u), "--out", s(&xpath)]).status.code(), Some(0));
    let out = birkhoff(&["classify", "--in", s(&xpath)]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("both permutation="), "{text}");

    let out = birkhoff(&["irrep-table", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 6);
    let out = birkhoff(&["irrep-table", "--n", "3", "--format", "json"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"characters\""));

    let out = birkhoff(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}
