use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const MU: &str = r#"{"ac": {"kind": "constant", "value": 0.3989422804014327},
 "atoms": [{"x": 0.0, "mass": 2.5066282746310002}], "period": null}"#;

fn nlft(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlft")).args(args).current_dir(dir).output().unwrap()
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("mu.json"), MU).unwrap();
    fs::write(dir.path().join("pot.json"), r#"{"kind": "discrete", "spacing": 0.5, "masses": [1.0986, 0.6931, 0.5108]}"#)
        .unwrap();
    dir
}

fn rows(path: &Path) -> Vec<Vec<f64>> {
    let text = fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    text.lines().skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect()
}

#[test]
fn forward_grid() {
    let dir = setup();
    let out = nlft(&["forward", "--potential", "pot.json", "--grid-im", "1.0", "--grid-re", "-5:5:101", "--out", "fwd.csv"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("fwd.csv")).unwrap();
    assert!(text.starts_with("z_re,z_im,schur_re,schur_im,abs_a,abs_b\n"));
    let r = rows(&dir.path().join("fwd.csv"));
    assert_eq!(r.len(), 101);
    for row in r {
        assert!((row[4] * row[4] - row[5] * row[5]) > 0.0);
    }
}

#[test]
fn inverse_atom_plus_lebesgue_steps() {
    let dir = setup();
    let out = nlft(&["inverse", "--measure", "mu.json", "--T", "pi", "--N", "32", "--method", "toeplitz", "--out", "inv.csv"], dir.path());
    assert!(out.status.success());
    let r = rows(&dir.path().join("inv.csv"));
    assert_eq!(r.len(), 32);
    let s = (2.0 * std::f64::consts::PI).sqrt();
    let t = std::f64::consts::PI;
    for row in r {
        let n = row[0];
        let exact = s * t * t / ((n * t + t) * (n * t + t + t));
        assert!((row[2] / exact - 1.0).abs() < 1e-8);
    }
    let opuc = nlft(&["inverse", "--measure", "mu.json", "--T", "pi", "--N", "32", "--method", "opuc"], dir.path());
    assert!(opuc.status.success());
}

#[test]
fn figure1_writes_one_file_per_t() {
    let dir = setup();
    let out = nlft(&["figure1", "--measure", "mu.json", "--T-list", "pi,2pi,4pi,8pi", "--N", "64", "--out", "fig1/"], dir.path());
    assert!(out.status.success());
    for label in ["pi", "2pi", "4pi", "8pi"] {
        let r = rows(&dir.path().join(format!("fig1/T_{label}.csv")));
        assert_eq!(r.len(), 64);
    }
    let report = fs::read_to_string(dir.path().join("fig1/report.txt")).unwrap();
    assert!(report.contains("oracle:") && report.contains("alternative oracle:"));
}

#[test]
fn roundtrip_and_sweep() {
    let dir = setup();
    let out = nlft(&["roundtrip", "--measure", "mu.json", "--T", "pi", "--N", "200", "--out", "rt.csv"], dir.path());
    assert!(out.status.success());
    let worst = rows(&dir.path().join("rt.csv")).iter().map(|r| r[7]).fold(0.0, f64::max);
    assert!(worst < 1e-6);
    let out = nlft(&["sweep", "--measure", "mu.json", "--T-list", "pi,2pi", "--grid-re", "-1:1:3", "--grid-im", "1", "--out", "s.csv"], dir.path());
    assert!(out.status.success());
    assert_eq!(rows(&dir.path().join("s.csv")).len(), 6);
}

#[test]
fn periodize_writes_a_measure() {
    let dir = setup();
    let out = nlft(&["periodize", "--measure", "mu.json", "--T", "2", "--out", "p.json"], dir.path());
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("p.json")).unwrap();
    assert!(text.contains("\"period\": 4.0"));
}

#[test]
fn output_is_independent_of_thread_count() {
    let dir = setup();
    let mut outputs = Vec::new();
    for n in ["1", "4"] {
        let out = Command::new(env!("CARGO_BIN_EXE_nlft"))
            .args(["sweep", "--measure", "mu.json", "--T-list", "pi,2pi,8pi"])
            .env("NLFT_THREADS", n)
            .current_dir(dir.path())
            .output()
            .unwrap();
        assert!(out.status.success());
        outputs.push(out.stdout);
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn exit_codes() {
    let dir = setup();
    fs::write(dir.path().join("neg.json"), r#"{"ac": {"kind": "none"}, "atoms": [{"x": 0, "mass": -1}], "period": null}"#).unwrap();
    fs::write(dir.path().join("atom.json"), r#"{"ac": {"kind": "none"}, "atoms": [{"x": 0, "mass": 1}], "period": null}"#).unwrap();
    let code = |args: &[&str]| nlft(args, dir.path()).status.code();
    assert_eq!(code(&["inverse", "--measure", "missing.json", "--T", "1", "--N", "4"]), Some(1));
    assert_eq!(code(&["inverse", "--measure", "neg.json", "--T", "1", "--N", "4"]), Some(1));
    assert_eq!(code(&["inverse", "--measure", "mu.json", "--T", "-1", "--N", "4"]), Some(1));
    assert_eq!(code(&["inverse", "--measure", "mu.json", "--T", "1", "--N", "0"]), Some(1));
    assert_eq!(code(&["sweep", "--measure", "mu.json", "--T-list", "pi", "--tol", "2"]), Some(1));
    assert_eq!(code(&["frobnicate"]), Some(1));
    // A single atom has rank-one moments: J_1 is singular.
    let out = nlft(&["inverse", "--measure", "atom.json", "--T", "1", "--N", "4"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
    let out = Command::new(env!("CARGO_BIN_EXE_nlft"))
        .args(["periodize", "--measure", "mu.json", "--T", "1"])
        .env("NLFT_THREADS", "zero")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
