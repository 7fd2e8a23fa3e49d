use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qubit-thermo"))
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const GAD: &str = "\
# short GAD run
model = gad
omega0 = 1.5
beta = 1
gamma = 0.05
t_max = 10
n_samples = 11
";

#[test]
fn simulate_writes_csv_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "gad.cfg", GAD);
    let csv = dir.path().join("out.csv");
    let svg = dir.path().join("out.svg");
    let status = bin()
        .args([
            "simulate",
            cfg.to_str().unwrap(),
            "--csv",
            csv.to_str().unwrap(),
            "--plot",
            svg.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 12);
    roxmltree::Document::parse(&std::fs::read_to_string(&svg).unwrap()).unwrap();
}

#[test]
fn simulate_to_stdout_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "gad.cfg", GAD);
    let a = bin().args(["simulate", cfg.to_str().unwrap()]).output().unwrap();
    let b = bin().args(["simulate", cfg.to_str().unwrap()]).output().unwrap();
    assert!(a.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn quadrature_flag_is_applied() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "gad.cfg", GAD);
    let out = bin()
        .args(["simulate", cfg.to_str().unwrap(), "--quadrature", "16,32"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("# quadrature = 16x32"));
    let bad = bin()
        .args(["simulate", cfg.to_str().unwrap(), "--quadrature", "4,4"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn config_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(
        dir.path(),
        "bad.cfg",
        "model = collision\nomega_s = 1.5\nomega_r = 1\nbeta = 50\ng_sr = 0.5\ntau = 0.5\ntheta = 2.0\nn_collisions = 10\n",
    );
    let out = bin().args(["simulate", theta.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("theta out of range"));

    let unknown = write(dir.path(), "unknown.cfg", &format!("{GAD}colour = red\n"));
    let out = bin().args(["simulate", unknown.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let missing = dir.path().join("nope.cfg");
    let out = bin().args(["simulate", missing.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn numeric_errors_exit_2() {
    // Unwritable output location is an I/O failure, not a config error.
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "gad.cfg", GAD);
    let target = dir.path().join("missing-dir").join("out.csv");
    let out = bin()
        .args(["simulate", cfg.to_str().unwrap(), "--csv", target.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
