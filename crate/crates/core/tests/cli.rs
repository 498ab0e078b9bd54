use std::process::Command;

use structured_lbfgs::bench::io::{read_profile, read_results_file};
use structured_lbfgs::Status;

fn bench() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bench"))
}

#[test]
fn run_then_profile() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().join("results.csv");
    let profile = dir.path().join("profile.csv");
    let traces = dir.path().join("traces");
    let status = bench()
        .args([
            "run",
            "--suite",
            "quadratic",
            "--alpha",
            "1e-5,1e-1",
            "--memory",
            "0,inf",
        ])
        .args([
            "--method",
            "rose-dg-full,rose-dg-upperz",
            "--repeats",
            "1",
            "--exact-seed",
        ])
        .arg("--out")
        .arg(&results)
        .arg("--trace-dir")
        .arg(&traces)
        .status()
        .unwrap();
    assert!(status.success());
    let cells = read_results_file(&results).unwrap();
    assert_eq!(cells.len(), 8);
    let full: Vec<usize> = cells
        .iter()
        .filter(|c| c.method == "rose-dg-full")
        .map(|c| c.iterations)
        .collect();
    assert_eq!(full, vec![2, 2, 3, 3]);
    assert!(cells.iter().all(|c| c.status == Status::GradientTol));
    assert_eq!(std::fs::read_dir(&traces).unwrap().count(), 8);

    let status = bench()
        .args(["profile", "--metric", "iterations", "--in"])
        .arg(&results)
        .arg("--out")
        .arg(&profile)
        .status()
        .unwrap();
    assert!(status.success());
    let curves = read_profile(std::fs::File::open(&profile).unwrap()).unwrap();
    assert_eq!(curves.len(), 4);
    let text = std::fs::read_to_string(&profile).unwrap();
    assert!(text.starts_with("method,tau,rho\n"));
}

#[test]
fn config_file_with_command_line_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("grid.cfg");
    let results = dir.path().join("results.csv");
    std::fs::write(
        &cfg,
        "# toy grid\nsuite = toy-nonconvex\nalpha = 1e-2\nmemory = 3,5\nmethod = rose-dg-full\nes = true\nrepeats = 1\n",
    )
    .unwrap();
    let status = bench()
        .arg("run")
        .arg("--config")
        .arg(&cfg)
        .args(["--memory", "5", "--dim", "16"])
        .arg("--out")
        .arg(&results)
        .status()
        .unwrap();
    assert!(status.success());
    let cells = read_results_file(&results).unwrap();
    assert_eq!(cells.len(), 1);
    assert_eq!(cells[0].memory, Some(5));
    assert!(cells[0].inner_iters_total > 0);
    assert!(cells[0].solved());
}

#[test]
fn errors_give_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let missing = bench()
        .args(["profile", "--in", "/nonexistent/results.csv", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(!missing.success());
    let bad_method = bench()
        .args(["run", "--method", "newton", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(!bad_method.success());
    let bad_flag = bench().args(["run", "--bogus"]).status().unwrap();
    assert!(!bad_flag.success());
}
