//! CLI surface tests: flags, artefacts, and exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eulerlab"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eulerlab-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no exit code")
}

#[test]
fn run_writes_csv_report_and_plot() {
    let dir = tmp_dir("run");
    let out = bin()
        .args(["run", "--case", "sod", "--scheme", "hll", "--cells", "50", "--cfl", "0.9", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let csv = fs::read_to_string(dir.join("solution.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "x,rho,u,p,rho_exact,u_exact,p_exact");
    assert_eq!(lines.len(), 51);

    let report = fs::read_to_string(dir.join("report.json")).unwrap();
    assert!(report.contains("\"scheme\": \"hll\""));
    assert!(report.contains("\"n_cells\": 50"));

    let svg = fs::read_to_string(dir.join("plot.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn unknown_scheme_is_a_usage_error() {
    let out = bin()
        .args(["run", "--case", "sod", "--scheme", "roe", "--cells", "50", "--cfl", "0.9"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_case_is_a_usage_error() {
    let out = bin()
        .args(["run", "--case", "nosuch", "--scheme", "hll", "--cells", "50", "--cfl", "0.9"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown case"));
}

#[test]
fn rcm_with_large_cfl_is_a_usage_error() {
    let out = bin()
        .args(["run", "--case", "sod", "--scheme", "rcm", "--cells", "50", "--cfl", "0.9"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn vacuum_case_file_is_a_numerical_failure() {
    let dir = tmp_dir("vacuum");
    let case = r#"{
        "name": "vacuum_pull",
        "initial": {
            "kind": "diaphragm",
            "left": {"rho": 1.0, "u": -100.0, "p": 0.4},
            "right": {"rho": 1.0, "u": 100.0, "p": 0.4},
            "x0": 0.5
        },
        "x_left": 0.0, "x_right": 1.0,
        "t_end": 0.1, "gamma": 1.4,
        "bc_left": "transmissive", "bc_right": "transmissive"
    }"#;
    let path = dir.join("vacuum.json");
    fs::write(&path, case).unwrap();
    let out = bin()
        .args(["run", "--case"])
        .arg(&path)
        .args(["--scheme", "godunov-exact", "--cells", "50", "--cfl", "0.9", "--out"])
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 1, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vacuum"));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn case_files_run_like_builtins() {
    let dir = tmp_dir("casefile");
    let case = r#"{
        "name": "mini_tube",
        "initial": {
            "kind": "diaphragm",
            "left": {"rho": 1.0, "u": 0.0, "p": 1.0},
            "right": {"rho": 0.5, "u": 0.0, "p": 0.5},
            "x0": 0.5
        },
        "x_left": 0.0, "x_right": 1.0,
        "t_end": 0.1, "gamma": 1.4,
        "bc_left": "transmissive", "bc_right": "transmissive"
    }"#;
    let path = dir.join("mini.json");
    fs::write(&path, case).unwrap();
    let out = bin()
        .args(["run", "--case"])
        .arg(&path)
        .args(["--scheme", "godunov-exact", "--cells", "40", "--cfl", "0.9", "--out"])
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("mini_tube"));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn out_dir_env_var_is_the_default() {
    let dir = tmp_dir("envvar");
    let out = bin()
        .args(["run", "--case", "sod", "--scheme", "hll", "--cells", "40", "--cfl", "0.9"])
        .env("EULERLAB_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(dir.join("solution.csv").exists());
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn list_commands_enumerate_cases_and_schemes() {
    let out = bin().arg("list-cases").output().unwrap();
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["sod", "rar123", "blast_left", "contact", "smooth_advect"] {
        assert!(text.contains(name), "missing case {name}");
    }

    let out = bin().arg("list-schemes").output().unwrap();
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    for name in [
        "godunov-exact",
        "godunov-linearised",
        "hll",
        "lax-friedrichs",
        "lax-wendroff",
        "ader2",
        "rcm",
    ] {
        assert!(text.contains(name), "missing scheme {name}");
    }
}

#[test]
fn convergence_prints_orders() {
    let out = bin()
        .args([
            "convergence",
            "--case",
            "smooth_advect",
            "--scheme",
            "godunov-exact",
            "--base-cells",
            "25",
            "--levels",
            "2",
            "--cfl",
            "0.9",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("order"));
    assert!(text.contains("50"));
}

#[test]
fn rcm_convergence_is_rejected() {
    let out = bin()
        .args([
            "convergence",
            "--case",
            "smooth_advect",
            "--scheme",
            "rcm",
            "--base-cells",
            "25",
            "--levels",
            "2",
            "--cfl",
            "0.4",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}
