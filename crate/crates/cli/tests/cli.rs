use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pdc-zeno"));
    cmd.env_remove("PDC_ZENO_OUT_DIR");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const GRID_2X2: &str = r#"{
  "gamma": 0.5, "kappa": 0.0, "delta": 5.0, "length": 1.5,
  "engine": "numeric",
  "axis1": "kappa", "axis1_min": 4.0, "axis1_max": 6.0, "axis1_count": 2,
  "axis2": "delta", "axis2_min": 4.0, "axis2_max": 6.0, "axis2_count": 2
}"#;

#[test]
fn simulate_matched_growth() {
    let out = run(&[
        "simulate", "--gamma", "0.5", "--kappa", "0", "--delta", "0", "--length", "1", "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let n_s = doc["result"]["n_s"].as_f64().unwrap();
    assert!((n_s - 0.5f64.sinh().powi(2)).abs() < 1e-12);
    assert_eq!(doc["result"]["engine"], "exact");
}

#[test]
fn simulate_engines_agree() {
    let args = [
        "simulate", "--gamma", "0.5", "--kappa", "2", "--delta", "0", "--length", "1.2",
        "--format", "json",
    ];
    let values: Vec<f64> = ["exact", "ode", "closed-form"]
        .iter()
        .map(|engine| {
            let mut a = args.to_vec();
            a.extend(["--engine", engine]);
            let out = run(&a);
            assert_eq!(out.status.code(), Some(0), "{engine}");
            json(&out)["result"]["n_s"].as_f64().unwrap()
        })
        .collect();
    assert!((values[0] - values[1]).abs() < 1e-9);
    assert!((values[0] - values[2]).abs() < 1e-9);
}

#[test]
fn simulate_zero_gain_is_all_zero() {
    let out = run(&[
        "simulate", "--gamma", "0", "--kappa", "3", "--delta", "2", "--length", "1", "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    for key in ["n_s", "n_i", "n_b"] {
        assert_eq!(r[key].as_f64().unwrap(), 0.0);
    }
}

#[test]
fn simulate_exit_codes() {
    let mismatch = run(&[
        "simulate",
        "--engine",
        "closed-form",
        "--gamma",
        "0.5",
        "--kappa",
        "1",
        "--delta",
        "5",
        "--length",
        "1",
    ]);
    assert_eq!(mismatch.status.code(), Some(3));
    let negative = run(&[
        "simulate", "--gamma", "-0.5", "--kappa", "1", "--delta", "5", "--length", "1",
    ]);
    assert_eq!(negative.status.code(), Some(2));
    let missing = run(&["simulate", "--gamma", "0.5"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_tol = run(&[
        "simulate",
        "--engine",
        "ode",
        "--step-tolerance",
        "0",
        "--gamma",
        "0.5",
        "--kappa",
        "0",
        "--delta",
        "0",
        "--length",
        "1",
    ]);
    assert_eq!(bad_tol.status.code(), Some(2));
}

#[test]
fn classify_reports() {
    let hyper = run(&[
        "classify", "--gamma", "0.5", "--kappa", "5", "--delta", "5", "--format", "json",
    ]);
    assert_eq!(hyper.status.code(), Some(0));
    let doc = json(&hyper);
    assert_eq!(doc["result"]["regime"], "hyperbolic");
    let bounds = doc["result"]["boundary_kappas"].as_array().unwrap();
    assert!((bounds[0].as_f64().unwrap() - 5.696).abs() < 1e-3);
    assert!((bounds[1].as_f64().unwrap() - 4.278).abs() < 1e-3);

    let osc = run(&["classify", "--gamma", "0.5", "--kappa", "2", "--delta", "5"]);
    assert_eq!(osc.status.code(), Some(0));
    assert!(stdout(&osc).contains("oscillatory"));

    let uncoupled = run(&["classify", "--gamma", "0.5", "--kappa", "0", "--delta", "5"]);
    assert_eq!(uncoupled.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&uncoupled.stderr).contains("closed-form"));
}

#[test]
fn sweep_minimal_grid_has_four_rows() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "grid.json", GRID_2X2);
    let out = run(&["sweep", "--config", &config, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "axis1,axis2,n_s,engine");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.ends_with(",numeric")));
}

#[test]
fn sweep_failed_cells_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "overflow.json",
        r#"{"gamma": 300.0, "kappa": 0.0, "delta": 1.0, "length": 0.0, "engine": "numeric",
            "axis1": "length", "axis1_min": 1.0, "axis1_max": 3.0, "axis1_count": 2,
            "axis2": "kappa", "axis2_min": 0.0, "axis2_max": 1.0, "axis2_count": 2}"#,
    );
    let target = dir.path().join("grid.csv");
    let out = run(&[
        "sweep",
        "--config",
        &config,
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    let text = std::fs::read_to_string(&target).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert_eq!(text.lines().filter(|l| l.ends_with(",failed")).count(), 2);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "bad.json", r#"{"gamma": 0.5, "kapa": 1.0}"#);
    let out = run(&[
        "simulate", "--config", &config, "--kappa", "1", "--delta", "0", "--length", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "base.json",
        r#"{"gamma": 0.5, "kappa": 0.0, "delta": 0.0, "length": 1.0}"#,
    );
    let out = run(&[
        "simulate", "--config", &config, "--length", "2", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["config"]["length"].as_f64(), Some(2.0));
    assert!((doc["result"]["n_s"].as_f64().unwrap() - 1f64.sinh().powi(2)).abs() < 1e-12);
}

#[test]
fn json_output_round_trips_as_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "grid.json", GRID_2X2);
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    assert_eq!(
        run(&[
            "sweep",
            "--config",
            &config,
            "--out",
            first.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run(&[
            "sweep",
            "--config",
            first.to_str().unwrap(),
            "--out",
            second.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap()
    );

    let sim = dir.path().join("sim.json");
    let again = dir.path().join("again.json");
    let args = [
        "simulate", "--gamma", "0.3", "--kappa", "1.1", "--delta", "2", "--length", "2.5", "--out",
    ];
    assert_eq!(
        run(&[&args[..], &[sim.to_str().unwrap()]].concat())
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&[
            "simulate",
            "--config",
            sim.to_str().unwrap(),
            "--out",
            again.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(std::fs::read(&sim).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn output_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env("PDC_ZENO_OUT_DIR", dir.path())
        .args([
            "simulate", "--gamma", "0.5", "--kappa", "0", "--delta", "0", "--length", "1", "--out",
            "sim.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("sim.csv")).unwrap();
    assert!(text.starts_with("engine,n_s,n_i,n_b,symplectic_residual\n"));
}

#[test]
fn dressed_check_exit_codes() {
    let random = run(&["dressed-check", "--seed", "0"]);
    assert_eq!(random.status.code(), Some(0));
    let text = stdout(&random);
    assert!(text.contains("0.70711"));
    assert!(text.contains("0.63662"));

    let zero = run(&[
        "dressed-check",
        "--gamma",
        "0",
        "--kappa",
        "2",
        "--delta",
        "3",
        "--length",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(zero.status.code(), Some(0));
    assert_eq!(json(&zero)["result"]["residual"].as_f64(), Some(0.0));

    // sinh^2(600) overflows, leaving a NaN residual
    let overflow = run(&[
        "dressed-check",
        "--gamma",
        "10",
        "--kappa",
        "0",
        "--delta",
        "0",
        "--length",
        "60",
    ]);
    assert_eq!(overflow.status.code(), Some(5));
    assert!(stdout(&overflow).contains("residual = NaN"));
}

#[test]
fn ridge_output_and_range_errors() {
    let out = run(&[
        "ridge",
        "--gamma",
        "0.5",
        "--length",
        "1.5",
        "--delta-min",
        "3",
        "--delta-max",
        "10",
        "--delta-count",
        "8",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("delta,kappa_opt,n_s_max"));
    for line in lines
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .take(8)
    {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((cols[1] - cols[0]).abs() <= 0.5f64 * 2f64.sqrt());
    }

    let reversed = run(&[
        "ridge",
        "--gamma",
        "0.5",
        "--length",
        "1.5",
        "--delta-min",
        "10",
        "--delta-max",
        "3",
    ]);
    assert_eq!(reversed.status.code(), Some(2));
    let too_few = run(&[
        "ridge",
        "--gamma",
        "0.5",
        "--length",
        "1.5",
        "--delta-count",
        "2",
    ]);
    assert_eq!(too_few.status.code(), Some(2));
}
