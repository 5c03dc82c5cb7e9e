//! End-to-end checks of the binary: schemas, exit codes, reproducibility.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_muntz-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_stdout(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("muntz-lab-it");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn bernstein_solvable_case_over_json() {
    let out = run(&["bernstein", "--seq", "0,1", "--x", "0.5", "--json"]);
    let v = json_stdout(&out);
    assert_eq!(v["n"], 2);
    assert_eq!(v["a"], 0.5);
    assert_eq!(v["sequence"]["exponents"], serde_json::json!([0.0, 1.0]));
    let lower = v["lower"].as_f64().unwrap();
    let upper = v["upper_heuristic"].as_f64().unwrap();
    assert!((lower - 2.0).abs() <= 1e-3);
    assert!(upper >= lower);
    assert!(v["witness"]["coefficients"].is_array());
    assert!(v["converged"].as_bool().unwrap());
}

#[test]
fn grid_json_satisfies_its_own_spacing_rule() {
    let out = run(&["grid", "--seq", "1", "--eps", "0.1", "--m", "1", "--json"]);
    let v = json_stdout(&out);
    assert_eq!(v["epsilon"], 0.1);
    let anchors: Vec<f64> = v["anchors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(anchors[0], 0.0);
    assert_eq!(*anchors.last().unwrap(), 0.5);
    let k = v["constants"][0].as_f64().unwrap();
    let points: Vec<f64> = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(points[0], 0.0);
    assert_eq!(*points.last().unwrap(), 0.5);
    for pair in points.windows(2) {
        assert!(pair[1] > pair[0]);
        assert!(pair[1] - pair[0] <= (0.1 / k) * (1.0 + 1e-12));
    }
    assert_eq!(v["includes_limit_point"], true);
}

#[test]
fn grid_csv_embeds_one_row_per_coordinate() {
    let csv = scratch("grid.csv");
    let out = run(&[
        "grid",
        "--seq",
        "1,2",
        "--eps",
        "0.25",
        "--m",
        "2",
        "--coeffs",
        "0.5,0.5",
        "--csv",
        csv.to_str().unwrap(),
        "--json",
    ]);
    let v = json_stdout(&out);
    let points = v["points"].as_array().unwrap().len();
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), points + 1);
    assert!(rows[0].starts_with("0,0,0"));
    let last: Vec<&str> = rows.last().unwrap().split(',').collect();
    assert_eq!(last[1], "1");
    assert_eq!(last[2], "1");
}

#[test]
fn verify_embedding_reports_are_byte_identical_across_runs() {
    let args = [
        "verify-embedding",
        "--seq",
        "1,2,4",
        "--eps",
        "0.2",
        "--trials",
        "25",
        "--seed",
        "7",
        "--json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let v = json_stdout(&first);
    assert_eq!(v["violations"], 0);
    assert_eq!(v["trials"], 25);
    assert_eq!(v["epsilon"], 0.2);
    assert!(v["min_ratio"].as_f64().unwrap() <= v["max_ratio"].as_f64().unwrap());
}

#[test]
fn coarse_anchor_set_fails_the_sandwich_with_exit_one() {
    // one band ending at 0.5 leaves (0.5, 1) unsampled, so peaks there hide
    let out = run(&[
        "verify-embedding",
        "--family",
        "geometric:2",
        "--n",
        "5",
        "--eps",
        "0.1",
        "--m",
        "1",
        "--trials",
        "40",
        "--seed",
        "1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["violations"].as_u64().unwrap() > 0);
}

#[test]
fn lasq_writes_a_single_csv_row() {
    let csv = scratch("lasq.csv");
    let out = run(&[
        "lasq",
        "--seq",
        "1,2,4",
        "--trials",
        "30",
        "--seed",
        "2",
        "--csv",
        csv.to_str().unwrap(),
        "--json",
    ]);
    let v = json_stdout(&out);
    assert_eq!(v["kind"], "lasq");
    assert_eq!(v["violations"], 0);
    assert!(v["threshold_epsilon_star"].as_f64().unwrap() > 0.0);
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("lasq,3,0.9,"));
    assert_eq!(rows[0].split(',').count(), 9);
}

#[test]
fn half_ball_and_oh_probe_run_clean() {
    let out = run(&[
        "half-ball",
        "--seq",
        "1,2,4",
        "--trials",
        "50",
        "--seed",
        "11",
        "--json",
    ]);
    let v = json_stdout(&out);
    assert_eq!(v["kind"], "half_ball");
    assert_eq!(v["violations"], 0);
    assert!(v["extremal_value"].as_f64().unwrap() <= 0.5 + 1e-6);

    let out = run(&[
        "oh-probe",
        "--seq",
        "1,2,4",
        "--trials",
        "50",
        "--seed",
        "11",
        "--json",
    ]);
    let v = json_stdout(&out);
    assert_eq!(v["kind"], "oh_probe");
    assert_eq!(v["violations"], 0);
    let sup = v["extremal_value"].as_f64().unwrap();
    assert!(sup > 0.0 && sup < 2.0);
}

#[test]
fn norm_certifies_the_rescaled_chebyshev_example() {
    let out = run(&[
        "norm",
        "--seq",
        "0,1,2",
        "--coeffs",
        "1,-8,8",
        "--tol",
        "1e-8",
        "--json",
    ]);
    let v = json_stdout(&out);
    let lower = v["lower"].as_f64().unwrap();
    let upper = v["upper"].as_f64().unwrap();
    assert!((lower - 1.0).abs() <= 1e-6);
    assert!((upper - 1.0).abs() <= 1e-6);
    assert!(lower <= upper);
}

#[test]
fn muntz_check_reports_family_verdicts() {
    let v = json_stdout(&run(&[
        "muntz-check",
        "--family",
        "geometric:2",
        "--n",
        "4",
        "--json",
    ]));
    assert_eq!(v["verdict"], "convergent");

    let v = json_stdout(&run(&[
        "muntz-check",
        "--family",
        "power:1",
        "--n",
        "4",
        "--json",
    ]));
    assert_eq!(v["verdict"], "divergent");

    let v = json_stdout(&run(&["muntz-check", "--seq", "1,2,3", "--json"]));
    assert_eq!(v["verdict"], "inconclusive");
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["bernstein", "--seq", "0,1", "--x", "1.5"],
        &["verify-embedding", "--seq", "1,2", "--eps", "0", "--trials", "5", "--seed", "1"],
        &["lasq", "--seq", "1,2,4", "--trials", "0", "--seed", "1"],
        &["lasq", "--seq", "1,2,4", "--trials", "5"],
        &["muntz-check", "--family", "fibonacci:2", "--n", "3"],
        &["norm", "--seq", "0,1,2", "--coeffs", "1,2"],
        &["norm", "--seq", "0,1,2"],
        &["verify-embedding", "--seq", "0.5,1", "--eps", "0.1", "--trials", "5", "--seed", "1"],
        &["no-such-command"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["bernstein", "--help"]).status.code(), Some(0));
}

#[test]
fn config_file_defaults_are_overridable() {
    let conf = scratch("defaults.conf");
    std::fs::write(&conf, "seq = 1,2,4\ntrials = 20\nseed = 5\n# comment\n").unwrap();
    let out = run(&[
        "half-ball",
        "--config",
        conf.to_str().unwrap(),
        "--trials",
        "10",
        "--json",
    ]);
    let v = json_stdout(&out);
    assert_eq!(v["trials"], 10);
    assert_eq!(v["seed"], 5);
}
