//! End-to-end coverage of the command-line surface: exit codes over the
//! bundled example files, byte determinism of reports, schema round-trips,
//! and error messages that name the failing key.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_fischer-cauchy")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(binary())
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn solve_worked_problem_exits_zero_with_exact_solution() {
    let path = fixture("delta_plus_one.json");
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(
        exit_code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "ok");
    assert_eq!(report["residual_ok"], true);
    let solution = report["solution"].as_array().unwrap();
    assert_eq!(solution[0]["degree"], 0);
    assert_eq!(solution[0]["polynomial"][0]["coeff"]["re"], "1/4");
    assert_eq!(solution[1]["degree"], 2);
    assert_eq!(solution[1]["polynomial"][0]["coeff"]["re"], "-1/64");
}

#[test]
fn solve_singular_problem_exits_two_and_names_degree() {
    let path = fixture("nosol.json");
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "singular-degree");
    assert_eq!(report["singular_degree"], 0);
    assert_eq!(report["per_degree"][0]["invertible"], false);
}

#[test]
fn solve_zero_rhs_gives_zero_solution() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.json");
    std::fs::write(
        &path,
        r#"{
  "n": 2,
  "principal": {"laplacian_power": 1},
  "divisor": [{"exps": [2, 0], "coeff": {"re": [1, 1], "im": [0, 1]}},
              {"exps": [0, 2], "coeff": {"re": [1, 1], "im": [0, 1]}}],
  "rhs": [],
  "max_degree": 6
}"#,
    )
    .unwrap();
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["solution"].as_array().unwrap().len(), 0);
    assert_eq!(report["residual_ok"], true);
}

#[test]
fn wellposed_exit_codes() {
    let out = run(&[
        "wellposed",
        fixture("delta_plus_one.json").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_invertible"], true);

    let out = run(&["wellposed", fixture("nosol.json").to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_invertible"], false);
    assert_eq!(report["first_singular_degree"], 0);
}

#[test]
fn ellipticity_verdicts_and_exit_codes() {
    let out = run(&[
        "ellipticity",
        fixture("orthogonal_quartic.json").to_str().unwrap(),
    ]);
    assert_eq!(
        exit_code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "elliptic");
    assert_eq!(report["scope"], "supplied-transform-only");
    // The transformed polynomial is exactly x1^4 + x2^4.
    let transformed = report["transformed"].as_array().unwrap();
    assert_eq!(transformed.len(), 2);
    assert_eq!(transformed[0]["exps"], serde_json::json!([4, 0]));
    assert_eq!(transformed[0]["coeff"]["re"], "1/1");
    assert_eq!(transformed[0]["coeff"]["im"], "0/1");

    // A hyperbolic divisor with the identity transform is rejected.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("xy.json");
    std::fs::write(
        &path,
        r#"{
  "n": 2,
  "polynomial": [{"exps": [1, 1], "coeff": {"re": [1, 1], "im": [0, 1]}}],
  "b_matrix": [[{"re": [1, 1], "im": [0, 1]}, {"re": [0, 1], "im": [0, 1]}],
               [{"re": [0, 1], "im": [0, 1]}, {"re": [1, 1], "im": [0, 1]}]],
  "a_matrix": [[{"re": [1, 1], "im": [0, 1]}, {"re": [0, 1], "im": [0, 1]}],
               [{"re": [0, 1], "im": [0, 1]}, {"re": [1, 1], "im": [0, 1]}]],
  "resolution": 4096
}"#,
    )
    .unwrap();
    let out = run(&["ellipticity", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "not-elliptic");
    assert!(report["witness"]["kind"] == "sphere-point");
}

#[test]
fn ellipticity_in_three_variables_uses_a_sane_default_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ball3.json");
    std::fs::write(
        &path,
        r#"{
  "n": 3,
  "polynomial": [
    {"exps": [2, 0, 0], "coeff": {"re": [1, 1], "im": [0, 1]}},
    {"exps": [0, 2, 0], "coeff": {"re": [1, 1], "im": [0, 1]}},
    {"exps": [0, 0, 2], "coeff": {"re": [1, 1], "im": [0, 1]}}
  ],
  "b_matrix": [
    [{"re": [1, 1], "im": [0, 1]}, {"re": [0, 1], "im": [0, 1]}, {"re": [0, 1], "im": [0, 1]}],
    [{"re": [0, 1], "im": [0, 1]}, {"re": [1, 1], "im": [0, 1]}, {"re": [0, 1], "im": [0, 1]}],
    [{"re": [0, 1], "im": [0, 1]}, {"re": [0, 1], "im": [0, 1]}, {"re": [1, 1], "im": [0, 1]}]
  ],
  "a_matrix": [
    [{"re": [1, 1], "im": [0, 1]}, {"re": [0, 1], "im": [0, 1]}, {"re": [0, 1], "im": [0, 1]}],
    [{"re": [0, 1], "im": [0, 1]}, {"re": [1, 1], "im": [0, 1]}, {"re": [0, 1], "im": [0, 1]}],
    [{"re": [0, 1], "im": [0, 1]}, {"re": [0, 1], "im": [0, 1]}, {"re": [1, 1], "im": [0, 1]}]
  ]
}"#,
    )
    .unwrap();
    let started = std::time::Instant::now();
    let out = run(&["ellipticity", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(started.elapsed() < std::time::Duration::from_secs(30));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "elliptic");
    assert_eq!(report["resolution"], 1024);
}

#[test]
fn wave_problem_solves_exactly() {
    let out = run(&["solve", fixture("wave.json").to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["residual_ok"], true);
    assert_eq!(report["n"], 3);
    assert_eq!(report["max_degree"], 10);
}

#[test]
fn identities_small_grid_passes() {
    let out = run(&["identities", "--grid", "small"]);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("RESULT: PASS"));
    assert!(stdout.contains("moment-ratio-identity"));

    let out = run(&["identities", "--grid", "bogus"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn survey_runs_and_is_seed_deterministic() {
    let path = fixture("quartic_divisor.json");
    let args = [
        "survey",
        path.to_str().unwrap(),
        "--m-max",
        "4",
        "--samples",
        "2",
        "--seed",
        "11",
    ];
    let a = run(&args);
    assert_eq!(exit_code(&a), 0);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout, "survey bytes differ across runs");
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["prng"], "chacha8");
    assert_eq!(report["divisor_elliptic"], true);
    for row in report["lower_bound_ratios"].as_array().unwrap() {
        assert!(row["min_ratio"].as_f64().unwrap() > 0.0);
    }

    let c = run(&[
        "survey",
        path.to_str().unwrap(),
        "--m-max",
        "4",
        "--samples",
        "2",
        "--seed",
        "12",
    ]);
    assert_ne!(a.stdout, c.stdout, "different seeds should differ");
}

#[test]
fn survey_warns_on_nonelliptic_divisor_but_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hyperbolic.json");
    std::fs::write(
        &path,
        r#"{
  "n": 2,
  "p": 1,
  "divisor": [{"exps": [1, 1], "coeff": {"re": [1, 1], "im": [0, 1]}}]
}"#,
    )
    .unwrap();
    let out_path = dir.path().join("survey.json");
    let out = run(&[
        "survey",
        path.to_str().unwrap(),
        "--m-max",
        "2",
        "--samples",
        "2",
        "--seed",
        "3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&out_path).unwrap()).unwrap();
    assert_eq!(report["divisor_elliptic"], false);
    // The degree-0 ratio hits zero: the constant is annihilated.
    assert_eq!(
        report["lower_bound_ratios"][0]["min_ratio"]
            .as_f64()
            .unwrap(),
        0.0
    );
}

#[test]
fn reports_are_byte_deterministic() {
    for (args, expect) in [
        (vec!["solve", "fixtures/delta_plus_one.json"], 0),
        (vec!["solve", "fixtures/nosol.json"], 2),
        (vec!["wellposed", "fixtures/wave.json"], 0),
        (
            vec![
                "ellipticity",
                "fixtures/orthogonal_quartic.json",
                "--resolution",
                "8192",
            ],
            0,
        ),
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if a.starts_with("fixtures/") {
                    fixture(a.strip_prefix("fixtures/").unwrap())
                        .to_str()
                        .unwrap()
                        .to_string()
                } else {
                    a.to_string()
                }
            })
            .collect();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run(&refs);
        let b = run(&refs);
        assert_eq!(exit_code(&a), expect, "args: {args:?}");
        assert_eq!(a.stdout, b.stdout, "nondeterministic report for {args:?}");
    }
}

#[test]
fn thread_cap_does_not_change_bytes() {
    let path = fixture("orthogonal_quartic.json");
    let args = ["ellipticity", path.to_str().unwrap()];
    let one = run_with_env(&args, "FISCHER_CAUCHY_THREADS", "1");
    let four = run_with_env(&args, "FISCHER_CAUCHY_THREADS", "4");
    assert_eq!(exit_code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn max_degree_override_extends_the_solve() {
    let path = fixture("delta_plus_one.json");
    let out = run(&["solve", path.to_str().unwrap(), "--max-degree", "12"]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["max_degree"], 12);
    assert_eq!(report["per_degree"].as_array().unwrap().len(), 13);
    assert_eq!(report["residual_ok"], true);
    assert!(report["radius_estimate"].as_f64().unwrap() > 0.0);
}

#[test]
fn malformed_input_names_the_failing_key() {
    let dir = tempfile::tempdir().unwrap();

    // Unknown key.
    let path = dir.path().join("unknown.json");
    std::fs::write(
        &path,
        r#"{"n": 2, "principal": {"laplacian_power": 1}, "divisor": [], "rhs": [], "max_degree": 2, "extra": 1}"#,
    )
    .unwrap();
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("extra"), "stderr: {stderr}");

    // Zero denominator, named by path.
    let path = dir.path().join("zeroden.json");
    std::fs::write(
        &path,
        r#"{
  "n": 2,
  "principal": {"laplacian_power": 1},
  "divisor": [{"exps": [2, 0], "coeff": {"re": [1, 0], "im": [0, 1]}}],
  "rhs": [],
  "max_degree": 2
}"#,
    )
    .unwrap();
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("divisor[0]"), "stderr: {stderr}");

    // Wrong exponent arity, named by path.
    let path = dir.path().join("arity.json");
    std::fs::write(
        &path,
        r#"{
  "n": 2,
  "principal": {"laplacian_power": 1},
  "divisor": [{"exps": [2], "coeff": {"re": [1, 1], "im": [0, 1]}}],
  "rhs": [],
  "max_degree": 2
}"#,
    )
    .unwrap();
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("divisor[0].exps"));

    // Missing file.
    let out = run(&["solve", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn problem_files_round_trip_through_the_schema() {
    use fischer_cauchy_cli::schema;
    for name in ["nosol.json", "delta_plus_one.json", "wave.json"] {
        let bytes = std::fs::read(fixture(name)).unwrap();
        let file: schema::ProblemFile = schema::decode(&bytes).unwrap();
        let problem = schema::build_problem(&file, None).unwrap();
        let encoded = schema::problem_to_file(&problem).unwrap();
        let reparsed: schema::ProblemFile =
            schema::decode(&serde_json::to_vec(&encoded).unwrap()).unwrap();
        let rebuilt = schema::build_problem(&reparsed, None).unwrap();
        assert_eq!(problem, rebuilt, "round trip failed for {name}");
    }
}
