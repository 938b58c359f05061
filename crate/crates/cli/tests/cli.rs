use std::process::{Command, Output};

use serde_json::Value;
use unijac::records::{
    BallRecord, JacobiRecord, MapRecord, OracleRecord, PolylineRecord, SuiteRecord,
};
use unijac_core::ball::{BallExtremal, MonomialIndex};
use unijac_core::comb::{solve_parameters, CombDomainSpec, CombMapData};
use unijac_core::jacobi::{solve, SolveOptions};
use unijac_core::oracle::{minimax_1d, OracleResult};
use unijac_core::{UniformJacobiSolution, WeightParams};

fn unijac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unijac"))
        .args(args)
        .env_remove("UNIJAC_TOL")
        .env_remove("UNIJAC_RESULTS_LOG")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn jacobi_round_trips_bit_for_bit() {
    let text = stdout(&unijac(&[
        "jacobi", "--alpha", "0.5", "--beta", "2", "--n", "2",
    ]));
    let rec: JacobiRecord = serde_json::from_str(&text).unwrap();
    let parsed = UniformJacobiSolution::try_from(rec.clone()).unwrap();
    let direct = solve(
        WeightParams::new(0.5, 2.0).unwrap(),
        2,
        SolveOptions::default(),
    )
    .unwrap();
    assert_eq!(parsed, direct);
    assert_eq!(
        format!("{}\n", serde_json::to_string_pretty(&rec).unwrap()),
        text
    );
}

#[test]
fn json_keys_follow_the_schema_order() {
    let text = stdout(&unijac(&[
        "jacobi", "--alpha", "1", "--beta", "0", "--n", "1",
    ]));
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "alpha",
            "beta",
            "n",
            "xi",
            "eta",
            "deviation",
            "log_leading",
            "residual",
            "iterations"
        ]
    );
}

#[test]
fn ball_round_trips_and_reports() {
    let text = stdout(&unijac(&[
        "ball", "--k1", "1", "--l1", "1", "--k2", "0", "--l2", "0", "--verify", "--grid", "2000",
    ]));
    let rec: BallRecord = serde_json::from_str(&text).unwrap();
    let report = rec.report.clone().unwrap();
    assert!(report.regions_ok);
    assert!(report.witness.is_none());
    assert!((report.max_abs - 1.0).abs() < 1e-12);
    let parsed = BallExtremal::try_from(rec).unwrap();
    let direct =
        BallExtremal::build(MonomialIndex::new(1, 1, 0, 0), SolveOptions::default()).unwrap();
    assert_eq!(parsed, direct);
    let v: Value = serde_json::from_str(&text).unwrap();
    for key in [
        "k1",
        "l1",
        "k2",
        "l2",
        "lambda",
        "split",
        "xi",
        "eta",
        "deviation",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in [
        "max_abs",
        "argmax",
        "line_residual",
        "regions_ok",
        "witness",
    ] {
        assert!(v["report"].get(key).is_some(), "missing report.{key}");
    }
}

#[test]
fn map_round_trips() {
    let text = stdout(&unijac(&[
        "map", "--alpha", "0.5", "--beta", "2", "--n", "2",
    ]));
    let rec: MapRecord = serde_json::from_str(&text).unwrap();
    let parsed = CombMapData::try_from(rec).unwrap();
    let spec = CombDomainSpec::new(WeightParams::new(0.5, 2.0).unwrap(), 2);
    assert_eq!(
        parsed,
        solve_parameters(spec, SolveOptions::default()).unwrap()
    );
}

#[test]
fn map_comparison_and_geometry() {
    let text = stdout(&unijac(&[
        "map",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--n",
        "3",
        "--compare",
    ]));
    let rec: MapRecord = serde_json::from_str(&text).unwrap();
    assert!(rec.remez_discrepancy.unwrap() < 1e-8);

    let text = stdout(&unijac(&[
        "map",
        "--alpha",
        "0.5",
        "--beta",
        "2",
        "--n",
        "2",
        "--geometry",
        "20",
    ]));
    let lines: Vec<PolylineRecord> = serde_json::from_str(&text).unwrap();
    assert_eq!(
        lines
            .iter()
            .filter(|l| l.label.starts_with("slit_"))
            .count(),
        3
    );
    assert!(lines.iter().any(|l| l.label == "graph"));
}

#[test]
fn oracle_round_trips() {
    let text = stdout(&unijac(&[
        "oracle", "line", "--alpha", "1", "--beta", "0", "--n", "1", "--grid", "2000",
    ]));
    let rec: OracleRecord = serde_json::from_str(&text).unwrap();
    let direct = minimax_1d(WeightParams::new(1.0, 0.0).unwrap(), 1, 2000).unwrap();
    assert_eq!(OracleResult::from(rec), direct);
}

#[test]
fn asym_limit_example() {
    let text = stdout(&unijac(&[
        "asym",
        "--kappa1",
        "0.5",
        "--lambda1",
        "0",
        "--kappa2",
        "0.5",
        "--lambda2",
        "0",
    ]));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["limit"].as_f64().unwrap(), 0.5);
}

#[test]
fn study_csv_has_the_documented_columns() {
    let out = unijac(&[
        "asym",
        "--kappa1",
        "0.375",
        "--lambda1",
        "0.125",
        "--kappa2",
        "0.375",
        "--lambda2",
        "0.125",
        "--study",
        "8,7,16",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,k1,l1,k2,l2,L,L_pow,limit,gap");
    assert_eq!(lines.count(), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"n\":7"));
}

#[test]
fn sweeps_keep_input_order_and_are_deterministic() {
    let args = [
        "jacobi", "--sweep", "--alpha", "2,0,1", "--beta", "0.5,0", "--n", "3,1",
    ];
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_unijac"))
            .args(args)
            .env("RAYON_NUM_THREADS", threads)
            .env_remove("UNIJAC_TOL")
            .output()
            .unwrap();
        stdout(&out)
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    let recs: Vec<JacobiRecord> = serde_json::from_str(&one).unwrap();
    let order: Vec<(f64, f64, usize)> = recs.iter().map(|r| (r.alpha, r.beta, r.n)).collect();
    assert_eq!(order[0], (2.0, 0.5, 3));
    assert_eq!(order[1], (2.0, 0.5, 1));
    assert_eq!(order[2], (2.0, 0.0, 3));
    assert_eq!(order[11], (1.0, 0.0, 1));
}

#[test]
fn sweep_reports_failed_cases_in_place() {
    let out = unijac(&[
        "oracle", "line", "--sweep", "--alpha", "0", "--beta", "0", "--n", "1,11", "--grid", "200",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v[0]["deviation_lower"].is_number());
    assert_eq!(v[1]["error"]["kind"], "degree_guard");
}

#[test]
fn verify_suite_is_deterministic() {
    let a = stdout(&unijac(&["verify", "--seed", "7", "--cases", "6"]));
    let b = stdout(&unijac(&["verify", "--seed", "7", "--cases", "6"]));
    assert_eq!(a, b);
    let suite: SuiteRecord = serde_json::from_str(&a).unwrap();
    assert!(suite.passed, "{suite:?}");
    assert_eq!(suite.checks.len(), 6);
}

#[test]
fn errors_are_json_objects_with_exit_codes() {
    let out = unijac(&["jacobi", "--alpha", "-1", "--beta", "0", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "invalid_parameter");
    assert_eq!(v["error"]["details"]["name"], "alpha");

    let out = unijac(&["jacobi", "--alpha", "1,2", "--beta", "0", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = unijac(&["asym", "--alpha", "0.8", "--beta", "0.5"]);
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "out_of_domain");

    let out = unijac(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "usage");
}

#[test]
fn tolerance_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_unijac"))
        .args(["jacobi", "--alpha", "1", "--beta", "0", "--n", "1"])
        .env("UNIJAC_TOL", "-1")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["details"]["name"], "tol");
}

#[test]
fn results_log_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("results.ndjson");
    let file = dir.path().join("out.json");
    for _ in 0..2 {
        let out = unijac(&[
            "jacobi",
            "--alpha",
            "0",
            "--beta",
            "0",
            "--n",
            "2",
            "--log",
            log.to_str().unwrap(),
            "--output",
            file.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let lines: Vec<Value> = std::fs::read_to_string(&log)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["command"], "jacobi");
    assert!((lines[0]["result"]["deviation"].as_f64().unwrap() - 0.125).abs() < 1e-15);
    let rec: JacobiRecord = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(rec.n, 2);
}
