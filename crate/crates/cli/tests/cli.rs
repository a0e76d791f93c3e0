use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use cswitch::tables::ExperimentTable;

fn cswitch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cswitch"))
        .args(args)
        .env_remove("CSWITCH_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn ico_single_constant() {
    let o = cswitch(&["ico", "--oracles", "[[0,0]]", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["odd_constants"], true);
    assert_eq!(v["verified"], true);
    assert_eq!(v["u1"], "I");
}

#[test]
fn ico_two_balanced() {
    let o = cswitch(&["ico", "--oracles", "[[0,1],[1,0]]", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["odd_constants"], false);
    assert_eq!(v["u1"], "-I");
    assert!(stderr(&o).contains("U1 = -I"));
}

#[test]
fn ico_accepts_aliases_and_targets() {
    for target in ["0", "1", "+", "-"] {
        let o = cswitch(&[
            "ico",
            "--oracles",
            "c1,b10,b01",
            "--target",
            target,
            "--format",
            "json",
        ]);
        assert!(o.status.success());
        let v = json(&o);
        assert_eq!(v["odd_constants"], true);
        assert_eq!(v["target"], target);
    }
    let o = cswitch(&["ico", "--oracles", "c0", "--target", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ico_rejects_empty_and_malformed_sets() {
    let o = cswitch(&["ico", "--oracles", "[]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("n >= 1"), "{}", stderr(&o));

    let o = cswitch(&["ico", "--oracles", "[[0,0],\n[0,"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column"), "{}", stderr(&o));

    let o = cswitch(&["ico"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn deutsch_and_classical_commands() {
    let o = cswitch(&["deutsch", "--oracles", "[[0,1]]", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["first_qubit"], 1);
    assert_eq!(v["odd_constants"], false);
    assert_eq!(v["queries_used"], 1);

    let o = cswitch(&[
        "classical",
        "--oracles",
        "[[0,1],[1,1]]",
        "--format",
        "json",
    ]);
    let v = json(&o);
    assert_eq!(v["queries_used"], 4);
    assert_eq!(v["odd_constants"], true);
}

#[test]
fn sweep_n1_all_agree() {
    let o = cswitch(&["sweep", "--n", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn sweep_n2_matches_two_function_table() {
    let o = cswitch(&["sweep", "--n", "2", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["summary"]["sets"], 16);
    assert_eq!(v["summary"]["all_agree"], true);
    let rows = v["rows"].as_array().unwrap();
    for table_row in ExperimentTable::TwoFunction.rows() {
        let hit = rows
            .iter()
            .find(|r| r["factors"] == table_row.label.as_str())
            .unwrap_or_else(|| panic!("no sweep row for {}", table_row.label));
        assert_eq!(hit["expected_port"], table_row.expected_port.to_string());
    }
}

#[test]
fn sweep_n8_is_fast_and_complete() {
    let start = Instant::now();
    let o = cswitch(&["sweep", "--n", "8"]);
    let elapsed = start.elapsed();
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 65_537);
    assert!(elapsed.as_secs_f64() < 10.0, "{elapsed:?}");
}

#[test]
fn sweep_rejects_out_of_range_n() {
    assert_eq!(cswitch(&["sweep", "--n", "0"]).status.code(), Some(2));
    assert_eq!(cswitch(&["sweep", "--n", "9"]).status.code(), Some(2));
}

#[test]
fn report_query_counts() {
    for (n, classical, quantum) in [(1, 2, 1), (3, 6, 3), (100, 200, 100)] {
        let o = cswitch(&["report", "--n", &n.to_string(), "--format", "json"]);
        let v = json(&o);
        assert_eq!(v["classical_queries"], classical);
        assert_eq!(v["quantum_queries"], quantum);
        assert_eq!(v["ico_queries"], quantum);
        assert_eq!(v["ico_fixed_gates"], 1);
    }
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn experiment_noiseless_deutsch() {
    let dir = tempfile::tempdir().unwrap();
    let o = cswitch(&[
        "experiment",
        "--table",
        "deutsch",
        "--noise",
        "none",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let plot = read_csv(&dir.path().join("plot.csv"));
    assert_eq!(plot.len(), 16);
    for row in &plot {
        let (a, b): (f64, f64) = (row[2].parse().unwrap(), row[3].parse().unwrap());
        assert_eq!(a.max(b), 1.0);
    }
    let report = read_csv(&dir.path().join("report.csv"));
    assert!(report.iter().all(|r| r[5] == "1.0"));
}

#[test]
fn experiment_calibrated_two_function() {
    let dir = tempfile::tempdir().unwrap();
    let o = cswitch(&[
        "experiment",
        "--table",
        "two-function",
        "--noise",
        "default",
        "--seed",
        "7",
        "--format",
        "json",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("CALIBRATED"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 64);
    assert_eq!(v["metadata"]["seed"], 7);
    assert_eq!(v["metadata"]["noise_label"], "CALIBRATED");
    let mean = v["mean_success"].as_f64().unwrap();
    assert!((mean - 0.997).abs() < 0.002, "{mean}");
    assert_eq!(read_csv(&dir.path().join("plot.csv")).len(), 64);
}

#[test]
fn experiment_rejects_zero_shots() {
    let o = cswitch(&["experiment", "--table", "deutsch", "--shots", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("shots"));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let target = blocker.join("sub");
    let o = cswitch(&[
        "experiment",
        "--shots",
        "10",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = cswitch(&["report", "--n", "2", "--out", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_and_seed_fallbacks() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"table": "deutsch", "noise": {"plate_angle_sigma": 0.5}, "shots": 1000, "seed": 3, "format": "json"}"#,
    )
    .unwrap();
    let run = |extra: &[&str], env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_cswitch"));
        c.args(["experiment", "--config", cfg.to_str().unwrap()])
            .args(extra);
        match env {
            Some(v) => c.env("CSWITCH_SEED", v),
            None => c.env_remove("CSWITCH_SEED"),
        };
        let o = c.output().unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()
    };
    let v = run(&[], None);
    assert_eq!(v["metadata"]["seed"], 3);
    assert_eq!(v["metadata"]["shots_per_config"], 1000);
    assert_eq!(v["metadata"]["noise_label"], "custom");
    assert_eq!(run(&["--seed", "9"], None)["metadata"]["seed"], 9);
    // config seed beats the environment
    assert_eq!(run(&[], Some("11"))["metadata"]["seed"], 3);

    let o = Command::new(env!("CARGO_BIN_EXE_cswitch"))
        .args(["experiment", "--shots", "10", "--format", "json"])
        .env("CSWITCH_SEED", "11")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["metadata"]["seed"], 11);
}

#[test]
fn config_file_supplies_oracles() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ico.json");
    std::fs::write(&cfg, r#"{"oracles": [[0,0],"b01"], "format": "json"}"#).unwrap();
    let o = cswitch(&["ico", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(json(&o)["odd_constants"], true);

    // oracle commands refuse an n alongside the set
    std::fs::write(&cfg, r#"{"oracles": [[0,0]], "n": 2}"#).unwrap();
    assert_eq!(
        cswitch(&["ico", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn calibrate_ideal_loop() {
    let o = cswitch(&["calibrate", "--input", "D", "--format", "json"]);
    let v = json(&o);
    assert!(v["phase_rad"].as_f64().unwrap().abs() < 1e-12);
    assert!(v["p_b_with_identity"].as_f64().unwrap() >= 1.0 - 1e-12);
}
