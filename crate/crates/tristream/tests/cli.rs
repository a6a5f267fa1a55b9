//! End-to-end tests of the `tristream` binary: subcommand wiring, JSON
//! shapes, determinism, and exit codes (0 ok, 1 failed audit/assertion,
//! 2 usage error).

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tristream(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tristream"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "unexpected failure: {out:?}");
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_stats_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let out = tristream(&["gen", "tower", "--s", "5", "-o", "tower.el"], dir.path());
    assert!(out.status.success());

    let stats = stdout_json(&tristream(&["stats", "tower.el"], dir.path()));
    assert_eq!(stats["t3"], 5);
    assert_eq!(stats["rho"], 7);
    assert_eq!(stats["pi"], 10);
    assert_eq!(stats["max_tower"], 5);
    assert_eq!(stats["n"], 7);
    assert_eq!(stats["m"], 11);
}

#[test]
fn gen_writes_to_stdout_without_output_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = tristream(&["gen", "disjoint", "--t", "1"], dir.path());
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0 1\n1 2\n2 0\n");
}

#[test]
fn gadget_generation_matches_the_laws() {
    let dir = tempfile::tempdir().unwrap();
    let out = tristream(
        &[
            "gen", "index", "--f", "2", "--ell", "3", "--T", "2", "--bits", "1011", "-o",
            "index.el",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let stats = stdout_json(&tristream(&["stats", "index.el"], dir.path()));
    assert_eq!(stats["t3"], 2);

    let out = tristream(
        &["gen", "disj", "--x", "1001", "--y", "1010", "-o", "disj.el"],
        dir.path(),
    );
    assert!(out.status.success());
    let stats = stdout_json(&tristream(&["stats", "disj.el"], dir.path()));
    assert_eq!(stats["t3"], 1);
    assert_eq!(stats["m"], 6);
}

#[test]
fn detect_emits_outcome_json_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    tristream(&["gen", "disjoint", "--t", "50", "-o", "g.el"], dir.path());

    let args = ["detect", "--alg", "a", "--T", "50", "--seed", "7", "g.el"];
    let first = tristream(&args, dir.path());
    let second = tristream(&args, dir.path());
    assert_eq!(first.stdout, second.stdout);

    let outcome = stdout_json(&first);
    assert!(outcome.get("verdict").is_some());
    assert!(outcome.get("stored_edges_peak").is_some());
    assert!(outcome.get("passes_used").is_some());

    let a2 = stdout_json(&tristream(
        &["detect", "--alg", "a2", "--rho", "150", "--seed", "3", "g.el"],
        dir.path(),
    ));
    assert_eq!(a2["verdict"], "TriangleFound");
}

#[test]
fn bench_formats() {
    let dir = tempfile::tempdir().unwrap();
    tristream(&["gen", "disjoint", "--t", "20", "-o", "g.el"], dir.path());

    let report = stdout_json(&tristream(
        &[
            "bench", "--alg", "a", "--T", "20", "--trials", "50", "--seed", "5", "g.el",
        ],
        dir.path(),
    ));
    assert_eq!(report["trials"], 50);
    assert_eq!(
        report["found"].as_u64().unwrap()
            + report["not_found"].as_u64().unwrap()
            + report["fail"].as_u64().unwrap(),
        50
    );
    assert_eq!(report["config_echo"]["alg"], "a");

    let table = tristream(
        &[
            "bench", "--alg", "a-adaptive", "--T", "20", "--trials", "10", "--seed", "5",
            "--format", "table", "g.el",
        ],
        dir.path(),
    );
    assert!(table.status.success());
    assert!(String::from_utf8_lossy(&table.stdout).contains("stored_edges_mean"));

    let csv = tristream(
        &[
            "bench", "--alg", "a2", "--rho", "60", "--trials", "10", "--seed", "5", "--format",
            "csv", "g.el",
        ],
        dir.path(),
    );
    assert!(csv.status.success());
    let text = String::from_utf8_lossy(&csv.stdout);
    assert!(text.starts_with("trials,found,not_found,fail"));
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn variance_subcommand_reports_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    tristream(&["gen", "tower", "--s", "2", "-o", "g.el"], dir.path());
    let report = stdout_json(&tristream(
        &[
            "variance", "--p", "0.5", "--samples", "2000", "--seed", "9", "g.el",
        ],
        dir.path(),
    ));
    assert!((report["exact_sigma_sq"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert!(report["variance_z_score"].as_f64().unwrap().abs() <= 5.0);
}

#[test]
fn audit_subcommand_passes_on_valid_graphs() {
    let dir = tempfile::tempdir().unwrap();
    tristream(&["gen", "random", "--n", "20", "--p", "0.4", "--seed", "2", "-o", "g.el"], dir.path());
    let record = stdout_json(&tristream(&["audit", "g.el"], dir.path()));
    assert_eq!(record["pass"], true);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    tristream(&["gen", "disjoint", "--t", "2", "-o", "g.el"], dir.path());

    // Missing required --seed.
    let out = tristream(&["detect", "--alg", "a", "--T", "5", "g.el"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    // Missing --T for the sparsification detector.
    let out = tristream(&["detect", "--alg", "a", "--seed", "1", "g.el"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    // Unknown subcommand.
    let out = tristream(&["frobnicate"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    // Unreadable input file.
    let out = tristream(
        &["stats", "does-not-exist.el"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));

    // Malformed edge list.
    std::fs::write(dir.path().join("bad.el"), "0 0\n").unwrap();
    let out = tristream(&["stats", "bad.el"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("self-loop"));
}

#[test]
fn comments_are_accepted_in_edge_lists() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("commented.el"),
        "# triangle with commentary\n0 1\n1 2\n# midway\n2 0\n",
    )
    .unwrap();
    let stats = stdout_json(&tristream(&["stats", "commented.el"], dir.path()));
    assert_eq!(stats["t3"], 1);
}

#[test]
fn random_bit_gadgets_are_seed_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "gen",
        "disj",
        "--random-bits",
        "16",
        "--ones",
        "6",
        "--seed",
        "12",
    ];
    let a = tristream(&args, dir.path());
    let b = tristream(&args, dir.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
