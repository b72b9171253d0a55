//! End-to-end tests of the `pipedream` binary: output shapes, fixtures,
//! and the documented exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pipedream"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn info_reports_pattern_counts() {
    let out = run(&["info", "1432"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("p_132 = 3"), "{text}");
    assert!(text.contains("p_1432 = 1"), "{text}");
    assert!(text.contains("inversions = 3"), "{text}");
    assert!(text.contains("layered = true"), "{text}");
}

#[test]
fn info_json_for_the_identity_is_all_zero() {
    let out = run(&["info", "123", "--json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["inversions"], 0);
    assert_eq!(value["p_132"], 0);
    assert_eq!(value["p_1432"], 0);
    assert_eq!(value["rothe_diagram"], serde_json::json!([]));
}

#[test]
fn info_rejects_a_non_permutation() {
    let out = run(&["info", "1732"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn enumerate_streams_all_graphs_then_the_count() {
    let out = run(&["enumerate", "1432"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(*lines.last().unwrap(), "count = 5");
    // Five 4-line grids separated by blank lines: the first is the bottom
    // graph, drawn from the code (0, 2, 1, 0).
    assert!(text.starts_with("....\n++..\n+...\n....\n\n"), "{text}");
    assert_eq!(lines.iter().filter(|l| l.is_empty()).count(), 5);
}

#[test]
fn enumerate_respects_the_budget_env_var() {
    let out = Command::new(env!("CARGO_BIN_EXE_pipedream"))
        .args(["enumerate", "1432"])
        .env("PIPEDREAM_BUDGET", "2")
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 3);
}

#[test]
fn nu_prints_catalan_counts() {
    let out = run(&["nu", "15432"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "14\n");
}

#[test]
fn nu_cross_checks_the_oracle() {
    let out = run(&["nu", "1432", "--check-oracle"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "5\n");
}

#[test]
fn coeffs_json_lists_the_two_small_patterns() {
    let out = run(&["coeffs", "4", "--nonzero-only", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value, serde_json::json!({"132": 1, "1432": 1}));
}

#[test]
fn coeffs_csv_has_23_nonzero_size_5_rows() {
    let out = run(&["coeffs", "5", "--nonzero-only"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("pattern,c"));
    let size5 = lines.filter(|l| l.split(',').next().unwrap().len() == 5).count();
    assert_eq!(size5, 23);
}

#[test]
fn coeffs_csv_keeps_zero_rows_by_default() {
    let out = run(&["coeffs", "4"]);
    let text = stdout(&out);
    // 4 canonical size-3 patterns + 18 canonical size-4 patterns + header.
    assert_eq!(text.lines().count(), 23);
    assert!(text.lines().any(|l| l == "231,0"), "{text}");
    assert!(text.lines().any(|l| l == "1432,1"), "{text}");
}

#[test]
fn table_max_reproduces_the_small_rows() {
    let out = run(&["table-max", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,max_c,argmax");
    assert_eq!(lines[1], "3,1,132");
    assert_eq!(lines[2], "4,1,1432");
    assert_eq!(lines[3], "5,5,12543 21543");
}

#[test]
fn verify_suite_passes_and_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = run(&[
        "verify",
        "--suite",
        "bound",
        "--n",
        "4",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("PASS lower-bound n=4: 24 tested"));
    let text = std::fs::read_to_string(&report).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value[0]["check"], "lower-bound");
    assert_eq!(value[0]["tested"], 24);
    assert_eq!(value[0]["failures"], serde_json::json!([]));
}

#[test]
fn verify_runs_every_suite_at_small_sizes() {
    for suite in ["all", "chain", "connectivity", "confluence", "closure", "catalan",
        "conjecture", "witnesses"]
    {
        let out = run(&["verify", "--suite", suite, "--n", "4"]);
        assert_eq!(code(&out), 0, "suite {suite}: {}", stdout(&out));
        assert!(!stdout(&out).contains("FAIL"), "suite {suite}");
    }
}

#[test]
fn verify_rejects_unknown_suites_and_bad_shards() {
    let out = run(&["verify", "--suite", "everything", "--n", "4"]);
    assert_eq!(code(&out), 2);
    let out = run(&["verify", "--suite", "bound", "--n", "4", "--shards", "2", "--shard-id", "5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_shards_split_the_sweep() {
    let mut tested_total = 0u64;
    for shard_id in ["0", "1", "2"] {
        let out = run(&[
            "verify",
            "--suite",
            "bound",
            "--n",
            "4",
            "--shards",
            "3",
            "--shard-id",
            shard_id,
        ]);
        assert_eq!(code(&out), 0);
        let text = stdout(&out);
        let tested: u64 = text
            .split(": ")
            .nth(1)
            .and_then(|rest| rest.split(" tested").next())
            .and_then(|num| num.parse().ok())
            .unwrap();
        tested_total += tested;
    }
    assert_eq!(tested_total, 24);
}

#[test]
fn render_draws_the_bottom_graph() {
    let out = run(&["render", "1432", "bottom"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "....\n++..\n+...\n....\n");
}

#[test]
fn render_finds_the_example_grid_by_index() {
    // Locate the example grid for 43152 in discovery order, then ask the
    // binary for that index.
    let w = pipedream::perm::Permutation::parse("43152").unwrap();
    let fixture = pipedream::Diagram::from_cells([(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 2)]);
    let target = pipedream::rcgraph::validate(&fixture, &w).unwrap();
    let index = pipedream::rcgraph::enumerate_all(&w)
        .unwrap()
        .iter()
        .position(|d| *d == target)
        .expect("fixture graph is enumerated");
    let out = run(&["render", "43152", &index.to_string()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "+++..\n++...\n.+...\n.....\n.....\n");
}

#[test]
fn render_pads_trailing_fixed_points() {
    let out = run(&["render", "123", "bottom"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "...\n...\n...\n");
}

#[test]
fn render_index_out_of_range_is_a_usage_error() {
    let out = run(&["render", "1432", "7"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn render_emits_svg_and_tikz_and_json() {
    let out = run(&["render", "1432", "bottom", "--format", "svg", "--show-strands"]);
    assert!(stdout(&out).starts_with("<svg "));
    let out = run(&["render", "1432", "bottom", "--format", "tikz"]);
    assert!(stdout(&out).starts_with("\\begin{tikzpicture}"));
    let out = run(&["render", "1432", "bottom", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["crossings"], serde_json::json!([[2, 1], [2, 2], [3, 1]]));
}
