//! End-to-end runs of the compiled binary: JSON on stdout, logs on stderr,
//! exit codes 0/1/2, determinism of the verdict section, and the cache.

use std::process::Command;

use serde_json::Value;

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_scc-sieve"));
    cmd.args(args).env_remove("SCC_SIEVE_CACHE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("stdout utf8"),
        String::from_utf8(out.stderr).expect("stderr utf8"),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, &[])
}

fn parse(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("stdout is one JSON document")
}

/// Byte range of the verdict section in a rendered report.
fn verdict_bytes(stdout: &str) -> &str {
    stdout.split_once("\"verdict\":").expect("report has a verdict section").1
}

#[test]
fn verify_g2_certifies_nongeometric() {
    let (code, stdout, stderr) = run(&["verify-g2"]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let v = parse(&stdout);
    assert_eq!(v["manifest"]["command"], "verify-g2");
    assert_eq!(v["verdict"]["group"]["order"], 32);
    assert_eq!(v["verdict"]["decision"]["verdict"], "nongeometric");
    assert_eq!(v["verdict"]["decision"]["truncated"], false);
    assert!(v["verdict"]["decision"]["orbit_size"].as_u64().unwrap() <= 32 * 32 * 32);
    assert!(stderr.contains("[scc-sieve]"), "logs go to stderr");
}

#[test]
fn verify_g2_mutate_flips_to_geometric() {
    let (code, stdout, _) = run(&["verify-g2", "--mutate"]);
    assert_eq!(code, 0);
    let v = parse(&stdout);
    assert_eq!(v["verdict"]["decision"]["verdict"], "geometric");
    assert!(v["verdict"]["decision"]["certificate"].is_object());
}

#[test]
fn minimality_only_order_24() {
    let (code, stdout, _) = run(&["minimality", "--only-order", "24"]);
    assert_eq!(code, 0);
    let v = parse(&stdout);
    assert_eq!(v["verdict"]["summary"], "15-entry catalog scan");
    let rows = v["verdict"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().all(|r| r["exists_nongeometric"] == Value::Bool(false)));
    let non_cea = rows.iter().filter(|r| r["cyclic_over_abelian"] == Value::Bool(false)).count();
    assert_eq!(non_cea, 2, "the two exceptional order-24 groups");
}

#[test]
fn minimality_full_catalog_is_all_false() {
    let (code, stdout, stderr) = run(&["minimality", "--jobs", "8"]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let v = parse(&stdout);
    assert_eq!(v["verdict"]["summary"], "92-entry catalog scan");
    assert_eq!(v["verdict"]["rows"].as_array().unwrap().len(), 92);
    assert_eq!(v["verdict"]["true_rows"], Value::Array(vec![]));
    assert!(stderr.contains("92-entry catalog scan"));
}

#[test]
fn minimality_with_g2_has_one_true_row() {
    let (code, stdout, _) = run(&["minimality", "--upto", "12", "--with-g2"]);
    assert_eq!(code, 0);
    let v = parse(&stdout);
    assert_eq!(v["verdict"]["true_rows"], serde_json::json!(["G2"]));
    let rows = v["verdict"]["rows"].as_array().unwrap();
    let g2 = rows.last().unwrap();
    assert_eq!(g2["name"], "G2");
    assert_eq!(g2["order"], 32);
    assert_eq!(g2["cyclic_over_abelian"], false);
    assert_eq!(g2["exists_nongeometric"], true);
}

#[test]
fn decide_splits_the_torus_cases() {
    let (code, stdout, _) = run(&["decide", "--group", "Klein4", "--genus", "1"]);
    assert_eq!(code, 0);
    assert_eq!(parse(&stdout)["verdict"]["exists_nongeometric"], true);

    let (code, stdout, _) = run(&["decide", "--group", "Z4", "--genus", "1"]);
    assert_eq!(code, 0);
    assert_eq!(parse(&stdout)["verdict"]["exists_nongeometric"], false);
}

#[test]
fn decide_large_family_reports_label_mode() {
    let (code, stdout, _) = run(&["decide", "--group", "Gk:k=3,g=3", "--genus", "3"]);
    assert_eq!(code, 0);
    let v = parse(&stdout);
    assert_eq!(v["verdict"]["mode"], "label-arithmetic");
    assert_eq!(v["verdict"]["order"], "2187");
    let row = &v["verdict"]["rows"][0];
    assert_eq!(row["verdict"], "inconclusive");
    assert_eq!(row["truncated"], true);
}

#[test]
fn decide_catalog_index_pins_the_fingerprint() {
    let (code, stdout, _) = run(&["decide", "--group", "8#4", "--genus", "1"]);
    assert_eq!(code, 0);
    let v = parse(&stdout);
    assert!(v["manifest"]["catalog_fingerprint"].is_string());
    assert_eq!(v["verdict"]["order"], 8);
}

#[test]
fn decide_budget_refusal_exits_2() {
    let (code, stdout, stderr) = run(&["decide", "--group", "S3", "--genus", "2", "--budget", "10"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty(), "refusals print no report");
    assert!(stderr.contains("budget"));
}

#[test]
fn unknown_group_spec_exits_2() {
    let (code, _, stderr) = run(&["decide", "--group", "wat", "--genus", "1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unrecognized group spec"));
}

#[test]
fn orders_compares_the_two_constructions() {
    let (code, stdout, _) = run(&["orders", "--genus", "2"]);
    assert_eq!(code, 0);
    let v = parse(&stdout);
    assert_eq!(v["manifest"]["verdict_summary"], "2^38 vs 32");
    assert_eq!(v["verdict"]["cover_tower"]["order"], "274877906944");
    assert_eq!(v["verdict"]["smaller"], "family");

    let (_, stdout, _) = run(&["orders", "--genus", "1"]);
    let v = parse(&stdout);
    assert_eq!(v["verdict"]["family"]["degenerate"], true);
    assert_eq!(v["verdict"]["family"]["torus_answer"], "Klein4");

    let (_, stdout, _) = run(&["orders", "--genus", "5"]);
    let v = parse(&stdout);
    assert!(v["verdict"]["cover_tower"]["order"].is_null(), "no materialized tower integer");
    assert_eq!(v["verdict"]["family"]["order"], "48828125");
}

#[test]
fn catalog_persists_files_a_later_run_can_decide() {
    let dir = tempfile::tempdir().unwrap();
    let dir_str = dir.path().to_str().unwrap();
    let (code, stdout, _) = run(&["catalog", "--upto", "8", "--catalog-dir", dir_str]);
    assert_eq!(code, 0);
    let v = parse(&stdout);
    assert_eq!(v["verdict"]["round_trip_verified"], true);
    let written = v["verdict"]["files_written"].as_u64().unwrap();
    assert_eq!(written, 14, "classes through order 8 including the trivial group");

    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["entries"].as_array().unwrap().len(), 14);

    let quaternion = dir.path().join("8_4.group");
    assert!(quaternion.exists());
    let (code, stdout, _) =
        run(&["decide", "--group", quaternion.to_str().unwrap(), "--genus", "1"]);
    assert_eq!(code, 0);
    assert_eq!(parse(&stdout)["verdict"]["order"], 8);
}

#[test]
fn nielsen_check_passes_through_order_12() {
    let (code, stdout, _) = run(&["nielsen-check"]);
    assert_eq!(code, 0);
    let v = parse(&stdout);
    assert_eq!(v["verdict"]["all_pass"], true);
    assert_eq!(v["verdict"]["rows"].as_array().unwrap().len(), 11);
}

#[test]
fn verdict_sections_are_byte_identical_across_reruns() {
    let args = ["minimality", "--only-order", "6"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(verdict_bytes(&a), verdict_bytes(&b));
}

#[test]
fn cache_hits_preserve_the_verdict_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let dir_str = dir.path().to_str().unwrap();
    let args = ["decide", "--group", "Klein4", "--genus", "1", "--cache-dir", dir_str];

    let (_, first, _) = run(&args);
    assert_eq!(parse(&first)["manifest"]["cache"], "miss");
    let (_, second, _) = run(&args);
    assert_eq!(parse(&second)["manifest"]["cache"], "hit");
    assert_eq!(verdict_bytes(&first), verdict_bytes(&second));

    // The environment variable selects the same cache directory.
    let (_, third, _) = run_env(
        &["decide", "--group", "Klein4", "--genus", "1"],
        &[("SCC_SIEVE_CACHE", dir_str)],
    );
    assert_eq!(parse(&third)["manifest"]["cache"], "hit");

    // Different parameters miss.
    let (_, other, _) =
        run(&["decide", "--group", "Z4", "--genus", "1", "--cache-dir", dir_str]);
    assert_eq!(parse(&other)["manifest"]["cache"], "miss");
}

#[test]
fn stale_minimality_cache_rows_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let dir_str = dir.path().to_str().unwrap();
    let args = ["minimality", "--only-order", "4", "--cache-dir", dir_str];

    let (_, first, _) = run(&args);
    assert_eq!(parse(&first)["manifest"]["cache"], "miss");

    // Corrupt every cached fingerprint; revalidation must reject the entry.
    for f in std::fs::read_dir(dir.path()).unwrap() {
        let path = f.unwrap().path();
        let doctored = std::fs::read_to_string(&path)
            .unwrap()
            .replace("\"fingerprint\": \"o", "\"fingerprint\": \"x");
        std::fs::write(&path, doctored).unwrap();
    }
    let (_, second, stderr) = run(&args);
    assert_eq!(parse(&second)["manifest"]["cache"], "miss");
    assert!(stderr.contains("failed revalidation"));

    let (_, third, _) = run(&args);
    assert_eq!(parse(&third)["manifest"]["cache"], "hit");
}
