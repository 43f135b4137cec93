use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shift-test"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn simulate(dir: &TempDir, prefix: &str, p_common: &str, seed: &str) -> (String, String) {
    let x = path(dir, &format!("{prefix}_x.csv"));
    let y = path(dir, &format!("{prefix}_y.csv"));
    let out = run(&[
        "simulate",
        "--p-common",
        p_common,
        "--seed",
        seed,
        "--out-x",
        &x,
        "--out-y",
        &y,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    (x, y)
}

fn json(path: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn simulate_writes_series_and_sidecar() {
    let dir = TempDir::new().unwrap();
    let (x, y) = simulate(&dir, "a", "0.1", "42");
    let (x2, y2) = simulate(&dir, "b", "0.1", "42");
    let text = fs::read_to_string(&x).unwrap();
    assert_eq!(text.lines().count(), 300);
    assert!(text.lines().all(|l| l == "0" || l == "1"));
    assert_eq!(fs::read(&x).unwrap(), fs::read(&x2).unwrap());
    assert_eq!(fs::read(&y).unwrap(), fs::read(&y2).unwrap());
    let meta = json(&format!("{x}.json"));
    assert_eq!(meta["config"]["seed"], 42);
    assert_eq!(meta["config"]["p_switch"], 0.1);
}

#[test]
fn simulate_rejects_bad_probability_before_writing() {
    let dir = TempDir::new().unwrap();
    let x = path(&dir, "x.csv");
    let out = run(&[
        "simulate",
        "--p-switch",
        "1.5",
        "--seed",
        "1",
        "--out-x",
        &x,
        "--out-y",
        &path(&dir, "y.csv"),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!Path::new(&x).exists());
}

#[test]
fn self_association_peaks_at_zero() {
    let dir = TempDir::new().unwrap();
    let (x, _) = simulate(&dir, "s", "0.1", "7");
    let out_file = path(&dir, "result.json");
    let out = run(&[
        "test",
        "--x",
        &x,
        "--y",
        &x,
        "--n-shifts",
        "19",
        "--out",
        &out_file,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out_file);
    assert_eq!(v["m"], 1);
    assert_eq!(v["reject_conservative"], true);
    assert_eq!(v["reject_approximate"], true);
    assert_eq!(v["segment_length"], 262);
    assert_eq!(v["profile"].as_array().unwrap().len(), 39);
    assert_eq!(v["profile"][0]["shift"], -19);
}

#[test]
fn independent_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let mut high = 0;
    for seed in 0..10 {
        let (x, y) = simulate(&dir, &format!("i{seed}"), "0", &seed.to_string());
        let out = run(&[
            "test",
            "--x",
            &x,
            "--y",
            &y,
            "--n-shifts",
            "19",
            "--alpha",
            "0.05",
        ]);
        assert!(out.status.success());
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        let m = v["m"].as_u64().unwrap();
        assert!((1..=39).contains(&m));
        if m >= 2 {
            high += 1;
        }
    }
    assert!(high >= 7, "{high}/10");
}

#[test]
fn real_valued_associations_and_segment_length() {
    let dir = TempDir::new().unwrap();
    let (x, y) = simulate(&dir, "r", "0.1", "3");
    for assoc in ["pearson", "spearman"] {
        let out = run(&[
            "test",
            "--x",
            &x,
            "--y",
            &y,
            "--segment-length",
            "262",
            "--assoc",
            assoc,
            "--format",
            "csv",
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = String::from_utf8(out.stdout).unwrap();
        assert_eq!(text.lines().next(), Some("shift,score"));
        assert_eq!(text.lines().count(), 40);
    }
    let out = run(&["test", "--x", &x, "--y", &y, "--segment-length", "261"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn precondition_and_data_errors() {
    let dir = TempDir::new().unwrap();
    let (x, y) = simulate(&dir, "e", "0", "1");
    let out_file = path(&dir, "never.json");

    let out = run(&[
        "test",
        "--x",
        &x,
        "--y",
        &y,
        "--n-shifts",
        "150",
        "--out",
        &out_file,
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!Path::new(&out_file).exists());

    let short = path(&dir, "short.csv");
    fs::write(&short, "0\n1\n").unwrap();
    let out = run(&["test", "--x", &x, "--y", &short, "--n-shifts", "1"]);
    assert_eq!(out.status.code(), Some(4));

    let bad = path(&dir, "bad.csv");
    fs::write(&bad, "value\n0\n1\nx\n").unwrap();
    let out = run(&["test", "--x", &x, "--y", &bad, "--n-shifts", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let nonbinary = path(&dir, "three.csv");
    fs::write(&nonbinary, "0\n2\n1\n0\n1\n").unwrap();
    let out = run(&[
        "test",
        "--x",
        &nonbinary,
        "--y",
        &nonbinary,
        "--n-shifts",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4));

    let out = run(&[
        "test",
        "--x",
        &path(&dir, "missing.csv"),
        "--y",
        &y,
        "--n-shifts",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two_without_output() {
    let dir = TempDir::new().unwrap();
    let out_file = path(&dir, "never.json");
    let out = run(&[
        "test",
        "--x",
        "a",
        "--y",
        "b",
        "--n-shifts",
        "2",
        "--bogus",
        "--out",
        &out_file,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!Path::new(&out_file).exists());
    let out = run(&["test", "--x", "a", "--y", "b"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "test",
        "--x",
        "a",
        "--y",
        "b",
        "--n-shifts",
        "2",
        "--alpha",
        "1.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reproduce_fig2_smoke_and_determinism() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a");
    let b = path(&dir, "b");
    for (out, workers) in [(&a, "1"), (&b, "3")] {
        let res = run(&[
            "reproduce-fig2",
            "--replicates",
            "10",
            "--seed",
            "5",
            "--workers",
            workers,
            "--out",
            out,
        ]);
        assert!(
            res.status.success(),
            "{}",
            String::from_utf8_lossy(&res.stderr)
        );
    }
    let summary = json(&format!("{a}/summary.json"));
    assert_eq!(summary["independent"]["verdict"], "LOW_POWER");
    assert_eq!(summary["correlated"]["verdict"], "LOW_POWER");
    assert_eq!(summary["master_seed"], 5);
    for name in [
        "fig2b_fisher_pvalues.csv",
        "fig2c_profiles.csv",
        "fig2d_cumulative_m.csv",
        "bounds_independent.csv",
        "replicates_independent.csv",
        "replicates_correlated.csv",
        "summary.json",
    ] {
        let left = fs::read(format!("{a}/{name}")).unwrap();
        assert_eq!(left, fs::read(format!("{b}/{name}")).unwrap(), "{name}");
        assert!(!left.contains(&b'\r'));
    }
    let cumulative = fs::read_to_string(format!("{a}/fig2d_cumulative_m.csv")).unwrap();
    assert_eq!(cumulative.lines().count(), 40);
    assert!(cumulative
        .lines()
        .last()
        .unwrap()
        .starts_with("39,10,1,10,1,"));
}

#[test]
fn verify_bounds_reports_table() {
    let dir = TempDir::new().unwrap();
    let out_file = path(&dir, "bounds.csv");
    let res = run(&[
        "verify-bounds",
        "--replicates",
        "200",
        "--seed",
        "2",
        "--n-shifts",
        "5",
        "--length",
        "100",
        "--format",
        "csv",
        "--out",
        &out_file,
    ]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let text = fs::read_to_string(&out_file).unwrap();
    assert_eq!(text.lines().count(), 12);
    let res = run(&["verify-bounds", "--replicates", "50", "--seed", "2"]);
    let v: Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(v["conservative_bound_held"], true);
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), 39);
}

#[test]
fn missing_seed_is_generated_and_printed() {
    let dir = TempDir::new().unwrap();
    let x = path(&dir, "x.csv");
    let out = run(&[
        "simulate",
        "--length",
        "20",
        "--out-x",
        &x,
        "--out-y",
        &path(&dir, "y.csv"),
    ]);
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    let seed: u64 = stderr
        .trim()
        .strip_prefix("seed: ")
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(json(&format!("{x}.json"))["config"]["seed"], seed);
}
