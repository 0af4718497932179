//! End-to-end tests of the `evocut` binary: exit codes, file outputs,
//! reproducibility.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn evocut(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evocut"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const SMALL_B_CONFIG: &str = r#"{
  "initial": {"kind": "ring", "n0": 12},
  "k": 1,
  "N": 300,
  "model": "B",
  "selection_mode": "proportional",
  "edges_per_arrival": 1,
  "seed": 5,
  "record_trace": true
}"#;

#[test]
fn generate_writes_expected_files_and_node_count() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "config.json", SMALL_B_CONFIG);
    let out = evocut(
        &["generate", "--config", &config, "--out", "run"],
        tmp.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let edge_text = fs::read_to_string(tmp.path().join("run/edge_list.txt")).unwrap();
    let max_id = edge_text
        .lines()
        .flat_map(|l| l.split_whitespace())
        .map(|t| t.parse::<usize>().unwrap())
        .max()
        .unwrap();
    assert_eq!(max_id, 299);
    // ring m0 + one edge per arrival
    assert_eq!(edge_text.lines().count(), 12 + (300 - 12));

    let trace = fs::read_to_string(tmp.path().join("run/trace.csv")).unwrap();
    assert!(trace.starts_with("# config_hash="));
    assert!(trace.contains("rng=chacha12-u64-v1"));
    assert_eq!(trace.lines().count(), 2 + (300 - 12));

    let manifest: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(tmp.path().join("run/run_manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["nodes"], 300);
    assert_eq!(manifest["seed"], 5);
    assert_eq!(manifest["rng_version"], "chacha12-u64-v1");
}

#[test]
fn generate_twice_is_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "config.json", SMALL_B_CONFIG);
    for dir in ["a", "b"] {
        let out = evocut(&["generate", "--config", &config, "--out", dir], tmp.path());
        assert!(out.status.success());
    }
    for file in ["edge_list.txt", "trace.csv", "run_manifest.json"] {
        let a = fs::read(tmp.path().join("a").join(file)).unwrap();
        let b = fs::read(tmp.path().join("b").join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between identical runs");
    }
}

#[test]
fn generate_seed_override_changes_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "config.json", SMALL_B_CONFIG);
    let out = evocut(
        &[
            "generate", "--config", &config, "--out", "a", "--seed", "99",
        ],
        tmp.path(),
    );
    assert!(out.status.success());
    let out = evocut(&["generate", "--config", &config, "--out", "b"], tmp.path());
    assert!(out.status.success());
    let a = fs::read(tmp.path().join("a/trace.csv")).unwrap();
    let b = fs::read(tmp.path().join("b/trace.csv")).unwrap();
    assert_ne!(a, b);
}

#[test]
fn generate_rejects_invalid_config_with_exit_1() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(
        tmp.path(),
        "bad.json",
        r#"{"initial": {"kind": "complete", "n0": 10}, "k": 1, "N": 5,
            "model": "A", "seed": 1}"#,
    );
    let out = evocut(
        &["generate", "--config", &config, "--out", "run"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("N"), "stderr: {stderr}");
}

#[test]
fn generate_missing_config_is_io_error_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let out = evocut(
        &["generate", "--config", "no_such_file.json", "--out", "run"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_star_flags_insufficient_tail() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("star.txt"), "0 1\n0 2\n0 3\n0 4\n").unwrap();
    let out = evocut(&["analyze", "star.txt"], tmp.path());
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "inconclusive");
    assert!(report["power_law_error"]
        .as_str()
        .unwrap()
        .contains("insufficient tail"));
    let hist = fs::read_to_string(tmp.path().join("star.hist.csv")).unwrap();
    assert_eq!(hist, "degree,count\n1,4\n4,1\n");
    let pk = fs::read_to_string(tmp.path().join("star.pk.csv")).unwrap();
    assert_eq!(pk, "k,pk_by_n,pk_by_2m\n1,0.8,0.5\n4,0.2,0.125\n");
}

#[test]
fn analyze_empty_file_exits_1() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("empty.txt"), "").unwrap();
    let out = evocut(&["analyze", "empty.txt"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analyze_parse_error_reports_line() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("bad.txt"), "0 1\nbogus\n").unwrap();
    let out = evocut(&["analyze", "bad.txt"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn generate_then_analyze_round_trip_with_plot() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "config.json", SMALL_B_CONFIG);
    let out = evocut(
        &["generate", "--config", &config, "--out", "run"],
        tmp.path(),
    );
    assert!(out.status.success());
    let out = evocut(
        &[
            "analyze",
            "run/edge_list.txt",
            "--plot",
            "run/plot.svg",
            "--norm",
            "by_2m",
        ],
        tmp.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // a healthy manifest must not trigger the mismatch warning
    assert!(!String::from_utf8_lossy(&out.stderr).contains("hash mismatch"));
    let svg = fs::read_to_string(tmp.path().join("run/plot.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.ends_with("</svg>\n"));
}

#[test]
fn analyze_warns_on_tampered_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "config.json", SMALL_B_CONFIG);
    let out = evocut(
        &["generate", "--config", &config, "--out", "run"],
        tmp.path(),
    );
    assert!(out.status.success());
    let manifest_path = tmp.path().join("run/run_manifest.json");
    let tampered = fs::read_to_string(&manifest_path)
        .unwrap()
        .replace("\"seed\": 5", "\"seed\": 6");
    fs::write(&manifest_path, tampered).unwrap();
    let out = evocut(&["analyze", "run/edge_list.txt"], tmp.path());
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("hash mismatch"));
}

#[test]
fn sweep_grid_with_row_local_failures() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(
        tmp.path(),
        "config.json",
        r#"{
          "initial": {"kind": "complete", "n0": 10},
          "k": 0,
          "N": 400,
          "model": "BA",
          "edges_per_arrival": 1,
          "seed": 1,
          "record_trace": false
        }"#,
    );
    let out = Command::new(env!("CARGO_BIN_EXE_evocut"))
        .args([
            "sweep", "--config", &config, "--k", "0,2", "--seeds", "1,2", "--out", "sw",
        ])
        .env("EVOCUT_THREADS", "2")
        .current_dir(tmp.path())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = fs::read_to_string(tmp.path().join("sw/summary.csv")).unwrap();
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines[0], "k,seed,gamma,beta,verdict,error");
    assert_eq!(lines.len(), 5);
    // k=0 rows succeed (degree-preferential growth reads as power law),
    // k=2 rows carry the BA validation error
    assert!(lines[1].starts_with("0,1,"));
    assert!(lines[1].contains("power_law"));
    assert!(lines[3].starts_with("2,1,"));
    assert!(lines[3].contains("requires k = 0"));
    assert!(tmp.path().join("sw/run_k0_s1/edge_list.txt").exists());
    assert!(tmp.path().join("sw/run_k0_s2/run_manifest.json").exists());
    // record_trace=false: no trace files
    assert!(!tmp.path().join("sw/run_k0_s1/trace.csv").exists());
}

#[test]
fn sweep_empty_k_list_exits_1() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "config.json", SMALL_B_CONFIG);
    let out = evocut(
        &["sweep", "--config", &config, "--seeds", "1", "--out", "sw"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_rejects_bad_thread_budget() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "config.json", SMALL_B_CONFIG);
    let out = Command::new(env!("CARGO_BIN_EXE_evocut"))
        .args([
            "sweep", "--config", &config, "--k", "1", "--seeds", "1", "--out", "sw",
        ])
        .env("EVOCUT_THREADS", "zero")
        .current_dir(tmp.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let tmp = tempfile::tempdir().unwrap();
    let out = evocut(&["--help"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("generate"));
}

#[test]
fn unknown_subcommand_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    let out = evocut(&["frobnicate"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
}
