//! End-to-end exercises of the command-line binary: verbs, formats, exit
//! codes, and the batch mode, all through the real argument parser.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const HEXAGON: &str = r#"{"schema":1,"vertices":[[0,0],[1,0],[0,1],[2,1],[1,2],[2,2]]}"#;
const CUBE: &str = r#"{"schema":1,"vertices":[[0,0,0],[1,0,0],[0,1,0],[0,0,1],[1,1,0],[1,0,1],[0,1,1],[1,1,1]]}"#;
const SKEW_TRIANGLE: &str = r#"{"schema":1,"vertices":[[0,0],[1,0],[0,2]]}"#;

/// A per-test scratch directory under the system temp dir, removed on drop.
struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("toric-secant-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.0.join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_toric-secant"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn arg(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn analyze_reports_the_hexagon() {
    let dir = Scratch::new("analyze");
    let input = dir.file("hexagon.json", HEXAGON);

    let out = run(["analyze", arg(&input)]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_str(&out));
    let v = stdout_json(&out);
    assert_eq!(v["family"]["family"], "general");
    assert_eq!(v["n"], 2);
    assert_eq!(v["r"], 6);
    assert_eq!(v["dim_sec"], 5);
    assert_eq!(v["deg_sec"], 3);
    assert_eq!(v["secant_lines"], "unique");
    let checks = v["cross_checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["pass"] == true));

    let table = run(["analyze", arg(&input), "--format", "table"]);
    assert_eq!(code(&table), 0);
    let text = stdout_str(&table);
    assert!(text.contains("family"), "table output: {text}");
    assert!(text.contains("general"), "table output: {text}");
}

#[test]
fn analyze_output_is_deterministic() {
    let dir = Scratch::new("determinism");
    let input = dir.file("hexagon.json", HEXAGON);
    let first = run(["analyze", arg(&input)]);
    let second = run(["analyze", arg(&input)]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn catalog_classify_round_trip() {
    let dir = Scratch::new("catalog");
    let path = dir.path("trunc.json");
    let wrote = run(["catalog", "truncated", "--n", "4", "--k", "1", "--out", arg(&path)]);
    assert_eq!(code(&wrote), 0, "stderr: {}", stderr_str(&wrote));
    assert!(stdout_str(&wrote).contains("wrote"));
    assert!(path.exists());

    let classified = run(["classify", arg(&path)]);
    assert_eq!(code(&classified), 0);
    let v = stdout_json(&classified);
    assert_eq!(v["family"], "truncated");
    assert_eq!(v["n"], 4);
    assert_eq!(v["k"], 1);

    let debug = run(["classify", arg(&path), "--debug-all-vertices"]);
    assert_eq!(code(&debug), 0);
    let v = stdout_json(&debug);
    let runs = v["all_vertices"].as_array().unwrap();
    assert!(!runs.is_empty());
    assert!(runs.iter().all(|r| r["family"]["family"] == "truncated"));

    let analyzed = run(["analyze", arg(&path)]);
    assert_eq!(code(&analyzed), 0);
    let v = stdout_json(&analyzed);
    assert_eq!(v["dim_sec"], 8);
    assert_eq!(v["deg_phi"], 0);
    assert_eq!(v["has_expected_dim"], false);

    // Without --out the vertex list lands on stdout.
    let table = run(["catalog", "truncated", "--n", "4", "--k", "1", "--format", "table"]);
    assert_eq!(code(&table), 0);
    assert!(!stdout_str(&table).trim().is_empty());
}

#[test]
fn points_volume_and_chow_verbs() {
    let dir = Scratch::new("verbs");
    let hexagon = dir.file("hexagon.json", HEXAGON);
    let cube = dir.file("cube.json", CUBE);

    let volume = run(["volume", arg(&hexagon)]);
    assert_eq!(code(&volume), 0);
    assert_eq!(stdout_json(&volume)["normalized_volume"], 6);

    let points = run(["points", arg(&hexagon)]);
    assert_eq!(code(&points), 0);
    let v = stdout_json(&points);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["points"].as_array().unwrap().len(), 7);

    let chow = run(["chow", arg(&cube), "--monomials"]);
    assert_eq!(code(&chow), 0);
    let v = stdout_json(&chow);
    assert_eq!(v["c1_pow_n"], 48);
    assert_eq!(v["euler_characteristic"], 8);
    assert_eq!(v["secant_rhs"], 2);
    assert_eq!(v["todd_point_count"], 8);
    assert!(v["monomials"].as_object().is_some_and(|m| !m.is_empty()));
}

#[test]
fn subset_divisibility_flow() {
    let dir = Scratch::new("subset");
    let hexagon = dir.file("hexagon.json", HEXAGON);

    // Feed the points verb's own output back in.
    let points = run(["points", arg(&hexagon)]);
    assert_eq!(code(&points), 0);
    let all = dir.file("hexagon-points.json", &stdout_str(&points));
    let full = run(["subset", arg(&all)]);
    assert_eq!(code(&full), 0, "stderr: {}", stderr_str(&full));
    let v = stdout_json(&full);
    assert_eq!(v["s"], 6);
    assert_eq!(v["hypothesis_ok"], true);
    assert_eq!(v["dim_sec"], 5);
    assert_eq!(v["deg_constraint"], "divides 3");

    // Removing a corner's neighbor (1,0) from 3Δ2 breaks the hypothesis:
    // the report still prints, and the exit code flags it.
    let sparse = dir.file(
        "sparse.json",
        r#"{"schema":1,"points":[[0,0],[0,1],[0,2],[0,3],[1,1],[1,2],[2,0],[2,1],[3,0]]}"#,
    );
    let out = run(["subset", arg(&sparse)]);
    assert_eq!(code(&out), 4, "stderr: {}", stderr_str(&out));
    let v = stdout_json(&out);
    assert_eq!(v["hypothesis_ok"], false);
    assert_eq!(v["missing"], serde_json::json!([[1, 0]]));
}

#[test]
fn error_exit_codes() {
    let dir = Scratch::new("errors");

    let missing = run(["analyze", arg(&dir.path("nope.json"))]);
    assert_eq!(code(&missing), 2);

    let garbled = dir.file("garbled.json", "{not json");
    let out = run(["analyze", arg(&garbled)]);
    assert_eq!(code(&out), 2);
    assert!(stderr_str(&out).contains("error:"));

    let extra = dir.file(
        "extra.json",
        r#"{"schema":1,"vertices":[[0,0],[1,0],[0,1]],"color":"red"}"#,
    );
    assert_eq!(code(&run(["analyze", arg(&extra)])), 2);

    let skew = dir.file("skew.json", SKEW_TRIANGLE);
    let out = run(["analyze", arg(&skew)]);
    assert_eq!(code(&out), 3);
    assert!(stderr_str(&out).contains("not smooth"));

    // A points file is not a polytope file.
    let points = dir.file("points.json", r#"{"schema":1,"points":[[0,0],[1,0],[0,1]]}"#);
    assert_eq!(code(&run(["volume", arg(&points)])), 2);

    assert_eq!(code(&run(["catalog", "dodecahedron"])), 2);
    assert_eq!(code(&run(["analyze", "--no-such-flag"])), 2);
}

#[test]
fn batch_mode_writes_reports_and_skips_them_on_rerun() {
    let dir = Scratch::new("batch");
    dir.file("cube.json", CUBE);
    dir.file("hexagon.json", HEXAGON);
    dir.file("skew.json", SKEW_TRIANGLE);

    let first = run(["analyze", "--batch", arg(&dir.0)]);
    assert_eq!(code(&first), 3, "stderr: {}", stderr_str(&first));
    let summary = stdout_str(&first);
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines.len(), 3, "summary: {summary}");
    assert!(lines[0].starts_with("cube.json: family=general"));
    assert!(lines[1].starts_with("hexagon.json: family=general"));
    assert!(lines[2].starts_with("skew.json: error:"));
    assert!(stderr_str(&first).contains("1 of 3 inputs failed"));
    assert!(dir.path("cube.report.json").exists());
    assert!(dir.path("hexagon.report.json").exists());
    assert!(!dir.path("skew.report.json").exists());

    // Reports written by the first pass are not inputs for the second.
    let second = run(["analyze", "--batch", arg(&dir.0)]);
    assert_eq!(code(&second), 3);
    assert_eq!(stdout_str(&second), summary);
}

#[test]
fn selftest_passes() {
    let out = run(["selftest"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_str(&out));
    let cases = stdout_json(&out);
    let cases = cases.as_array().unwrap();
    assert!(cases.len() >= 30);
    assert!(cases.iter().all(|c| c["pass"] == true));

    let table = run(["selftest", "--format", "table"]);
    assert_eq!(code(&table), 0);
    assert!(stdout_str(&table).contains("0 failed"));
}
