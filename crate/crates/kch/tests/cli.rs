//! End-to-end runs of the `kch` binary: outputs, exit codes, determinism.

use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn kch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kch"))
        .args(args)
        .env_remove("KCH_MODE")
        .env_remove("KCH_FORMAT")
        .env_remove("KCH_WORKERS")
        .env_remove("KCH_OUT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn spec_file(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn kf_reads_spec_files() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = spec_file(&dir, "c4.json", r#"{"sizes":[4],"w":[]}"#);
    let o = kch(&["kf", &c4]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "5 (5)\n");

    let ladder = spec_file(&dir, "ladder.json", r#"{"sizes":[4,4],"w":[]}"#);
    let o = kch(&["kf", &ladder, "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["kf"]["exact"], "71/5");
    assert_eq!(doc["kf"]["decimal"], "14.2");
    assert_eq!(doc["vertices"], 6);
}

#[test]
fn kf_rejects_small_polygons() {
    let o = kch(&["kf", r#"{"sizes":[3],"w":[]}"#]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("PolygonTooSmall"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn kf_on_explicit_networks() {
    let o = kch(&["kf", "--network", r#"[["N0","N1",1,1],["N1","N2",1,1],["N0","N2",1,1]]"#]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "2 (2)\n");
}

#[test]
fn resistance_on_four_cycle() {
    let c4 = r#"{"sizes":[4],"w":[]}"#;
    let o = kch(&["resistance", c4, "T0", "T1"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "3/4\n"));
    let o = kch(&["resistance", c4, "B1", "B1"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "0\n"));
    let o = kch(&["resistance", c4, "T0", "Q7"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("VertexNotFound"));
    let o = kch(&["resistance", c4, "T0", "T5"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("VertexNotFound"));
}

#[test]
fn resistance_trace_matches_oracle() {
    let o = kch(&["resistance", r#"{"sizes":[5,6,5],"w":[1]}"#, "T0", "B3", "--trace", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let red = &doc["reduction"];
    assert_eq!(red["agrees"], true);
    assert_eq!(red["value"], doc["r"]["exact"]);
    assert!(!red["steps"].as_array().unwrap().is_empty());
}

fn dot_counts(dot: &str) -> (usize, usize) {
    let header = dot.lines().next().unwrap();
    let nums: Vec<usize> = header
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().unwrap())
        .collect();
    let declared_nodes = dot.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains("--")).count();
    let declared_edges = dot.matches(" -- ").count();
    assert_eq!((declared_nodes, declared_edges), (nums[0], nums[1]), "header disagrees with body");
    (nums[0], nums[1])
}

#[test]
fn export_counts() {
    let o = kch(&["export", r#"{"sizes":[4,4],"w":[]}"#]);
    assert_eq!(code(&o), 0);
    assert_eq!(dot_counts(&stdout(&o)), (6, 7));

    let o = kch(&["export", r#"{"sizes":[7,7,7,7,7],"w":[0,0,0]}"#, "--format", "dot"]);
    assert_eq!(dot_counts(&stdout(&o)), (27, 31));

    let o = kch(&["export", r#"{"sizes":[5],"w":[]}"#]);
    let dot = stdout(&o);
    assert_eq!(dot_counts(&dot), (5, 5));
    for v in ["T0", "T1", "B0", "B1", "D1b1"] {
        assert_eq!(dot.matches(&format!("\"{v}\"")).count(), 3, "{v} should be declared once with degree 2");
    }
}

#[test]
fn export_json_and_csv() {
    let o = kch(&["export", r#"{"sizes":[4,4]}"#, "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["network"].as_array().unwrap().len(), 7);
    let o = kch(&["export", r#"{"sizes":[4,4]}"#, "--format", "csv"]);
    let csv = stdout(&o);
    assert_eq!(csv.lines().count(), 1 + 15);
    assert!(csv.contains("T0,B0,11,15"), "{csv}");
}

#[test]
fn verify_small_sweep_passes() {
    let dir = tempfile::tempdir().unwrap();
    let fams = spec_file(&dir, "sweep.json", r#"{"sweep":{"n":[1,4],"k":[4,6]}}"#);
    let o = kch(&["verify", &fams, "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["families_checked"], 3 + 9 + 27 + 81);
    assert!(doc["failures"].as_array().unwrap().is_empty());
}

#[test]
fn verify_reports_fake_claims() {
    // The helicene of (6,6,6) is w = (0); claiming the centred chain as argmin is false.
    let o = kch(&["verify", r#"{"families":[{"sizes":[6,6,6],"expect":{"argmin":[[1]]}}]}"#, "--format", "json"]);
    assert_eq!(code(&o), 1);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["passed"], false);
    assert_eq!(doc["failures"][0]["check"], "argmin_claim");
    assert_eq!(doc["failures"][0]["witness"], serde_json::json!([0]));
    assert!(stderr(&o).contains("witness"));
}

#[test]
fn verify_rejects_malformed_input() {
    let o = kch(&["verify", "{\"families\": ["]);
    assert_eq!(code(&o), 2);
    let o = kch(&["verify", r#"{"sweep":{"n":[1,2],"k":[4,5]}}"#, "--mode", "float"]);
    assert_eq!(code(&o), 2);
    let o = kch(&["kf", r#"{"sizes":[4]}"#, "--tol", "0"]);
    assert_eq!(code(&o), 2);
    let o = kch(&["frobnicate"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn output_is_independent_of_worker_count() {
    let run = |workers: &str| stdout(&kch(&["enumerate", "6,7,5,6,7", "--format", "json", "--workers", workers]));
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("4"));
    let run = |workers: &str| {
        stdout(&kch(&["verify", r#"{"sweep":{"n":[3,3],"k":[4,7]}}"#, "--format", "json", "--workers", workers]))
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn environment_overrides_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kf.json");
    let o = Command::new(env!("CARGO_BIN_EXE_kch"))
        .args(["kf", r#"{"sizes":[6]}"#])
        .env("KCH_FORMAT", "json")
        .env("KCH_OUT", &out)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let doc: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["kf"]["exact"], "35/2");

    // An explicit flag beats the environment.
    let o = Command::new(env!("CARGO_BIN_EXE_kch"))
        .args(["kf", r#"{"sizes":[6]}"#, "--format", "text"])
        .env("KCH_FORMAT", "json")
        .env_remove("KCH_OUT")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "35/2 (17.5)\n");
}

#[test]
fn enumerate_csv_and_float_mode() {
    let o = kch(&["enumerate", "6,6,6", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    assert_eq!(csv.lines().count(), 4);
    let o = kch(&["enumerate", "6,6,6", "--mode", "float", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["argmax"], serde_json::json!([[1]]));
    let o = kch(&["enumerate", "6,x"]);
    assert_eq!(code(&o), 2);
    let o = kch(&["enumerate", "7,7,7,7,7,7,7,7,7,7,7,7", "--cap", "10"]);
    assert_eq!(code(&o), 2);
}
