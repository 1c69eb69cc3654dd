use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zarank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zarank"))
        .args(args)
        .env_remove("ZARANK_JOBS")
        .env_remove("ZARANK_WITNESS_BUDGET")
        .env_remove("ZARANK_PAIR_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const FAMILY: &str = r#"{"n": 4, "k": 2, "bicliques": [
    {"left": [0, 1], "right": [0, 1]},
    {"left": [2, 3], "right": [2, 3]}
]}"#;

#[test]
fn verify_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let family = write(dir.path(), "f.json", FAMILY);
    let out = zarank(&["verify", "--family", &family]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["command"], "verify");
    assert_eq!(v["result"]["found"], true);
    let s = v["result"]["s"].as_array().unwrap().len();
    assert_eq!(s, 2);

    let complete = write(dir.path(), "c.json", r#"{"n": 3, "k": 1, "bicliques": [{"left": [0, 1, 2], "right": [0, 1, 2]}]}"#);
    let out = zarank(&["verify", "--family", &complete, "--method", "exhaustive"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["found"], false);
}

#[test]
fn malformed_input_reports_the_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"n": 4, "k": 2, "bicliques": [{"left": [0], "rite": [1]}]}"#);
    let out = zarank(&["verify", "--family", &bad]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bicliques[0]"), "{err}");

    let range = write(dir.path(), "range.json", r#"{"n": 4, "k": 2, "bicliques": [{"left": [9], "right": [1]}]}"#);
    assert_eq!(code(&zarank(&["bounds", "--family", &range])), 2);
    assert_eq!(code(&zarank(&["attack", "--family", "/nonexistent/family.json", "--seed", "1"])), 2);
    assert_eq!(code(&zarank(&["construct", "--n", "10", "--k", "2", "--sizes", "3y3", "--seed", "1"])), 2);
    assert_eq!(code(&zarank(&["construct", "--n", "10", "--k", "20", "--sizes", "3x3", "--seed", "1"])), 2);
    assert_eq!(code(&zarank(&["frobnicate"])), 2);
}

#[test]
fn outputs_are_not_overwritten_without_force() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json").display().to_string();
    let args = ["construct", "--n", "20", "--k", "3", "--sizes", "10x10*8", "--seed", "1", "--out", &out_path];
    assert_eq!(code(&zarank(&args)), 0);
    let first = std::fs::read_to_string(&out_path).unwrap();
    let again = zarank(&args);
    assert_eq!(code(&again), 2);
    assert!(String::from_utf8_lossy(&again.stderr).contains("--force"));
    let mut forced = args.to_vec();
    forced.insert(0, "--force");
    assert_eq!(code(&zarank(&forced)), 0);
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), first);
}

#[test]
fn construct_family_feeds_verify_and_attack() {
    let dir = tempfile::tempdir().unwrap();
    let family = dir.path().join("family.json").display().to_string();
    let out = zarank(&["construct", "--n", "24", "--k", "3", "--sizes", "12x12*8", "--seed", "9", "--family-out", &family]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["result"]["construction"]["status"], "verified");
    assert_eq!(code(&zarank(&["verify", "--family", &family])), 0);
    let attack = zarank(&["attack", "--family", &family, "--seed", "1", "--trials", "20"]);
    assert!(matches!(code(&attack), 0 | 1));
    assert_eq!(json(&attack)["command"], "attack");
}

#[test]
fn sc_verify_modes() {
    let dir = tempfile::tempdir().unwrap();
    let complete = write(
        dir.path(),
        "k33.json",
        r#"{"n": 3, "m": 3, "edges_vm": [[0,0],[0,1],[0,2],[1,0],[1,1],[1,2],[2,0],[2,1],[2,2]],
            "edges_mw": [[0,0],[0,1],[0,2],[1,0],[1,1],[1,2],[2,0],[2,1],[2,2]]}"#,
    );
    let out = zarank(&["sc-verify", "--layered", &complete]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["result"]["is_superconcentrator"], true);
    assert_eq!(v["result"]["certified"], true);

    let sampled = zarank(&["sc-verify", "--layered", &complete, "--mode", "sampled", "--samples", "10", "--seed", "1"]);
    assert_eq!(code(&sampled), 0);
    assert_eq!(json(&sampled)["result"]["certified"], false);
    assert_eq!(code(&zarank(&["sc-verify", "--layered", &complete, "--mode", "sampled", "--samples", "10"])), 2);
    assert_eq!(code(&zarank(&["sc-verify", "--layered", &complete, "--pair-budget", "3"])), 2);

    let thin = write(dir.path(), "thin.json", r#"{"n": 2, "m": 1, "edges_vm": [[0,0],[1,0]], "edges_mw": [[0,0],[0,1]]}"#);
    let out = zarank(&["sc-verify", "--layered", &thin]);
    assert_eq!(code(&out), 1);
    let failing = &json(&out)["result"]["failing"];
    assert_eq!(failing["k"], 2);
    assert_eq!(failing["max_flow"], 1);
}

#[test]
fn sc_analyze_reports_both_audits() {
    let dir = tempfile::tempdir().unwrap();
    let mut vm = Vec::new();
    let mut mw = Vec::new();
    for x in 0..8 {
        for v in 0..8 {
            if (v + x) % 3 != 0 {
                vm.push(format!("[{v},{x}]"));
            }
            if (v * x) % 4 != 1 {
                mw.push(format!("[{x},{v}]"));
            }
        }
    }
    let text = format!(r#"{{"n": 8, "m": 8, "edges_vm": [{}], "edges_mw": [{}]}}"#, vm.join(","), mw.join(","));
    let path = write(dir.path(), "g.json", &text);
    let seven = zarank(&["sc-analyze", "--layered", &path, "--theorem", "7"]);
    assert_eq!(code(&seven), 0);
    assert!(json(&seven)["result"]["ladder"].is_array());
    let eight = zarank(&["sc-analyze", "--layered", &path, "--theorem", "8", "--D", "0.5"]);
    assert_eq!(code(&eight), 0);
    let v = json(&eight);
    assert_eq!(v["parameters"]["D"], 0.5);
    assert_eq!(v["result"]["pigeonhole_holds"], true);
    assert_eq!(code(&zarank(&["sc-analyze", "--layered", &path, "--theorem", "8", "--require-balanced"])), 2);
    assert_eq!(code(&zarank(&["sc-analyze", "--layered", &path, "--theorem", "9"])), 2);
}

#[test]
fn sweep_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"command": "construct", "grid": {"n": [16], "k": [2], "sizes": ["8x8*6", "6x6*4"], "seeds": [1, 2]}}"#,
    );
    let csv = dir.path().join("out.csv").display().to_string();
    let json_path = dir.path().join("out.json").display().to_string();
    let out = zarank(&["sweep", "--spec", &spec, "--csv", &csv, "--json", &json_path]);
    assert!(matches!(code(&out), 0 | 1), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.records().count(), 4);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(report["command"], "sweep");

    let bad = write(dir.path(), "bad.json", r#"{"command": "construct", "grid": {"n": [16], "k": [2], "sizes": ["8x8"], "seeds": "x"}}"#);
    let out = zarank(&["sweep", "--spec", &bad]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid.seeds"));
}

#[test]
fn jobs_setting_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let family = write(dir.path(), "f.json", FAMILY);
    let one = zarank(&["--jobs", "1", "attack", "--family", &family, "--seed", "5", "--trials", "30"]);
    let four = zarank(&["--jobs", "4", "attack", "--family", &family, "--seed", "5", "--trials", "30"]);
    assert_eq!(one.stdout, four.stdout);
}
