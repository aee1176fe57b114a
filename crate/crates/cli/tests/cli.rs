use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bschur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bschur")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn reptype_case_d() {
    let o = bschur(&["reptype", "--n", "2", "--r", "4", "--char", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Finite (case d)");
}

#[test]
fn reptype_table_samples() {
    for (args, expected) in [
        (["--n", "2", "--r", "3", "--char", "0"], "Finite (case a)"),
        (["--n", "2", "--r", "5", "--char", "5"], "Finite (case b)"),
        (["--n", "2", "--r", "3", "--char", "2"], "Finite (case c)"),
        (["--n", "2", "--r", "9", "--char", "7"], "Infinite (case e)"),
        (["--n", "2", "--r", "6", "--char", "5"], "Infinite (case f)"),
        (["--n", "2", "--r", "5", "--char", "3"], "Infinite (case g)"),
        (["--n", "2", "--r", "4", "--char", "2"], "Infinite (case h)"),
        (["--n", "3", "--r", "1", "--char", "0"], "Finite (case An)"),
        (["--n", "3", "--r", "2", "--char", "0"], "Infinite (case Ã3)"),
    ] {
        let mut all = vec!["reptype"];
        all.extend(args);
        assert_eq!(stdout(&bschur(&all)).trim(), expected, "{args:?}");
    }
}

#[test]
fn socle_table_two_rows_char_two() {
    let o = bschur(&["socle", "--n", "2", "--r", "4", "--char", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let nonzero: Vec<&str> = text.lines().skip(1).filter(|l| l.split('\t').nth(1) != Some("0")).map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(nonzero, ["(4,0)", "(3,1)"]);
}

#[test]
fn arseq_json() {
    let o = bschur(&["arseq", "--n", "2", "--r", "2", "--char", "0", "--lambda", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dimU"], 1);
    assert_eq!(v["dimE"], 2);
    assert!(v["verified"].as_object().unwrap().values().all(|x| x == true));
}

#[test]
fn closed_form_arseq_agrees() {
    let generic: Value = serde_json::from_str(&stdout(&bschur(&["arseq", "--char", "3", "--lambda", "4,1,1"]))).unwrap();
    let closed: Value = serde_json::from_str(&stdout(&bschur(&["arseq", "--char", "3", "--lambda", "4,1,1", "--closed-form"]))).unwrap();
    assert_eq!(generic["dimU"], closed["dimU"]);
    assert_eq!(generic["dimE"], closed["dimE"]);
    assert_eq!(closed["construction"]["closed-form"], "injective");
}

#[test]
fn exit_codes() {
    assert_eq!(bschur(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(bschur(&["basis", "--n", "2", "--r", "2", "--char", "6"]).status.code(), Some(4));
    assert_eq!(bschur(&["arseq", "--lambda", "2,0"]).status.code(), Some(4));
    assert_eq!(bschur(&["basis", "--n", "2", "--r", "3", "--lambda", "1,1"]).status.code(), Some(4));
    assert_eq!(bschur(&["basis", "--n", "4", "--r", "8", "--budget", "100"]).status.code(), Some(3));
}

#[test]
fn verification_commands_pass() {
    for args in [
        vec!["verify-ar", "--n", "3", "--r", "3", "--char", "2"],
        vec!["crosscheck", "--n", "2", "--r", "4", "--char", "3"],
        vec!["quiver", "--n", "2", "--r", "4", "--char", "2"],
        vec!["pushdown", "--cover", "cover242"],
        vec!["reptype", "--n", "2", "--r", "6", "--char", "5", "--certify"],
    ] {
        let o = bschur(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn multiplication_matches_oracle() {
    let o = bschur(&["mult", "--n", "2", "--r", "3", "--char", "2", "3", "5"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["oracle_agrees"], true);
    assert!(v["x"]["i"].is_array() && v["x"]["j"].is_array());
}

#[test]
fn dot_output() {
    let o = bschur(&["quiver", "--n", "2", "--r", "2", "--format", "dot"]);
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify-ar", "--n", "2", "--r", "4", "--char", "2", "--seed", "11"];
    assert_eq!(bschur(&args).stdout, bschur(&args).stdout);
}

#[test]
fn run_directory_with_manifest() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("socle-run");
    let _ = std::fs::remove_dir_all(&dir);
    let o = bschur(&["socle", "--n", "2", "--r", "3", "--char", "3", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "socle");
    assert_eq!(manifest["exit_status"], 0);
    assert_eq!(std::fs::read_to_string(dir.join("socle.tsv")).unwrap(), stdout(&o));
}

#[test]
fn truncation_with_ar_comparison() {
    let o = bschur(&["truncate", "--n", "3", "--r", "3", "--char", "3", "--coideal", "0,3,0", "--lambda", "1,2,0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ar_comparison"]["isomorphic"], false);
}
