use std::process::Command;

use serde_json::Value;
use treehopf::cli::{run, Status};

fn treehopf(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_treehopf"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn unknown_subcommand_prints_usage_to_stderr() {
    let (code, stdout, stderr) = treehopf(&["transmogrify"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("Usage"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let (code, _, stderr) = treehopf(&["xk", "3", "--fast"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--fast"));
}

#[test]
fn malformed_tree_reports_position() {
    let (code, _, stderr) = treehopf(&["coprod", "--algebra", "gl", "[[]"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("position 3"), "{stderr}");
}

#[test]
fn help_exits_zero() {
    let (code, stdout, _) = treehopf(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["enum", "prod", "coprod", "antipode", "verify", "bracket"] {
        assert!(stdout.contains(sub), "{sub} missing from help");
    }
}

#[test]
fn hr_coproduct_of_chain() {
    let (code, stdout, _) = treehopf(&["coprod", "--algebra", "hr", "[[]]"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    let bases: Vec<&str> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["basis"].as_str().unwrap())
        .collect();
    assert_eq!(bases, ["1 | [[]]", "[[]] | 1", "[] | []"]);
}

#[test]
fn counit_and_text_output() {
    assert_eq!(
        treehopf(&["counit", "--algebra", "gl", "[]"]).1,
        "\"1/1\"\n"
    );
    assert_eq!(
        treehopf(&["--format", "text", "xk", "2"]).1,
        "[[[]]] + [[][]]\n"
    );
    assert_eq!(
        treehopf(&["--format", "text", "enum", "--size", "3"]).1,
        "[[[]]]\n[[][]]\n"
    );
}

#[test]
fn verify_report_schema_and_exit_code() {
    for suite in ["trees", "hr", "gl", "lie", "operators", "dual"] {
        let r = run(["verify", "--suite", suite, "--max-degree", "3"]);
        let v: Value = serde_json::from_str(&r.payload).unwrap();
        assert_eq!(v["suite"], suite);
        assert_eq!(v["maxDegree"], 3);
        assert!(v["checked"].as_u64().unwrap() > 0);
        let violations = v["violations"].as_array().unwrap().len();
        assert_eq!(r.exit_code == 1, violations > 0);
        assert_eq!(r.status == Status::Ok, violations == 0);
    }
}

#[test]
fn text_report() {
    let r = run([
        "verify",
        "--suite",
        "trees",
        "--max-degree",
        "2",
        "--report",
        "text",
    ]);
    assert_eq!(r.exit_code, 0);
    assert!(r.payload.starts_with("suite trees (max degree 2)"));
    assert!(r.payload.contains("PASS trees.count_matches_recurrence"));
}

#[test]
fn file_inputs() {
    let dir = std::env::temp_dir().join(format!("treehopf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("x.json");
    std::fs::write(&path, r#"{"terms":[{"basis":"[[]]","coeff":"2"}]}"#).unwrap();
    let arg = format!("@{}", path.display());
    let r = run(["grow", "--algebra", "gl", arg.as_str()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(
        r.payload,
        r#"{"terms":[{"basis":"[[[]]]","coeff":"2/1"},{"basis":"[[][]]","coeff":"2/1"}]}"#
    );
}
