//! Process-level tests of the command-line surface: exit codes, render
//! formats, flag handling, and byte-identical output across runs.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn write_job(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("cylex-cli-tests");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cylex")).args(args).output().expect("binary runs")
}

fn scalar_algebra_doc(command: &str) -> String {
    format!(
        r#"{{
        "field": {{"type": "Q"}},
        "truncation": 3,
        "construction": {{
            "kind": "a_natural_g",
            "algebra": {{"dim": 1, "structure_constants": [[["1"]]], "unit": ["1"]}},
            "automorphism": [["1"]]
        }},
        "command": "{command}"
    }}"#
    )
}

#[test]
fn check_command_exits_zero() {
    let path = write_job("check.json", &scalar_algebra_doc("check"));
    let out = run(&["--input", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("all required checks passed"), "{text}");
    assert!(text.contains("frozen convention"), "{text}");
}

#[test]
fn homology_table_flags_window_edge() {
    let path = write_job("homology.json", &scalar_algebra_doc("homology"));
    let out = run(&["--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree 0: HH = 1, HC = 1"), "{text}");
    assert!(text.contains("degree 2: HH = 0, HC = 1 (safe window edge)"), "{text}");
}

#[test]
fn unsafe_degrees_require_flag() {
    let path = write_job("homology-unsafe.json", &scalar_algebra_doc("homology"));
    let out = run(&["--input", path.to_str().unwrap(), "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("UNSAFE_DEGREE"));
    let out = run(&["--input", path.to_str().unwrap(), "--max-degree", "3", "--unsafe"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree 3") && text.contains("UNRELIABLE"), "{text}");
}

#[test]
fn json_format_is_structured() {
    let path = write_job("check-json.json", &scalar_algebra_doc("check"));
    let out = run(&["--input", path.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(value["checks"].as_array().map(|a| !a.is_empty()).unwrap_or(false));
    assert!(value["checks"][0]["rule"].is_string());
    assert!(value["checks"][0]["window"].is_string());
}

#[test]
fn invalid_input_exits_two_with_code() {
    let bad = scalar_algebra_doc("check").replace(r#"{"type": "Q"}"#, r#"{"type": "Fp", "p": 9}"#);
    let path = write_job("bad-field.json", &bad);
    let out = run(&["--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NON_PRIME_CHARACTERISTIC"));
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["--input", "/nonexistent/job.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seeded_probes_are_deterministic() {
    let doc = scalar_algebra_doc("check").replace(
        "\"command\": \"check\"",
        "\"command\": \"check\", \"options\": {\"seed\": 11, \"random_probes\": 8}",
    );
    let path = write_job("probes.json", &doc);
    let a = run(&["--input", path.to_str().unwrap()]);
    let b = run(&["--input", path.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
    assert!(String::from_utf8_lossy(&a.stdout).contains("random-probes"));
}

#[test]
fn ez_verify_reports_exact_first_term() {
    let doc = r#"{
        "field": {"type": "Q"},
        "truncation": 3,
        "construction": {
            "kind": "tensor",
            "left":  {"algebra": {"dim": 1, "structure_constants": [[["1"]]], "unit": ["1"]}},
            "right": {"algebra": {"dim": 1, "structure_constants": [[["1"]]], "unit": ["1"]}}
        },
        "command": "ez-verify"
    }"#;
    let path = write_job("ez.json", doc);
    let out = run(&["--input", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("B_inf = B_t exact"), "{text}");
    assert!(text.contains("constrained homotopy solve (B_d h = 0) feasible: true"), "{text}");
    // Two runs, byte-identical.
    let again = run(&["--input", path.to_str().unwrap()]);
    assert_eq!(text.as_bytes(), again.stdout.as_slice());
}

#[test]
fn oracle_command_over_q_and_fp() {
    let doc = scalar_algebra_doc("oracle");
    let path = write_job("oracle.json", &doc);
    let out = run(&["--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree 0: lambda-complex dim = 1"), "{text}");
    assert!(text.contains("degree 2: lambda-complex dim = 1"), "{text}");

    let fp = doc.replace(r#"{"type": "Q"}"#, r#"{"type": "Fp", "p": 5}"#);
    let path = write_job("oracle-fp.json", &fp);
    let out = run(&["--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ORACLE_REQUIRES_CHAR_ZERO"));
}

#[test]
fn group_action_job_end_to_end() {
    let doc = r#"{
        "field": {"type": "Fp", "p": 1009},
        "truncation": 2,
        "construction": {
            "kind": "group_action",
            "algebra": {
                "dim": 2,
                "structure_constants": [
                    [["1", "0"], ["0", "1"]],
                    [["0", "1"], ["1", "0"]]
                ],
                "unit": ["1", "0"]
            },
            "group": {"order": 2, "table": [[0, 1], [1, 0]], "identity": 0},
            "action": [
                [["1", "0"], ["0", "1"]],
                [["1", "0"], ["0", "-1"]]
            ]
        },
        "command": "check"
    }"#;
    let path = write_job("group-action.json", doc);
    let out = run(&["--input", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cylindrical-relation"), "{text}");
}
