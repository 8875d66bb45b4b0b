//! Behavior of the installed binary: exit codes, envelope shape, and
//! byte-for-byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn spindex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spindex"))
        .args(args)
        .env_remove("SPINDEX_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn verify_succeeds_on_a_six_element_group() {
    let out = spindex(&["verify", "--type", "A", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("all 9 checks passed"));
}

#[test]
fn elliptic_filter_keeps_two_rank_two_hyperoctahedral_classes() {
    let out = spindex(&["classes", "--type", "B", "--rank", "2", "--elliptic"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let data_rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("class"))
        .collect();
    assert_eq!(data_rows.len(), 2, "got: {:?}", data_rows);
    assert!(data_rows.iter().all(|l| l.ends_with("yes")));
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = spindex(&["classes", "--type", "B", "--rank", "2", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unsupported_systems_are_usage_errors() {
    for args in [
        ["info", "--type", "E", "--rank", "8"],
        ["info", "--type", "A", "--rank", "9"],
        ["info", "--type", "B", "--rank", "1"],
    ] {
        let out = spindex(&args);
        assert_eq!(out.status.code(), Some(2), "args: {:?}", args);
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn bad_parameter_strings_are_usage_errors() {
    for params in ["1", "1,2,3", "0,1", "-1,2", "x,y", "1.5,2"] {
        let out = spindex(&["info", "--type", "B", "--rank", "2", "--params", params]);
        assert_eq!(out.status.code(), Some(2), "params: {}", params);
    }
    // Simply-laced systems have one root length.
    let out = spindex(&["info", "--type", "A", "--rank", "2", "--params", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_is_reserved_for_character_grids() {
    let out = spindex(&["classes", "--type", "B", "--rank", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    let out = spindex(&["chartable", "--type", "B", "--rank", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // Header comment, column row, then one line per irreducible.
    assert_eq!(text.lines().count(), 2 + 1 + 5);
    assert!(text.lines().nth(2).unwrap().starts_with("row,degree,C0"));
}

#[test]
fn json_envelope_records_the_resolved_config() {
    let out = spindex(&[
        "casimir", "--type", "G", "--rank", "2", "--params", "1,3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["config"]["command"], "casimir");
    assert_eq!(doc["config"]["type"], "G");
    assert_eq!(doc["config"]["rank"], 2);
    assert_eq!(doc["config"]["params"]["short"][0], 3);
    let rows = doc["result"]["genuine_rows"].as_array().expect("rows");
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert!(row["negative"]["exact"].is_object());
        assert!(row["negative"]["shadow"]["re"].is_number());
        assert_eq!(row["negative_rational"], true);
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["spin", "--type", "B", "--rank", "3", "--format", "json", "--seed", "7"];
    let a = spindex(&args);
    let b = spindex(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn thread_count_does_not_change_results() {
    let args = ["elliptic-pairing", "--type", "F", "--rank", "4", "--format", "json"];
    let one = spindex(&args);
    let four = Command::new(env!("CARGO_BIN_EXE_spindex"))
        .args(args)
        .env("SPINDEX_THREADS", "4")
        .output()
        .expect("binary runs");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(four.status.code(), Some(0));
    let a: serde_json::Value = serde_json::from_str(&stdout(&one)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&four)).unwrap();
    assert_eq!(a["result"], b["result"]);
    assert_eq!(b["config"]["threads"], 4);
}

fn data_file(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/springer")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn springer_eval_reads_parameters_from_the_file() {
    let path = data_file("g2_geometric.json");
    let out = spindex(&[
        "springer-eval", "--type", "G", "--rank", "2", "--data", &path, "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["config"]["params"]["short"][0], 3);
    assert_eq!(doc["result"]["entries"].as_array().unwrap().len(), 3);
    assert_eq!(doc["result"]["monotonicity_violations"].as_array().unwrap().len(), 0);

    // Conflicting explicit parameters are a usage error.
    let out = spindex(&[
        "springer-eval", "--type", "G", "--rank", "2", "--data", &path, "--params", "2,7",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // A mismatched system is a usage error.
    let out = spindex(&["springer-eval", "--type", "B", "--rank", "2", "--data", &path]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bn_example_requires_the_hyperoctahedral_type() {
    let out = spindex(&["bn-example", "--type", "A", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = spindex(&["bn-example", "--type", "B", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("sign"));
}

#[test]
fn help_exits_zero() {
    let out = spindex(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let out = spindex(&["chartable", "--help"]);
    assert_eq!(out.status.code(), Some(0));
}
