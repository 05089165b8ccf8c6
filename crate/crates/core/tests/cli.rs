//! Smoke tests for the command-line interface: each subcommand is driven
//! end to end through the compiled binary.

use nilrad::format::serialize;
use nilrad::rational::rat;
use nilrad::LieLaw;
use std::process::{Command, Output};

fn nilrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilrad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = nilrad(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn classify_reports_the_soliton_verdict() {
    let text = stdout(&["classify", "1.17"]);
    assert!(text.contains("verdict  EN (soliton-metric)"), "{text}");
    assert!(text.contains("19/65(1,1,2,3,3,4,5)"), "{text}");
}

#[test]
fn classify_handles_parameter_values() {
    let text = stdout(&["classify", "3.1(i)", "--param", "L=0"]);
    assert!(text.contains("not-EN"), "{text}");
    let text = stdout(&["classify", "3.1(i)", "--param", "L=2"]);
    assert!(text.contains("verdict  EN"), "{text}");
}

#[test]
fn classify_refuses_unbound_parameters() {
    let out = nilrad(&["classify", "3.1(i)"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--param L=VALUE"), "{err}");
}

#[test]
fn json_output_is_machine_readable() {
    let text = stdout(&["--json", "classify", "1.17"]);
    let v: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(v["verdict"], "EN");
    assert_eq!(v["evidence"], "soliton-metric");
    assert_eq!(v["soliton"]["cExact"], "-65/94");
}

#[test]
fn table_is_well_formed() {
    let text = stdout(&["table", "--format", "tsv"]);
    let mut lines = text.lines();
    let header = lines.next().expect("header line");
    let width = header.split('\t').count();
    let mut saw = 0;
    for line in lines {
        assert_eq!(line.split('\t').count(), width, "ragged row: {line}");
        saw += 1;
    }
    assert!(saw > 100, "expected the full catalog, saw {saw} rows");
    assert!(text.contains("1.17"), "{text}");
}

#[test]
fn soliton_system_accepts_an_explicit_diagonal() {
    let text = stdout(&["soliton-system", "--diag", "1,1,2,3,3,4,5"]);
    assert!(text.contains("# jacobi"), "{text}");
    assert!(text.contains("= -23/47"), "{text}");
}

#[test]
fn files_round_trip_through_validate() {
    let mut law = LieLaw::new(4).unwrap();
    law.set_const(1, 2, 3, rat(1, 1)).unwrap();
    law.set_const(1, 3, 4, rat(1, 2)).unwrap();
    let path = std::env::temp_dir().join("nilrad-cli-roundtrip.lie");
    std::fs::write(&path, serialize(&law).unwrap()).unwrap();
    let text = stdout(&["validate", path.to_str().unwrap()]);
    assert!(text.contains("nilpotent"), "{text}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn missing_targets_fail_cleanly() {
    let out = nilrad(&["invariants", "no-such-entry"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("no file or catalog entry"), "{err}");
}
