//! End-to-end checks of the ctqw binary: exit codes, output formats,
//! export/ingest round trips and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn ctqw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctqw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = ctqw(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(ctqw(&["spectrum"]).status.code(), Some(1)); // no source
    assert_eq!(ctqw(&["spectrum", "--graph", "blorb:3"]).status.code(), Some(1));
    assert_eq!(ctqw(&["nonsense"]).status.code(), Some(1));
    assert_eq!(ctqw(&["cone", "--ell", "5", "--n", "3"]).status.code(), Some(1));
    assert_eq!(
        ctqw(&["pst", "--graph", "cycle:4", "--from", "0", "--to", "9"]).status.code(),
        Some(1)
    );
    assert_eq!(ctqw(&["--help"]).status.code(), Some(0));
}

#[test]
fn spec_error_reports_position() {
    let out = ctqw(&["spectrum", "--graph", "cycle:x"]);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("position 6"), "{msg}");
}

#[test]
fn corrupt_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    // rows 3/4 break pair coverage in every column pair against rows 1/2
    let oa = dir.path().join("bad.oa");
    std::fs::write(&oa, "2 2\n1 1\n1 2\n1 1\n1 2\n").unwrap();
    let out = ctqw(&["spectrum", "--file", oa.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn graph_summary_recognizes_srg() {
    let v = stdout_json(&["graph", "--graph", "oa:2,3"]);
    assert_eq!(v["n"], 9);
    assert_eq!(v["regularity"], 4);
    assert_eq!(v["srg"]["k"], 4);
    assert_eq!(v["srg"]["a"], 1);
    assert_eq!(v["srg"]["c"], 2);

    let wheel = stdout_json(&["graph", "--graph", "cone:cycle:5"]);
    assert_eq!(wheel["n"], 6);
    assert_eq!(wheel["srg"], serde_json::Value::Null);
}

#[test]
fn export_ingest_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.edges");
    for spec in ["join:empty:2,empty:2", "petersen", "product:cycle:3,complete:2"] {
        let out = ctqw(&["graph", "--graph", spec, "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
        let direct = stdout_json(&["spectrum", "--graph", spec]);
        let ingested = stdout_json(&["spectrum", "--file", path.to_str().unwrap()]);
        assert_eq!(direct, ingested, "round trip differs for {spec}");
    }
}

#[test]
fn oa_and_design_files_ingest() {
    let dir = tempfile::tempdir().unwrap();

    let oa = dir.path().join("rook.oa");
    let mut text = String::from("3 2\n");
    for i in 1..=3 {
        for j in 1..=3 {
            text.push_str(&format!("{i} {j}\n"));
        }
    }
    std::fs::write(&oa, text).unwrap();
    let v = stdout_json(&["graph", "--file", oa.to_str().unwrap()]);
    assert_eq!(v["n"], 9);
    assert_eq!(v["srg"]["c"], 2);

    let fano = dir.path().join("fano.design");
    std::fs::write(
        &fano,
        "7 3 7\n1 2 3\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n",
    )
    .unwrap();
    let v = stdout_json(&["graph", "--file", fano.to_str().unwrap()]);
    assert_eq!(v["n"], 7); // every two Fano lines meet: K7
    assert_eq!(v["regularity"], 6);
}

#[test]
fn byte_identical_reruns() {
    let args = [
        "stayhome",
        "--graph",
        "petersen",
        "--t-start",
        "0",
        "--t-end",
        "6.0",
        "--t-points",
        "40",
    ];
    let a = ctqw(&args);
    let b = ctqw(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let fam = ["family", "--family", "oa", "--k", "2", "--n-start", "2", "--n-end", "6", "--format", "csv"];
    assert_eq!(ctqw(&fam).stdout, ctqw(&fam).stdout);
}

#[test]
fn cone_example_values() {
    let v = stdout_json(&["cone", "--ell", "0", "--n", "3"]);
    let t = v["uniformMixingTime"].as_f64().unwrap();
    assert!((t - std::f64::consts::PI / (3.0 * 3f64.sqrt())).abs() < 1e-9, "{t}");
    assert_eq!(v["rootOfUnity"], false);
}

#[test]
fn stayhome_complete_100() {
    let v = stdout_json(&[
        "stayhome", "--graph", "complete:100", "--t-start", "0", "--t-end", "6.3", "--t-points", "64",
    ]);
    assert!(v["minDiag"].as_f64().unwrap() >= 0.96);
}

#[test]
fn pst_example() {
    let v = stdout_json(&[
        "pst",
        "--graph",
        "join:empty:2,empty:2",
        "--from",
        "0",
        "--to",
        "1",
        "--t-start",
        "0",
        "--t-end",
        "3.142",
        "--t-points",
        "100",
    ]);
    assert_eq!(v["found"], true);
    let t = v["time"].as_f64().unwrap();
    assert!((t - std::f64::consts::FRAC_PI_2).abs() < 1e-6, "{t}");
    let arg = v["phase"]["argument"].as_f64().unwrap();
    assert!((arg.abs() - std::f64::consts::PI).abs() < 1e-8, "{arg}");
}

#[test]
fn csv_outputs_have_headers() {
    let out = ctqw(&["walk", "--graph", "complete:3", "--t", "1.0", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("a,b,uRe,uIm,m\n"), "{text}");
    assert_eq!(text.lines().count(), 10);

    let out = ctqw(&[
        "family", "--family", "conference", "--n-start", "5", "--n-end", "13", "--format", "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("family,k,n,avgDiag,diagLowerBound,dMeasured,verdict\n"));
    assert!(text.contains("conference,,5,0.36,"), "{text}");
}

#[test]
fn family_oa_sweep_includes_measurement() {
    let v = stdout_json(&["family", "--family", "oa", "--k", "2", "--n-start", "3", "--n-end", "4"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0]["dMeasured"].as_f64().unwrap() > 0.0);
    // the diagonal lower bound only clears 1/2 for much larger n
    assert_eq!(rows[0]["verdict"], "indeterminate");
}

#[test]
fn output_file_flag_writes_instead_of_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    let out = ctqw(&["spectrum", "--graph", "cycle:5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    assert_eq!(v["multiplicities"], serde_json::json!([1, 2, 2]));
}
