use std::path::Path;
use std::process::Command;

use gaplab_cli::{execute, run};
use serde_json::Value;

/// 50-digit evaluation of the closed form for c_LG at the default constants.
const C_LG_ORACLE: &str = "2.0038612046196703697517178177965083830448639455361e-17";

fn report(args: &[&str]) -> String {
    let mut argv = vec!["gaplab"];
    argv.extend_from_slice(args);
    execute(argv).unwrap().report
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&report(args)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.txt");
    let mut argv = vec!["gaplab".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.extend(["--output".to_string(), out.display().to_string()]);
    run(argv)
}

fn decimal(v: &Value) -> f64 {
    v.to_string().parse().unwrap()
}

#[test]
fn golden_derive_k1() {
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/derive_k1.json")).unwrap();
    assert_eq!(report(&["derive", "--k", "1"]), golden);

    let v: Value = serde_json::from_str(&golden).unwrap();
    let c = &v["result"]["c_LG"];
    // endpoints compared as decimal strings against the oracle's leading digits
    let (lo, hi) = (c["value_lo"].to_string(), c["value_hi"].to_string());
    let oracle: f64 = C_LG_ORACLE.parse().unwrap();
    assert!(decimal(&c["value_lo"]) <= oracle && oracle <= decimal(&c["value_hi"]));
    assert_eq!(&lo[..30], &C_LG_ORACLE[..30]);
    assert_eq!(&hi[..30], &C_LG_ORACLE[..30]);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["derive", "--k", "1"]), 0);
    assert_eq!(code(&["derive", "--k", "0"]), 2);
    assert_eq!(code(&["derive", "--k", "one"]), 2);
    assert_eq!(code(&["derive", "--k", "1", "--log2-x", "100"]), 3);
    assert_eq!(code(&["gaps", "--x", "3", "--k", "2"]), 2);
    assert_eq!(code(&["zero-constants", "--c-zfr", "1/10"]), 3);
    assert_eq!(code(&["construct", "--x", "1000000"]), 2);
    assert_eq!(code(&["construct", "--x", "1000000", "--evaluate-only", "true"]), 0);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["derive", "--format", "xml"]), 2);
}

#[test]
fn maynard_report() {
    let v = json(&["maynard", "--r", "2", "--degree", "0"]);
    assert_eq!(v["result"]["ratio_exact"], "2/3");
    assert_eq!(v["result"]["basis_size"], 1);
    assert_eq!(v["result"]["c_IJ_check"]["pass"], true);
}

#[test]
fn config_file_layers_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# toy run\nr = 3\ndegree = 1\n").unwrap();
    let v = json(&["maynard", "--config", cfg.to_str().unwrap(), "--degree", "0"]);
    assert_eq!(v["config"]["r"], "3");
    assert_eq!(v["config"]["degree"], "0");
    assert_eq!(v["result"]["ratio_exact"], "1/2");

    std::fs::write(&cfg, "r = 3\nbogus = 1\n").unwrap();
    assert_eq!(code(&["maynard", "--config", cfg.to_str().unwrap()]), 2);
}

#[test]
fn json_and_csv_share_midpoints() {
    let v = json(&["derive", "--k", "2"]);
    let csv_text = report(&["derive", "--k", "2", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["name", "midpoint", "radius", "formula"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    for node in v["result"]["trace"]["nodes"].as_array().unwrap() {
        let name = node["name"].as_str().unwrap();
        let row = rows.iter().find(|r| &r[0] == name).unwrap();
        assert_eq!(row[1], node["midpoint"].to_string(), "{name}");
    }
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec!["derive", "--k", "3"],
        vec!["ub-pairs", "--x", "7", "--z", "500", "--pairs", "5", "--seed", "11"],
        vec!["construct", "--x", "3000", "--c", "1", "--smin", "7", "--seed", "4", "--format", "csv"],
    ] {
        assert_eq!(report(&args), report(&args));
    }
    let a = report(&["ub-pairs", "--x", "7", "--z", "500", "--pairs", "5", "--seed", "11", "--threads", "1"]);
    let b = report(&["ub-pairs", "--x", "7", "--z", "500", "--pairs", "5", "--seed", "11", "--threads", "1"]);
    assert_eq!(a, b);
}

#[test]
fn binary_writes_into_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let members = dir.path().join("t.txt");
    let status = Command::new(env!("CARGO_BIN_EXE_gaplab"))
        .args(["construct", "--x", "100", "--y", "200", "--z", "2", "--strategy", "zero", "--members"])
        .arg(&members)
        .env("GAPLAB_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("construct.json")).unwrap()).unwrap();
    assert_eq!(v["result"]["regime"], Value::Null);
    assert_eq!(v["result"]["system"]["regime"], "toy-regime");
    let listed: Vec<u64> = std::fs::read_to_string(&members).unwrap().lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(listed.len() as u64, v["result"]["T_size"].as_u64().unwrap());
    assert_eq!(listed.first(), Some(&101));

    let status = Command::new(env!("CARGO_BIN_EXE_gaplab")).args(["derive", "--k", "0"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
}
