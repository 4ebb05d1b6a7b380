use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const Q8_COVER: &str = "cover perm 8\n2 3 4 1 6 7 8 5\n5 8 7 6 3 2 1 4\ncentral g1^2\n";

fn twisthh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twisthh")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    twisthh(args).status.code().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["compute", "--help"]), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&[]), 1);
    assert_eq!(code(&["compute", "--cover", "builtin:SL25"]), 1);
    assert_eq!(code(&["compute", "--cover", "builtin:SL25", "--prime", "5", "--twist", "0", "--all-twists"]), 1);
    assert_eq!(code(&["compute", "--cover", "builtin:NOPE", "--prime", "5"]), 1);
    assert_eq!(code(&["compute", "--cover", "builtin:SL25", "--prime", "6"]), 1);
    assert_eq!(code(&["compute", "--cover", "builtin:SL25", "--prime", "5", "--twist", "2"]), 1);
    assert_eq!(code(&["compute", "--cover", "perm:/nonexistent/file", "--prime", "5"]), 1);
}

#[test]
fn compute_table_lists_every_twist() {
    let out = twisthh(&["compute", "--cover", "builtin:SL25", "--prime", "5", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    for col in ["group", "cover", "Z (m)", "p", "i", "dim", "hh0", "oracle"] {
        assert!(header.contains(col), "{col}");
    }
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("A5")).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[1].split_whitespace().collect::<Vec<_>>().ends_with(&["1", "2", "4", "2"]));
}

#[test]
fn json_schema_and_csv_agree() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let args = [
        "compute",
        "--cover",
        "builtin:SL23",
        "--prime",
        "3",
        "--oracle",
        "--json",
        path_str(&json),
        "--csv",
        path_str(&csv),
    ];
    assert_eq!(code(&args), 0);

    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    for key in ["group", "cover", "p", "m", "twists", "checks"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["m"], 2);
    assert_eq!(v["checks"]["oracle"], "ok");
    assert_eq!(v["checks"]["sum_rule"], true);
    let twists = v["twists"].as_array().unwrap();
    assert_eq!(twists.len(), 2);
    assert_eq!(twists[1]["dim"], 3);

    let mut rdr = csv::Reader::from_path(&csv).unwrap();
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        headers,
        ["group", "cover", "p", "m", "i", "dim", "rep", "regular", "class_dim", "sum_rule", "symmetry", "oracle"]
    );
    let records: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let expected: usize = twists.iter().map(|t| t["classes"].as_array().unwrap().len()).sum();
    assert_eq!(records.len(), expected);
    let mut k = 0;
    for t in twists {
        for c in t["classes"].as_array().unwrap() {
            let r = &records[k];
            assert_eq!(r[4], t["i"].to_string());
            assert_eq!(r[5], t["dim"].to_string());
            assert_eq!(r[6], c["rep"].to_string());
            assert_eq!(r[7], c["regular"].to_string());
            assert_eq!(r[8], c["dim"].to_string());
            k += 1;
        }
    }
}

#[test]
fn single_twist_reports_one_entry() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    assert_eq!(
        code(&["compute", "--cover", "builtin:C12/3", "--prime", "2", "--twist", "2", "--json", path_str(&json)]),
        0
    );
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let twists = v["twists"].as_array().unwrap();
    assert_eq!(twists.len(), 1);
    assert_eq!(twists[0]["i"], 2);
}

#[test]
fn cover_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("q8.cov");
    std::fs::write(&good, Q8_COVER).unwrap();
    let spec = format!("cover:{}", path_str(&good));
    assert_eq!(code(&["compute", "--cover", &spec, "--prime", "3", "--oracle"]), 0);

    let bad = dir.path().join("bad.cov");
    std::fs::write(&bad, Q8_COVER.replace("g1^2", "g1")).unwrap();
    let out = twisthh(&["compute", "--cover", &format!("cover:{}", path_str(&bad)), "--prime", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not central"));
}

#[test]
fn certify_exit_codes() {
    assert_eq!(code(&["certify", "--cover", "builtin:SL27", "--prime", "7"]), 0);
    assert_eq!(code(&["certify", "--cover", "builtin:A5", "--prime", "7"]), 1);
    assert_eq!(code(&["certify", "--cover", "builtin:SL25", "--prime", "2"]), 1);

    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("w.json");
    assert_eq!(code(&["certify", "--cover", "builtin:A5", "--prime", "5", "--json", path_str(&json)]), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let w = v.as_array().unwrap();
    assert!(!w.is_empty());
    for key in ["x", "kind", "hom_rank", "regular_all_twists"] {
        assert!(w[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn group_summary() {
    let out = twisthh(&["group", "--group", "builtin:A5", "--prime", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Non-Schur"));
    let row: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(row, ["A5", "60", "2", "2", "5"]);
}

#[test]
fn selftest_fault_produces_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("s.json");
    let out = twisthh(&["selftest", "--no-data", "--inject-fault", "corrupt-cocycle", "--json", path_str(&json)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("failure manifest"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(v["outcomes"].as_array().unwrap().iter().any(|o| o["status"] == "fail"));
}
