use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use stacky::InputDocument;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn stacky(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stacky")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let o = stacky(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn gale_dual_golden() {
    let out = run_ok(&["gale-dual", data("m11.json").to_str().unwrap()]);
    assert_eq!(out.lines().next(), Some("DG = Z; beta_vee = [6 4]"));
    let out = run_ok(&["gale-dual", data("z3-split.json").to_str().unwrap()]);
    assert_eq!(out.lines().next(), Some("DG = Z + Z/3; beta_vee = [1 1; 0 0]"));
}

#[test]
fn orbifold_chow_golden() {
    let out = run_ok(&["orbifold-chow", data("p121.json").to_str().unwrap()]);
    assert_eq!(out.lines().next(), Some("dims: 0: 1, 1: 2, 2: 1"));
    let table = run_ok(&["orbifold-chow", "--table", data("p121.json").to_str().unwrap()]);
    assert!(table.contains("e2 * e2 = e4"));
    assert!(table.contains("e3 * e3 = e4"));
    assert!(!table.contains("e2 * e3"));
    let m11 = run_ok(&["orbifold-chow", data("m11.json").to_str().unwrap()]);
    assert_eq!(m11.lines().next(), Some("dims: 0: 2, 1/3: 2, 1/2: 2, 2/3: 2, 1: 2"));
}

#[test]
fn exit_codes() {
    let o = stacky(&["validate", data("dependent.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("DependentGenerators"));

    let bad = std::env::temp_dir().join(format!("stacky-bad-{}.json", std::process::id()));
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(stacky(&["validate", bad.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_file(&bad).ok();
    assert_eq!(stacky(&["validate", "/nonexistent/file.json"]).status.code(), Some(1));

    assert_eq!(stacky(&["crepant-compare", data("p121-f2.json").to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(stacky(&["crepant-compare", data("p121.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(stacky(&["crepant-compare", data("octant-twisted.json").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn json_errors_name_the_invariant() {
    let o = stacky(&["--json", "validate", data("dependent.json").to_str().unwrap()]);
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "DependentGenerators");
}

#[test]
fn reports_round_trip() {
    let commands: &[&[&str]] = &[
        &["validate"],
        &["gale-dual"],
        &["box"],
        &["sectors"],
        &["chow"],
        &["orbifold-chow", "--table"],
        &["moduli"],
    ];
    for file in ["p121.json", "m11.json", "z3-twisted.json"] {
        for cmd in commands {
            let path = data(file);
            let mut args = vec!["--json"];
            args.extend_from_slice(cmd);
            args.push(path.to_str().unwrap());
            let out = run_ok(&args);
            let v: Value = serde_json::from_str(&out).unwrap();
            let doc: InputDocument = serde_json::from_value(v["input"].clone()).unwrap();
            doc.stacky_fan().unwrap();
            let original = InputDocument::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
            assert_eq!(doc, original.normalized().unwrap(), "{file} {cmd:?}");
        }
    }
    let out = run_ok(&["--json", "crepant-compare", data("p121-f2.json").to_str().unwrap()]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let doc: InputDocument = serde_json::from_value(v["input"].clone()).unwrap();
    doc.subdivision_pair().unwrap();
    assert_eq!(v["equal"], true);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["orbifold-chow", "--table"],
        vec!["--json", "moduli"],
        vec!["--json", "crepant-compare"],
        vec!["sectors"],
    ] {
        let file = if args.contains(&"crepant-compare") { "p1113-resolved.json" } else { "m11.json" };
        let path = data(file);
        let mut full = args.clone();
        full.push(path.to_str().unwrap());
        assert_eq!(run_ok(&full), run_ok(&full));
    }
}

#[test]
fn box_and_sectors_tables() {
    let out = run_ok(&["box", data("p121.json").to_str().unwrap()]);
    assert!(out.starts_with("2 box elements\n"));
    assert!(out.contains("(0,1)    {1,3}  1/2*b1 + 1/2*b3  1"));
    let out = run_ok(&["sectors", data("m11.json").to_str().unwrap()]);
    assert!(out.starts_with("8 sectors\n"));
    let out = run_ok(&["chow", data("f2.json").to_str().unwrap()]);
    assert!(out.contains("agree: yes"));
    let out = run_ok(&["--json", "moduli", data("p121.json").to_str().unwrap()]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 4);
}
