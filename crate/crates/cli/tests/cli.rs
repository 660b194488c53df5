use std::path::PathBuf;
use std::process::{Command, Output};

fn crys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crys")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("crys-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn build_reports_dimension() {
    let out = crys(&["build", "--family", "theorem1", "--factors", "2^3", "--m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dimension"], 8);
    assert_eq!(v["nonsplit"], true);
}

#[test]
fn hypothesis_violations_exit_2() {
    let cases: [(&[&str], &str); 5] = [
        (&["build", "--family", "theorem2", "--p", "2"], "requires p > 2"),
        (&["build", "--family", "theorem1", "--factors", "2^2"], "requires n_1 >= 3"),
        (&["build", "--family", "theorem1", "--factors", "2^3,3^1"], "requires n_2 >= 2"),
        (&["build", "--family", "theorem1", "--factors", "4^3"], "requires prime"),
        (&["build", "--family", "theorem3", "--n", "0"], "requires n >= 1"),
    ];
    for (args, msg) in cases {
        let out = crys(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr(&out).contains(msg), "{args:?}: {}", stderr(&out));
    }
    assert_eq!(crys(&["build", "--family", "nope"]).status.code(), Some(2));
    assert_eq!(crys(&["verify", "--family", "theorem3", "--n", "1", "--checks", "bogus"]).status.code(), Some(2));
    assert_eq!(crys(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_theorem3_torsionfree_and_indecomposable() {
    let out = crys(&["verify", "--family", "theorem3", "--n", "1", "--checks", "torsionfree,indecomposable"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    assert_eq!(v["all_passed"], true);
}

#[test]
fn failing_check_exits_1() {
    let out = crys(&["verify", "--family", "theorem2", "--p", "3", "--n", "1", "--checks", "indecomposable"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn round_trip_matches_in_memory() {
    let bundle = scratch("t2.json");
    let b = bundle.to_str().unwrap();
    assert_eq!(crys(&["build", "--family", "theorem2", "--p", "3", "--n", "0", "--out", b]).status.code(), Some(0));
    let from_file = crys(&["verify", b, "--seed", "9"]);
    let in_memory = crys(&["verify", "--family", "theorem2", "--p", "3", "--n", "0", "--seed", "9"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, in_memory.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["oracle", "--family", "theorem1", "--factors", "2^3", "--seed", "42", "--samples", "50"];
    let a = crys(&args);
    let b = crys(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    let c = crys(&["build", "--family", "theorem3", "--n", "2"]);
    assert_eq!(c.stdout, crys(&["build", "--family", "theorem3", "--n", "2"]).stdout);
}

#[test]
fn report_renders_table() {
    let certs = scratch("certs.json");
    let c = certs.to_str().unwrap();
    let out = crys(&["verify", "--family", "theorem1", "--factors", "2^3", "--out", c]);
    assert_eq!(out.status.code(), Some(0));
    let out = crys(&["report", c]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["relations", "faithful", "cocycle", "torsionfree", "indecomposable", "dimension"] {
        assert!(text.lines().any(|l| l.starts_with(name) && l.contains("PASS")), "{name}\n{text}");
    }
}

#[test]
fn workdir_override() {
    let dir = scratch("wd");
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_crys"))
        .args(["build", "--family", "theorem3", "--n", "1", "--out", "b.json"])
        .env("CRYS_WORKDIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.join("b.json").exists());
}
