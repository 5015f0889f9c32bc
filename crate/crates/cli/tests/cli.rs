use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn weightlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weightlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const W: &str = r#"{"kind": "dense", "mu": "0", "tau0": "-1/4"}"#;
const L2: &str = r#"{"kind": "finite", "highest": [2]}"#;

fn descriptor(factors: &[(&str, &str)]) -> String {
    let f: Vec<String> = factors.iter().map(|(p, m)| format!(r#"{{"point": ["{p}"], "module": {m}}}"#)).collect();
    format!(r#"{{"ring": {{"vars": 1, "ideal": []}}, "g": "A1", "factors": [{}]}}"#, f.join(","))
}

#[test]
fn rootsys_commands() {
    let o = weightlab(&["rootsys", "info", "--type", "A2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("roots 6 (positive 3)"));
    assert!(stdout(&o).contains("bases 6"));
    let o = weightlab(&["rootsys", "verify-gamma", "--type", "G2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no counterexample"));
    assert_eq!(weightlab(&["rootsys", "info", "--type", "D3"]).status.code(), Some(1));
}

#[test]
fn shadow_commands() {
    let o = weightlab(&["shadow", "verify", "--type", "B2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 counterexamples"));
    assert_eq!(weightlab(&["shadow", "verify", "--type", "F4"]).status.code(), Some(1));
    assert_eq!(weightlab(&["shadow", "verify", "--type", "F4", "--samples", "30", "--seed", "3"]).status.code(), Some(0));
}

#[test]
fn weightmod_commands() {
    let o = weightlab(&["weightmod", "dense-check", "--mu", "0", "--tau0", "-1/4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("simple true"));
    assert!(stdout(&o).contains("casimir -1/2"));
    let o = weightlab(&["weightmod", "freudenthal", "--type", "A2", "--highest", "1,1"]);
    assert!(stdout(&o).starts_with("dim 8 (Weyl 8)"));
    assert!(stdout(&o).contains("0,0\t2"));
}

#[test]
fn evaluation_and_admissibility() {
    let dir = TempDir::new().unwrap();
    let ww = write(&dir, "ww.json", &descriptor(&[("0", W), ("1", W)]));
    let lw = write(&dir, "lw.json", &descriptor(&[("0", L2), ("1", W)]));
    let ww_s = ww.to_str().unwrap();
    let o = weightlab(&["eval", "mult", "--descriptor", ww_s, "--weight", "0", "--window", "10"]);
    assert_eq!(stdout(&o).trim(), "INFINITE (windowed 21)");
    assert_eq!(weightlab(&["eval", "mult", "--descriptor", ww_s, "--weight", "0"]).status.code(), Some(1));

    let o = weightlab(&["admissible", "classify", "--descriptor", ww_s, "--window", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("opposite-directions"));
    assert!(stdout(&o).contains("5\t(0)\t11 (infinite)"));
    let o = weightlab(&["admissible", "classify", "--descriptor", lw.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bound"], 3);
}

#[test]
fn classify_commands() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &descriptor(&[("1", L2), ("2", W)]));
    let b = write(&dir, "b.json", &descriptor(&[("2", W), ("1", L2)]));
    let c = write(&dir, "c.json", &descriptor(&[("3", L2), ("2", W)]));
    let (a, b, c) = (a.to_str().unwrap(), b.to_str().unwrap(), c.to_str().unwrap());
    assert_eq!(weightlab(&["classify", "iso", "--a", a, "--b", b]).status.code(), Some(0));
    assert_eq!(weightlab(&["classify", "iso", "--a", a, "--b", c]).status.code(), Some(3));
    let o = weightlab(&["classify", "canon", "--descriptor", b]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["support"][0]["point"][0], "1");
    assert_eq!(v["support"][1]["label"]["casimir"], "-1/2");
}

#[test]
fn ucext_and_errors() {
    let dir = TempDir::new().unwrap();
    let alg = write(
        &dir,
        "t3.json",
        r#"{"basis": ["1","t","t2"],
            "mult_table": [[["1","0","0"],["0","1","0"],["0","0","1"]],
                           [["0","1","0"],["0","0","1"],["0","0","0"]],
                           [["0","0","1"],["0","0","0"],["0","0","0"]]],
            "unit": ["1","0","0"]}"#,
    );
    let o = weightlab(&["ucext", "dim", "--algebra", alg.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(0), "0".to_string()));
    let bad = write(&dir, "bad.json", "{not json");
    assert_eq!(weightlab(&["classify", "canon", "--descriptor", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(weightlab(&["classify", "canon", "--descriptor", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(weightlab(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn verify_all_exit_codes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.jsonl");
    let o = weightlab(&["verify-all", "--max-rank", "1", "--window", "10", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 11);
    let o = weightlab(&["verify-all", "--max-rank", "2", "--window", "10", "--inject-fault", "--no-timing"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).lines().any(|l| l.contains("\"c01_gamma_lemma\"") && l.contains("\"fail\"")));
}
