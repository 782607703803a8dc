use std::path::PathBuf;
use std::process::{Command, Output};

fn kframe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kframe")).args(args).output().expect("spawn kframe")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("kframe-cli-{}-{name}", std::process::id()))
}

#[test]
fn eval_examples() {
    let o = kframe(&["eval", "qform", "--form", "d", "--word", "a1 b1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1");
    assert_eq!(stdout(&kframe(&["eval", "k", "--form", "d", "--phi", "twist_a:1"])), "B1*");
    assert_eq!(stdout(&kframe(&["eval", "word", "--word", "a1 a1' b1"])), "b1");
    assert_eq!(stdout(&kframe(&["eval", "word", "--word", "a1 a1'"])), "");
    assert_eq!(stdout(&kframe(&["eval", "word", "--word", "b1 a1", "--json"])), "\"b1 a1\"");
}

#[test]
fn eval_tau_and_expansion() {
    let o = kframe(&["eval", "tau", "--phi", "twist_a:1"]);
    assert_eq!(stdout(&o), "A1*⊗(-A1A1) + B1*⊗(A1B1 + B1A1)");
    let o = kframe(&["eval", "expansion", "--word", "a1"]);
    assert_eq!(stdout(&o), "1 + A1 + A1B1");
    let o = kframe(&["eval", "qform", "--form", "d", "--word", "a2 b2", "--ring", "Z/5"]);
    assert_eq!(stdout(&o), "1");
}

#[test]
fn eval_reports_parse_positions() {
    let o = kframe(&["eval", "word", "--word", "a1 x"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("at 3"));
    let o = kframe(&["eval", "k", "--form", "d", "--phi", "twist_a:x"]);
    assert!(!o.status.success());
}

#[test]
fn verify_examples_exit_zero() {
    let path = tmp("tauc.json");
    let p = path.to_str().unwrap();
    let o = kframe(&["verify", "--ring", "Q", "--g", "2", "--n", "0", "--seed", "7", "--cases", "50", "--identities", "tauc,nutau", "--json", p]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["results"].as_array().unwrap().len(), 100);
    assert_eq!(report["config"]["ring"], "Q");
    std::fs::remove_file(&path).ok();

    assert!(kframe(&["verify", "--ring", "Z/2", "--g", "1", "--n", "0", "--identities", "mod2-descent"]).status.success());

    let o = kframe(&["verify", "--ring", "Q", "--g", "2", "--identities", "certificate", "--json", tmp("cert.json").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("-1 = χ(S)"));
    std::fs::remove_file(tmp("cert.json")).ok();
}

#[test]
fn verify_rejects_bad_configs() {
    let o = kframe(&["verify", "--ring", "Q", "--g", "2", "--n", "1", "--identities", "tauc"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n = 0"));
    assert_eq!(kframe(&["verify", "--ring", "Z/0", "--identities", "ph"]).status.code(), Some(2));
    assert_eq!(kframe(&["verify", "--identities", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_fails_on_non_w3s_theta() {
    let path = tmp("flat.json");
    let theta = r#"{"ring":"Z","g":1,"N":3,"theta":{"a1":[],"b1":[]}}"#;
    std::fs::write(&path, theta).unwrap();
    let o = kframe(&[
        "verify", "--ring", "Z", "--g", "1", "--cases", "1", "--identities", "tauc",
        "--theta", path.to_str().unwrap(), "--phi", "twist_a:1",
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["results"][0]["defect"], "2B1*");
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--ring", "Z/6", "--g", "2", "--seed", "11", "--cases", "5", "--identities", "all"];
    let a = kframe(&args);
    let b = kframe(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}
