use std::path::PathBuf;
use std::process::Command;

use orekit::report::VerificationReport;

fn orekit(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_orekit")).args(args).output().expect("binary runs");
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn config(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name).display().to_string()
}

fn report(json: &str) -> VerificationReport {
    serde_json::from_str(json).expect("valid report")
}

#[test]
fn lattice_json_report() {
    let (code, out, _) = orekit(&["lattice", "--ring", "zmod:6"]);
    assert_eq!(code, 0);
    let rep = report(&out);
    assert_eq!((rep.version, rep.suite.as_str()), (1, "lattice"));
    assert_eq!(rep.checks[1].witness["udim"], 2);
}

#[test]
fn same_seed_same_json() {
    let args = ["lattice", "--config", &config("lattice_z12.toml"), "--seed", "5"];
    let (_, a, _) = orekit(&args);
    let (_, b, _) = orekit(&args);
    assert_eq!(report(&a).without_timing(), report(&b).without_timing());
}

#[test]
fn broken_closure_exits_one_with_pair() {
    let (code, out, _) = orekit(&["special", "--config", &config("broken_closure.toml")]);
    assert_eq!(code, 1);
    let rep = report(&out);
    let w = &rep.checks[0].witness;
    assert!(w["left"].is_string() && w["right"].is_string() && w["offending"].is_string(), "{w}");
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(orekit(&["lattice", "--ring", "zmod:0"]).0, 2);
    assert_eq!(orekit(&["nosuch"]).0, 2);
    assert_eq!(orekit(&["family5", "--p", "4"]).0, 2);
    assert_eq!(orekit(&["lattice", "--config", &config("family5_default.toml")]).0, 2);
}

#[test]
fn text_output_to_file() {
    let path = std::env::temp_dir().join(format!("orekit-cli-{}.txt", std::process::id()));
    let p = path.display().to_string();
    let (code, out, _) = orekit(&["examples", "--example", "example2", "--format", "text", "--out", &p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.contains("u·u = xyz^2"), "{text}");
    assert!(text.contains("overall: pass"));
}

#[test]
fn family5_overrides() {
    let (code, out, _) = orekit(&["family5", "--p", "2", "--r", "2", "--e", "3", "--c", "1", "--d", "2", "--suite", "order,closure"]);
    assert_eq!(code, 0);
    let rep = report(&out);
    assert_eq!(rep.params["family5"]["e"], 3);
    assert!(rep.checks.iter().all(|c| c.name.contains("order") || c.name.contains("closure") || c.name.contains("pairwise")));
}
