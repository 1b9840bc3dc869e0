use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use resring::{Configuration, GradedFreeResolution, MultiplicationTable, OmegaTensor};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_resring"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("resring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn resolve_standard_and_etale() {
    let v = json_of(&run(&["resolve", "--standard", "5"]));
    let f: GradedFreeResolution = serde_json::from_value(v["resolution"].clone()).unwrap();
    assert_eq!(f.ranks(), &[1, 5, 5, 1]);
    let c: Configuration = serde_json::from_value(v["configuration"].clone()).unwrap();
    assert_eq!(c, Configuration::standard(5).unwrap());
    assert_eq!(
        v["provenance"]["resolution_sha256"].as_str().unwrap().len(),
        64
    );

    let v = json_of(&run(&["resolve", "--etale", "t^4-t-1"]));
    let f: GradedFreeResolution = serde_json::from_value(v["resolution"].clone()).unwrap();
    assert_eq!(f.ranks(), &[1, 2, 1]);
}

#[test]
fn bad_inputs_exit_with_code_two() {
    let bad = scratch(
        "points_bad.json",
        r#"{"kind":"points","n":3,"points":[["1","0"],["2","0"],["0","1"]]}"#,
    );
    let out = run(&["resolve", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("general position"));

    let malformed = scratch("malformed.json", "{ not json");
    assert_eq!(
        run(&["disc", malformed.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["resolve", "--etale", "t^4-2t^2+1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["resolve"]).status.code(), Some(2));
}

#[test]
fn points_from_file_and_stdin() {
    let text = serde_json::to_string(&Configuration::standard(4).unwrap()).unwrap();
    let path = scratch("four.json", &text);
    let a = json_of(&run(&["resolve", "--points", path.to_str().unwrap()]));
    let mut child = bin()
        .args(["resolve", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    let b = json_of(&child.wait_with_output().unwrap());
    assert_eq!(a["resolution"], b["resolution"]);
}

#[test]
fn omega_output_round_trips() {
    let v = json_of(&run(&["omega", "--standard", "6"]));
    let om: OmegaTensor = serde_json::from_value(v.clone()).unwrap();
    assert!(om.ratio_to(&OmegaTensor::standard(6).unwrap()).is_some());
    assert_eq!(serde_json::to_value(&om).unwrap(), v);
}

#[test]
fn tables() {
    let v = json_of(&run(&["table", "--standard", "4", "--scale", "hessian"]));
    let t: MultiplicationTable = serde_json::from_value(v["table"].clone()).unwrap();
    assert_eq!(t.c(1, 1, 2).to_string(), "-2");
    assert_eq!(serde_json::to_value(&t).unwrap(), v["table"]);
    assert_eq!(v["provenance"]["scale"], "hessian");

    let v = json_of(&run(&[
        "table", "--etale", "t^3-t-1", "--scale", "bhargava",
    ]));
    let t: MultiplicationTable = serde_json::from_value(v["table"].clone()).unwrap();
    assert_eq!(t.n(), 3);

    let v = json_of(&run(&[
        "table",
        "--standard",
        "5",
        "--normalize",
        "pairwise",
    ]));
    let t: MultiplicationTable = serde_json::from_value(v["table"].clone()).unwrap();
    for p in [1, 3] {
        assert_eq!(t.c(p, p, p + 1).to_string(), "0");
        assert_eq!(t.c(p + 1, p, p + 1).to_string(), "0");
    }
    assert_eq!(v["table"]["basis_note"], "pairwise");
    assert!(v["provenance"]["shear"].is_array());
}

#[test]
fn discriminants() {
    let out = run(&["disc", "--cubic", "1", "0", "-1", "-1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "-23");

    let out = run(&["disc", "--standard", "5", "--orders"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("ratio    = 100000000"), "{text}");

    let v = json_of(&run(&["table", "--standard", "4"]));
    let path = scratch("table4.json", &v.to_string());
    let out = run(&["disc", path.to_str().unwrap()]);
    assert!(out.status.success());
    let t: MultiplicationTable = serde_json::from_value(v["table"].clone()).unwrap();
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        t.discriminant().to_string()
    );
}

#[test]
fn verify_suites() {
    let v = json_of(&run(&[
        "verify",
        "--suite",
        "symmetries",
        "--n",
        "6",
        "--seed",
        "42",
        "--cases",
        "10",
    ]));
    assert_eq!(v["passed"], true);
    let v = json_of(&run(&[
        "verify", "--suite", "endtoend", "--n", "4..6", "--seed", "7",
    ]));
    assert_eq!(v["passed"], true);
    let v = json_of(&run(&["verify", "--suite", "table1", "--n", "5"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["options"]["ns"], serde_json::json!([5]));
}

#[test]
fn classical_subcommands() {
    let v = json_of(&run(&["classical", "cubic", "1", "0", "-1", "-1"]));
    assert_eq!(v["discriminant"], "-23");

    let x = |i: usize| resring::Polynomial::var(3, i);
    let a = x(0).mul(&x(1).sub(&x(2)));
    let b = x(1).mul(&x(0).sub(&x(2)));
    let pa = scratch("A.json", &serde_json::to_string(&a).unwrap());
    let pb = scratch("B.json", &serde_json::to_string(&b).unwrap());
    let v = json_of(&run(&[
        "classical",
        "quartic",
        pa.to_str().unwrap(),
        pb.to_str().unwrap(),
    ]));
    assert!(v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));

    let phi = resring::random::alternating_linear(&mut resring::random::rng(5));
    let pp = scratch("Phi.json", &serde_json::to_string(&phi).unwrap());
    let v = json_of(&run(&["classical", "quintic", pp.to_str().unwrap()]));
    assert!(v["table"].is_object());
}
