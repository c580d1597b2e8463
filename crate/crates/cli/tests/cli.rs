use std::fs;
use std::path::Path;
use std::process::Command;

use frobcat_cli::run;

fn emit(tag: &str, dir: &Path) {
    let out = run(["frobcat", "fixtures", "emit", tag, dir.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

fn call(dir: &Path, args: &[&str]) -> frobcat_cli::Outcome {
    let mut argv = vec!["frobcat", "--project", dir.to_str().unwrap()];
    argv.extend_from_slice(args);
    run(argv)
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn emit_then_validate_every_fixture() {
    let tmp = tempfile::tempdir().unwrap();
    for tag in ["semi", "pa2", "pa2-deg", "pa3"] {
        let d = tmp.path().join(tag);
        emit(tag, &d);
        let out = call(&d, &["validate"]);
        assert_eq!(out.code, 0, "{tag}: {}", out.stderr);
        assert!(out.stdout.contains("context ok"));
    }
    assert_eq!(run(["frobcat", "fixtures", "emit", "nope", tmp.path().to_str().unwrap()]).code, 2);
}

#[test]
fn predicates_on_pa2() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    emit("pa2", d);
    let zero_s2 = write(d, "f.json", r#"{"source": "0", "target": "S2"}"#);
    let out = call(d, &["weq", "--morphism", &zero_s2]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "true\n"));
    let out = call(d, &["fib", "--morphism", &zero_s2]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "false\n"));
    let id = write(d, "id.json", r#"{"source": "S2", "target": "S2", "comps": {"2": ["1"]}}"#);
    let zero = write(d, "zero.json", r#"{"source": "S2", "target": "S2"}"#);
    let out = call(d, &["homotopic", "--f", &id, "--g", &zero]);
    assert_eq!(out.stdout, "true\n");
    let id1 = write(d, "id1.json", r#"{"source": "S1", "target": "S1", "comps": {"1": ["1"]}}"#);
    let zero1 = write(d, "zero1.json", r#"{"source": "S1", "target": "S1"}"#);
    assert_eq!(call(d, &["homotopic", "--f", &id1, "--g", &zero1]).code, 1);
    assert_eq!(call(d, &["hom", "P1", "P2"]).stdout, "dim Hom(P1, P2) = 1\n");
    assert_eq!(call(d, &["ext", "S1", "S1"]).stdout, "dim Ext1(S1, S1) = 0\n");
    assert_eq!(call(d, &["ext", "S1", "S2"]).stdout, "dim Ext1(S1, S2) = 1\n");
    assert_eq!(call(d, &["ho-hom", "S1", "S1"]).stdout, "dim Ho(S1, S1) = 1\n");
    assert_eq!(call(d, &["cofibrant", "S2"]).code, 0);
    let out = call(d, &["replace", "S1+S2"]);
    assert!(out.stdout.contains("fibration: true") && out.stdout.contains("epi: true"), "{}", out.stdout);
    let f = write(d, "p.json", r#"{"source": "P1", "target": "S1", "comps": {"1": ["1"]}}"#);
    for cmd in ["factor1", "factor2"] {
        let out = call(d, &["--json", cmd, "--morphism", &f]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["recomposes"], true);
    }
}

#[test]
fn dl_verify_and_axioms() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    emit("pa2", d);
    let out = call(d, &["dl-verify", "--all-pairs"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(out.stdout.matches("PASS").count(), 16);
    assert!(out.stdout.contains("(S1, S1) ho=1 mod=1 PASS"));
    let out = call(d, &["dl-verify", "S1", "S2"]);
    assert!(out.stdout.contains("(S1, S2) ho=0 mod=0 PASS"));
    assert_eq!(call(d, &["dl-verify", "S1"]).code, 2);
    let out = call(d, &["axioms", "--check", "two_out_of_three", "--samples", "20"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("two_out_of_three"));
    assert_eq!(call(d, &["axioms", "--check", "nope"]).code, 2);
}

#[test]
fn json_output_is_stable() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    emit("pa2", d);
    let a = call(d, &["--json", "axioms", "--samples", "10", "--seed", "5"]);
    let b = call(d, &["--json", "axioms", "--samples", "10", "--seed", "5"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["tool_version"].is_string());
}

#[test]
fn rejected_inputs_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    emit("pa2", d);
    let cfg = fs::read_to_string(d.join("project.json")).unwrap();
    fs::write(d.join("project.json"), cfg.replace("\"P1\",\n    \"P2\",\n    \"S1\"", "\"S2\"")).unwrap();
    let out = call(d, &["validate"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("hypotheses not satisfied"), "{}", out.stderr);
    assert_eq!(run(["frobcat", "frobnicate"]).code, 2);
    assert_eq!(call(&tmp.path().join("missing"), &["validate"]).code, 2);
}

#[test]
fn binary_reports_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let bin = env!("CARGO_BIN_EXE_frobcat");
    let out = Command::new(bin).args(["fixtures", "emit", "semi", d.to_str().unwrap()]).output().unwrap();
    assert!(out.status.success());
    let out = Command::new(bin).args(["--project", d.to_str().unwrap(), "validate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin).args(["--project", d.to_str().unwrap(), "hom", "S", "Q"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
