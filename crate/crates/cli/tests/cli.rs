use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn duality(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_duality")).args(args).env_remove("DUALITY_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn roundtrip_chain3_over_two_passes() {
    let o = duality(&["roundtrip", &data("chain3.toml"), "--mode", "pspa"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn literal_iv_fails_with_witness() {
    let o = duality(&["axioms", &data("chain3-lvl.toml"), "--literal-iv", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["verdicts"]["pass"], false);
    assert_eq!(r["verdicts"]["checks"]["clause_iv"]["pass"], false);
    assert!(r["witnesses"].as_array().unwrap().iter().any(|w| w["check"] == "clause_iv"));
    let amended = duality(&["axioms", &data("chain3-lvl.toml")]);
    assert_eq!(amended.status.code(), Some(0));
}

#[test]
fn missing_input_exits_two() {
    let o = duality(&["dualize", &data("missing.toml"), "--mode", "pspa"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn bad_usage_exits_two() {
    assert_eq!(duality(&["roundtrip", &data("chain3.toml"), "--mode", "nope"]).status.code(), Some(2));
    assert_eq!(duality(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(duality(&["--help"]).status.code(), Some(0));
}

#[test]
fn syntax_errors_report_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.toml");
    std::fs::write(&p, "kind = \"lattice\"\nname = \n").unwrap();
    let o = duality(&["check-lattice", &p.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn dangling_reference_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("lonely.toml");
    std::fs::write(&p, "kind = \"algebra\"\nname = \"lonely\"\nsignature = \"lvl\"\ntruth_lattice = \"nowhere\"\n[presentation]\ntype = \"lattice\"\n").unwrap();
    let o = duality(&["axioms", &p.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nowhere"));
}

#[test]
fn lattice_law_violations_are_failed_verdicts() {
    for f in ["n5.toml", "cycle.toml"] {
        let o = duality(&["check-lattice", &data(f), "--format", "machine"]);
        assert_eq!(o.status.code(), Some(1), "{f}");
        assert_eq!(json(&o)["verdicts"]["checks"]["bounded_distributive_lattice"]["pass"], false);
    }
}

#[test]
fn kripke_condition_distinguishes_full_power() {
    assert_eq!(duality(&["kripke-check", &data("power-v2.toml")]).status.code(), Some(1));
    assert_eq!(duality(&["kripke-check", &data("up-fork.toml")]).status.code(), Some(0));
}

#[test]
fn reports_record_inputs_with_digests() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = duality(&["spectrum", &data("b2.toml"), "--report", &report.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["command"], "spectrum");
    assert_eq!(r["inputs"][0]["name"], "b2");
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert!(r["timings"].as_object().unwrap().is_empty());
}

#[test]
fn emitted_dual_space_reconstructs_the_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let space = dir.path().join("g.toml");
    let o = duality(&["dualize", &data("up-fork.toml"), "--mode", "hspa", "--emit", &space.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = duality(&["roundtrip", &space.to_string_lossy(), "--mode", "hspa"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let alg = dir.path().join("c.toml");
    let o = duality(&["reconstruct", &space.to_string_lossy(), "--mode", "hspa", "--emit", &alg.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0));
    let o = duality(&["kripke-check", &alg.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn emit_without_document_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.toml");
    assert_eq!(duality(&["spectrum", &data("b2.toml"), "--emit", &out.to_string_lossy()]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_is_a_failed_verdict() {
    let o = duality(&["roundtrip", &data("chain3-lvl-sq.toml"), "--mode", "pbs", "--budget", "4"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let env = Command::new(env!("CARGO_BIN_EXE_duality"))
        .args(["roundtrip", &data("chain3-lvl-sq.toml"), "--mode", "pbs"])
        .env("DUALITY_BUDGET", "4")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(1));
    let bad = Command::new(env!("CARGO_BIN_EXE_duality"))
        .args(["spectrum", &data("b2.toml")])
        .env("DUALITY_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn small_corpus_runs_are_byte_identical() {
    let args = ["corpus-run", "--max-size", "5", "--seed", "3", "--pairs", "8", "--format", "machine"];
    let a = duality(&args);
    let b = duality(&args);
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(r["details"]["config"]["seed"], 3);
    assert_eq!(r["verdicts"]["checks"]["spectrum"]["pass"], true);
}

#[test]
fn homs_between_documents() {
    let o = duality(&["homs", &data("chain3.toml"), "--into", &data("b2.toml"), "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[0,a,1]"));
}
