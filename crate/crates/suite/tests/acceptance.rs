//! End-to-end acceptance: one line per criterion, non-zero exit if any fails.
//!
//! Criteria 1 to 8 read the in-process corpus report at the default
//! parameters; criterion 9 runs the `duality` binary twice.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use duality_core::corpus::{corpus_run, CorpusConfig, CorpusReport, SuiteReport};

// Bounded distributive lattices with 2..=7 elements: 1 + 1 + 2 + 3 + 5 + 8.
const LATTICES_UP_TO_7: usize = 20;
// Posets with 1..=4 points up to isomorphism: 1 + 2 + 5 + 16.
const FRAMES_UP_TO_4: usize = 24;

struct Outcome {
    pass: bool,
    detail: String,
}

fn suite<'a>(r: &'a CorpusReport, name: &str) -> &'a SuiteReport {
    r.suites.get(name).unwrap_or_else(|| panic!("suite {name} missing from report"))
}

fn ms(r: &CorpusReport, names: &[&str]) -> u128 {
    names.iter().map(|n| r.timings.get(*n).copied().unwrap_or(0)).sum()
}

fn describe(s: &SuiteReport) -> String {
    let mut d = format!("{}/{} instances", s.passed, s.instances);
    if let Some(f) = s.failures.first() {
        let checks: Vec<&str> = f.failures.keys().map(String::as_str).collect();
        d += &format!("; first failure {} [{}]", f.instance, checks.join(", "));
    }
    for n in &s.notes {
        d += &format!("; {n}");
    }
    d
}

/// Suites pass, expected instance count (if given), and wall clock under `limit_s`.
fn suites_criterion(r: &CorpusReport, names: &[&str], instances: Option<usize>, limit_s: u128) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in names {
        let s = suite(r, n);
        pass &= s.pass && s.passed == s.instances;
        if let Some(k) = instances {
            pass &= s.instances == k;
        }
        parts.push(format!("{n}: {}", describe(s)));
    }
    let t = ms(r, names);
    pass &= t < limit_s * 1000;
    parts.push(format!("{t} ms (limit {limit_s} s)"));
    Outcome { pass, detail: parts.join("; ") }
}

fn functoriality(r: &CorpusReport) -> Outcome {
    let names = ["functoriality.pbs", "functoriality.pspa", "functoriality.hspa"];
    let mut o = suites_criterion(r, &names, None, 30);
    for n in names {
        o.pass &= suite(r, n).instances >= 50;
    }
    o
}

/// Builds the binary with the cargo running this test, into the profile
/// directory this test executable lives in.
fn duality_binary() -> PathBuf {
    let exe = std::env::current_exe().expect("test executable path");
    let dir = exe.parent().and_then(|deps| deps.parent()).expect("target profile directory").to_path_buf();
    let mut build = Command::new(env!("CARGO"));
    build.args(["build", "--quiet", "-p", "duality-cli", "--bin", "duality"]);
    if dir.file_name().is_some_and(|n| n == "release") {
        build.arg("--release");
    }
    if let Some(target) = dir.parent() {
        build.arg("--target-dir").arg(target);
    }
    let status = build.status().expect("cargo runs");
    assert!(status.success(), "building duality failed");
    dir.join(format!("duality{}", std::env::consts::EXE_SUFFIX))
}

fn machine_run(bin: &PathBuf, config: &CorpusConfig) -> (Vec<u8>, Duration, Option<i32>) {
    let start = Instant::now();
    let out = Command::new(bin)
        .args(["corpus-run", "--format", "machine"])
        .args(["--max-size", &config.max_size.to_string()])
        .args(["--seed", &config.seed.to_string()])
        .args(["--max-worlds", &config.max_worlds.to_string()])
        .args(["--pairs", &config.pairs_per_mode.to_string()])
        .output()
        .expect("binary runs");
    (out.stdout, start.elapsed(), out.status.code())
}

fn determinism(config: &CorpusConfig, one_pass: Duration) -> Outcome {
    let bin = duality_binary();
    let (a, ta, ca) = machine_run(&bin, config);
    let (b, tb, cb) = machine_run(&bin, config);
    let identical = a == b && !a.is_empty();
    let exited = ca.is_some() && ca == cb;
    // Each invocation stays within twice the in-process pass.
    let within = ta < one_pass * 2 && tb < one_pass * 2;
    Outcome {
        pass: identical && exited && within,
        detail: format!(
            "{} bytes, identical={identical}, exit codes {ca:?}/{cb:?}, runs {} ms + {} ms (in-process pass {} ms)",
            a.len(),
            ta.as_millis(),
            tb.as_millis(),
            one_pass.as_millis()
        ),
    }
}

fn main() -> ExitCode {
    let config = CorpusConfig::new(7, 0);
    let start = Instant::now();
    let report = corpus_run(&config, true);
    let one_pass = start.elapsed();

    let criteria: Vec<(&str, Outcome)> = vec![
        ("spectrum bijection", suites_criterion(&report, &["spectrum"], Some(LATTICES_UP_TO_7), 5)),
        ("separation", suites_criterion(&report, &["separation"], Some(LATTICES_UP_TO_7), 5)),
        (
            "ISP round trip",
            suites_criterion(&report, &["isp_roundtrip.chain2", "isp_roundtrip.chain3"], Some(LATTICES_UP_TO_7), 30),
        ),
        ("ISP_I round trip", suites_criterion(&report, &["isp_i_roundtrip"], Some(FRAMES_UP_TO_4), 60)),
        ("Heyting coincidence", suites_criterion(&report, &["heyting_coincidence"], Some(FRAMES_UP_TO_4), 30)),
        ("L-VL duality", suites_criterion(&report, &["lvl_duality"], Some(6), 60)),
        ("axiom ledger", suites_criterion(&report, &["axioms"], Some(LATTICES_UP_TO_7 + 1), 5)),
        ("functoriality", functoriality(&report)),
        ("determinism", determinism(&config, one_pass)),
    ];

    let mut all = true;
    for (i, (label, o)) in criteria.iter().enumerate() {
        all &= o.pass;
        println!("criterion {} {label}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
