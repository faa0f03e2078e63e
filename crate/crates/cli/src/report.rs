//! The run report written by every command.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use duality_core::verdict::{Checks, Verdict, Witness};
use serde::Serialize;

/// A document file that contributed to the run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputRecord {
    pub name: String,
    pub kind: String,
    /// File path, or `builtin` for the standard lattices.
    pub path: String,
    /// Hex SHA-256 of the file contents; empty for built-ins.
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictSummary {
    pub pass: bool,
    pub checks: BTreeMap<String, Verdict>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub info: BTreeMap<String, Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub check: String,
    pub witness: Witness,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputRecord>,
    pub verdicts: VerdictSummary,
    pub witnesses: Vec<WitnessRecord>,
    /// Milliseconds per phase; empty unless timings were requested.
    pub timings: BTreeMap<String, u128>,
    /// Command-specific results.
    pub details: serde_json::Value,
}

impl RunReport {
    pub fn new(command: &str, inputs: Vec<InputRecord>, checks: Checks, details: serde_json::Value) -> Self {
        let witnesses = checks
            .failures()
            .filter_map(|(k, v)| v.witness.clone().map(|w| WitnessRecord { check: k.clone(), witness: w }))
            .collect();
        RunReport {
            command: command.to_string(),
            inputs,
            verdicts: VerdictSummary { pass: checks.pass(), checks: checks.checks, info: checks.info },
            witnesses,
            timings: BTreeMap::new(),
            details,
        }
    }

    pub fn pass(&self) -> bool {
        self.verdicts.checks.values().all(|v| v.pass)
    }

    pub fn exit_code(&self) -> u8 {
        if self.pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = if self.pass() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{}: {status}", self.command);
        for i in &self.inputs {
            let _ = writeln!(out, "  input {} ({}) {}", i.name, i.kind, i.path);
        }
        for (name, v) in &self.verdicts.checks {
            let _ = writeln!(out, "  {} {name}{}", if v.pass { "pass" } else { "FAIL" }, render_extra(v));
        }
        for (name, v) in &self.verdicts.info {
            let _ = writeln!(out, "  info {name}{}", render_extra(v));
        }
        for (k, ms) in &self.timings {
            let _ = writeln!(out, "  time {k}: {ms} ms");
        }
        if let Some(summary) = self.details.get("summary").and_then(|s| s.as_array()) {
            for line in summary.iter().filter_map(|l| l.as_str()) {
                let _ = writeln!(out, "  {line}");
            }
        }
        out
    }
}

fn render_extra(v: &Verdict) -> String {
    let mut s = String::new();
    if let Some(w) = &v.witness {
        let parts: Vec<String> = w.iter().map(|(k, x)| format!("{k}={x}")).collect();
        let _ = write!(s, "  [{}]", parts.join(", "));
    }
    if let Some(n) = &v.note {
        let _ = write!(s, "  ({n})");
    }
    s
}
