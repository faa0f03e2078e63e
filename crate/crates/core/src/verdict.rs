//! Pass/fail verdicts with named witnesses.

use std::collections::BTreeMap;

use serde::Serialize;

/// Named witness fields, always rendered with user-facing element names.
pub type Witness = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { pass: true, witness: None, note: None }
    }

    pub fn fail(witness: Witness) -> Self {
        Verdict { pass: false, witness: Some(witness), note: None }
    }

    pub fn from_witness(witness: Option<Witness>) -> Self {
        match witness {
            None => Verdict::pass(),
            Some(w) => Verdict::fail(w),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Builds a [`Witness`] from `key => value` pairs.
#[macro_export]
macro_rules! witness {
    ($($k:expr => $v:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut w = $crate::verdict::Witness::new();
        $( w.insert($k.to_string(), $v.to_string()); )*
        w
    }};
}

/// A named family of verdicts. `checks` decide the overall result;
/// `info` entries are reported but never fail it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub checks: BTreeMap<String, Verdict>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub info: BTreeMap<String, Verdict>,
}

impl Checks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &str, v: Verdict) {
        self.checks.insert(name.to_string(), v);
    }

    pub fn insert_info(&mut self, name: &str, v: Verdict) {
        self.info.insert(name.to_string(), v);
    }

    /// Adds every check of `other` under `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: Checks) {
        for (k, v) in other.checks {
            self.checks.insert(format!("{prefix}.{k}"), v);
        }
        for (k, v) in other.info {
            self.info.insert(format!("{prefix}.{k}"), v);
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.values().all(|v| v.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.checks.get(name).or_else(|| self.info.get(name))
    }

    pub fn failures(&self) -> impl Iterator<Item = (&String, &Verdict)> {
        self.checks.iter().filter(|(_, v)| !v.pass)
    }
}
