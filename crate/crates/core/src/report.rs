//! Check results with structured witnesses.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One named law, checked over `checked` instances. The witness is the first
/// failing instance and is present exactly when `failures > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub status: Status,
    pub checked: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
}

/// Accumulates instances of one law.
#[derive(Debug, Clone)]
pub struct Check {
    name: String,
    checked: u64,
    failures: u64,
    witness: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), checked: 0, failures: 0, witness: None }
    }

    /// Records one instance; `witness` is only evaluated on the first failure.
    #[inline]
    pub fn test(&mut self, ok: bool, witness: impl FnOnce() -> Value) -> bool {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
        ok
    }

    /// Adds the instances of a finished entry to this check.
    pub fn absorb(&mut self, entry: Entry) {
        self.checked += entry.checked;
        self.failures += entry.failures;
        if self.witness.is_none() {
            self.witness = entry.witness;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn finish(self) -> Entry {
        Entry {
            status: if self.failures == 0 { Status::Pass } else { Status::Fail },
            name: self.name,
            checked: self.checked,
            failures: self.failures,
            witness: self.witness,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub summary: Summary,
    pub checks: Vec<Entry>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check.finish());
        self.refresh();
    }

    pub fn push_entry(&mut self, entry: Entry) {
        self.checks.push(entry);
        self.refresh();
    }

    /// A single failing entry carrying an error as its witness.
    pub fn push_error(&mut self, name: impl Into<String>, error: &crate::error::Error) {
        let mut c = Check::new(name);
        c.test(false, || serde_json::json!({ "error": error.to_string() }));
        self.push(c);
    }

    /// Appends every entry of `other` under `prefix`.
    pub fn merge(&mut self, prefix: &str, other: Report) {
        for mut e in other.checks {
            if !prefix.is_empty() {
                e.name = format!("{prefix}.{}", e.name);
            }
            self.checks.push(e);
        }
        self.refresh();
    }

    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    fn refresh(&mut self) {
        let failed = self.checks.iter().filter(|e| e.status == Status::Fail).count();
        self.summary = Summary { total: self.checks.len(), passed: self.checks.len() - failed, failed };
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.checks.iter().find(|e| e.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.checks.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed {seed}");
        }
        for e in &self.checks {
            match e.status {
                Status::Pass => {
                    let _ = writeln!(out, "PASS {} ({} checked)", e.name, e.checked);
                }
                Status::Fail => {
                    let w = e.witness.as_ref().map(Value::to_string).unwrap_or_default();
                    let _ = writeln!(out, "FAIL {} ({} of {} failed) witness: {}", e.name, e.failures, e.checked, w);
                }
            }
        }
        let _ = writeln!(
            out,
            "{} checks, {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn witness_present_iff_failed() {
        let mut r = Report::new();
        let mut a = Check::new("b.ok");
        a.test(true, || json!(null));
        let mut b = Check::new("a.bad");
        b.test(true, || json!(0));
        b.test(false, || json!({"x": 1}));
        b.test(false, || json!({"x": 2}));
        r.push(a);
        r.push(b);
        r.sort();
        assert_eq!(r.checks[0].name, "a.bad");
        assert_eq!(r.checks[0].witness, Some(json!({"x": 1})));
        assert_eq!(r.checks[0].failures, 2);
        assert!(r.checks[1].witness.is_none());
        assert_eq!(r.summary, Summary { total: 2, passed: 1, failed: 1 });
    }
}
