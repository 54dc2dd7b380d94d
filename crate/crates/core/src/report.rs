//! Pass/fail reports shared by every verification suite.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, TamariError};

/// One comparison between two independently computed values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub n: u32,
    pub key: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub m: u32,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>, m: u32) -> Self {
        Report { suite: suite.into(), m, checks: Vec::new(), notes: Vec::new() }
    }

    /// Records `lhs == rhs` after rendering both sides with `Display`.
    pub fn compare<L: fmt::Display, R: fmt::Display>(&mut self, n: u32, key: impl Into<String>, lhs: L, rhs: R) -> bool {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        let pass = lhs == rhs;
        self.checks.push(Check { n, key: key.into(), lhs, rhs, pass });
        pass
    }

    /// Records a check whose outcome is decided by the caller.
    pub fn record(&mut self, n: u32, key: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display, pass: bool) -> bool {
        self.checks.push(Check { n, key: key.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), pass });
        pass
    }

    /// Records a boolean property as `true` vs `true`.
    pub fn assert(&mut self, n: u32, key: impl Into<String>, holds: bool) -> bool {
        self.record(n, key, holds, true, holds)
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, other: Report) {
        let prefix = if other.suite == self.suite || other.suite.is_empty() { None } else { Some(other.suite) };
        for mut c in other.checks {
            if let Some(p) = &prefix {
                c.key = format!("{p}: {}", c.key);
            }
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn pass_count(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| TamariError::Parse(format!("report JSON: {e}")))
    }

    /// CSV with the columns `suite,m,n,key,lhs,rhs,pass`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "m", "n", "key", "lhs", "rhs", "pass"]).expect("in-memory write");
        for c in &self.checks {
            w.write_record([
                self.suite.as_str(),
                &self.m.to_string(),
                &c.n.to_string(),
                &c.key,
                &c.lhs,
                &c.rhs,
                if c.pass { "true" } else { "false" },
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{status} {} (m={}): {}/{} checks", self.suite, self.m, self.pass_count(), self.checks.len())?;
        for c in self.failures() {
            writeln!(f, "  FAIL n={} {}: {} != {}", c.n, c.key, c.lhs, c.rhs)?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}
