//! Verification reports shared by every command.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    #[serde(rename = "paper-mismatch")]
    Mismatch,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Mismatch => "paper-mismatch",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    pub paper_ref: String,
}

impl Check {
    pub fn new(name: impl Into<String>, paper_ref: impl Into<String>) -> CheckBuilder {
        CheckBuilder { name: name.into(), paper_ref: paper_ref.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Helper so call sites read `Check::new(name, claim).compare(expected, computed)`.
pub struct CheckBuilder {
    name: String,
    paper_ref: String,
}

impl CheckBuilder {
    /// Internal consistency: mismatch is a failure.
    pub fn compare<T: PartialEq + fmt::Display>(self, expected: T, computed: T) -> Check {
        let status = if expected == computed { Status::Pass } else { Status::Fail };
        self.with(status, expected.to_string(), computed.to_string())
    }

    /// Printed claim against computation: disagreement is a mismatch, not a failure.
    pub fn against_printed<T: PartialEq + fmt::Display>(self, printed: T, computed: T) -> Check {
        let status = if printed == computed { Status::Pass } else { Status::Mismatch };
        self.with(status, printed.to_string(), computed.to_string())
    }

    pub fn holds(self, ok: bool, expected: impl Into<String>, computed: impl Into<String>) -> Check {
        self.with(if ok { Status::Pass } else { Status::Fail }, expected.into(), computed.into())
    }

    pub fn printed_holds(self, ok: bool, printed: impl Into<String>, computed: impl Into<String>) -> Check {
        self.with(if ok { Status::Pass } else { Status::Mismatch }, printed.into(), computed.into())
    }

    pub fn with(self, status: Status, expected: impl Into<String>, computed: impl Into<String>) -> Check {
        Check {
            name: self.name,
            status,
            expected: expected.into(),
            computed: computed.into(),
            paper_ref: self.paper_ref,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    pub n: usize,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>, n: usize) -> Self {
        VerificationReport { command: command.into(), n, checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn has_mismatches(&self) -> bool {
        self.count(Status::Mismatch) > 0
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// 0 unless an internal check failed, or (strict) a printed claim disagrees.
    pub fn exit_code(&self, strict_paper: bool) -> i32 {
        if self.has_failures() || (strict_paper && self.has_mismatches()) {
            1
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} (N = {})\n", self.command, self.n);
        for c in &self.checks {
            s.push_str(&format!("[{}] {}\n", c.status, c.name));
            if c.status != Status::Pass {
                s.push_str(&format!("    expected: {}\n    computed: {}\n    claim: {}\n", c.expected, c.computed, c.paper_ref));
            }
        }
        s.push_str(&format!(
            "{} pass, {} fail, {} paper-mismatch\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Mismatch)
        ));
        s
    }
}
