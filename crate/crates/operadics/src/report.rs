//! Verification reports.
//!
//! Every verifier in this crate returns a `Report`: a list of named checks,
//! each passing or carrying the offending instances. Reports serialize to
//! deterministic JSON so identical inputs produce byte-identical output.

use serde::Serialize;

pub const MAX_DETAILS: usize = 25;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Offending instances, capped at `MAX_DETAILS` with a trailing summary
    /// line when truncated.
    pub details: Vec<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: true,
            details: Vec::new(),
        }
    }

    pub fn from_violations(name: impl Into<String>, violations: Vec<String>) -> Check {
        let mut details = violations;
        let passed = details.is_empty();
        if details.len() > MAX_DETAILS {
            let extra = details.len() - MAX_DETAILS;
            details.truncate(MAX_DETAILS);
            details.push(format!("... and {extra} more"));
        }
        Check {
            name: name.into(),
            passed,
            details,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn violations(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    /// Human-readable rendering, one line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("== {} ==\n", self.title));
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}\n",
                if c.passed { "ok" } else { "FAIL" },
                c.name
            ));
            for d in &c.details {
                out.push_str(&format!("       {d}\n"));
            }
        }
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.violations()
        ));
        out
    }
}
