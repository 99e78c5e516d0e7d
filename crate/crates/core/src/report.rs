//! Check reports shared by every verifier: one line per check, with the
//! number of instances examined and the first counterexample on failure.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub instances: usize,
    pub detail: String,
}

impl Check {
    pub fn new(id: impl Into<String>) -> Self {
        Check { id: id.into(), passed: true, instances: 0, detail: String::new() }
    }

    /// Records one instance; keeps only the first counterexample.
    pub fn test(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.instances += 1;
        if !ok && self.passed {
            self.passed = false;
            self.detail = witness();
        }
        ok
    }

    pub fn fail(&mut self, detail: impl Into<String>) {
        self.instances += 1;
        if self.passed {
            self.passed = false;
            self.detail = detail.into();
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        if self.passed {
            self.detail = note.into();
        }
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        if self.passed {
            write!(f, "CHECK {} {} instances={}", self.id, verdict, self.instances)?;
            if !self.detail.is_empty() {
                write!(f, " {}", self.detail)?;
            }
            Ok(())
        } else {
            write!(f, "CHECK {} {} {}", self.id, verdict, self.detail)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    /// Descriptive name of the statement being verified.
    pub anchor: String,
    pub bounds: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(anchor: impl Into<String>, bounds: impl Into<String>) -> Self {
        Report { anchor: anchor.into(), bounds: bounds.into(), checks: Vec::new() }
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

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.anchor)?;
        if !self.bounds.is_empty() {
            writeln!(f, "# bounds: {}", self.bounds)?;
        }
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
