//! Pass/fail bookkeeping shared by the verification routines.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

const KEPT_MESSAGES: usize = 16;

/// Outcome of a named family of exact checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checks: usize,
    pub failures: usize,
    /// The first few failure messages.
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> CheckReport {
        CheckReport { name: name.into(), ..Default::default() }
    }

    /// Records one check; `message` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, message: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.violations.len() < KEPT_MESSAGES {
                self.violations.push(message());
            }
        }
        ok
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.checks += other.checks;
        self.failures += other.failures;
        for v in other.violations {
            if self.violations.len() < KEPT_MESSAGES {
                self.violations.push(format!("{}: {v}", other.name));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Turns a failed report into a theorem-violation error.
    pub fn into_result(self) -> Result<CheckReport> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::TheoremViolation(self.to_string()))
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: pass ({} checks)", self.name, self.checks)
        } else {
            write!(f, "{}: FAIL ({} of {} checks)", self.name, self.failures, self.checks)?;
            if let Some(first) = self.violations.first() {
                write!(f, ", e.g. {first}")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_messages() {
        let mut r = CheckReport::new("demo");
        assert!(r.check(true, || unreachable!()));
        assert!(!r.check(false, || "bad".into()));
        assert_eq!((r.checks, r.failures), (2, 1));
        assert_eq!(r.to_string(), "demo: FAIL (1 of 2 checks), e.g. bad");
        assert!(r.clone().into_result().is_err());
        let mut total = CheckReport::new("all");
        total.absorb(r);
        assert_eq!(total.violations, vec!["demo: bad".to_string()]);
    }
}
