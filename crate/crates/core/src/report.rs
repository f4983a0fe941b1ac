use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    BudgetExhausted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::BudgetExhausted => "budget-exhausted",
        })
    }
}

/// Outcome of one certificate.
///
/// JSON form: `{"check", "params", "status", "witnesses", "elapsed_ms"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates witnesses while a check runs; a witness forces `fail`.
pub(crate) struct ReportBuilder {
    check: &'static str,
    params: BTreeMap<String, i64>,
    started: Instant,
    witnesses: Vec<String>,
    failed: bool,
    exhausted: bool,
}

impl ReportBuilder {
    pub(crate) fn new(check: &'static str) -> Self {
        ReportBuilder {
            check,
            params: BTreeMap::new(),
            started: Instant::now(),
            witnesses: Vec::new(),
            failed: false,
            exhausted: false,
        }
    }

    pub(crate) fn param(mut self, name: &str, value: i64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub(crate) fn set_param(&mut self, name: &str, value: i64) {
        self.params.insert(name.to_string(), value);
    }

    pub(crate) fn fail(&mut self, witness: impl Into<String>) {
        self.failed = true;
        self.witnesses.push(witness.into());
    }

    pub(crate) fn exhausted(&mut self) {
        self.exhausted = true;
    }

    pub(crate) fn finish(self) -> VerificationReport {
        let status = if self.failed {
            Status::Fail
        } else if self.exhausted {
            Status::BudgetExhausted
        } else {
            Status::Pass
        };
        VerificationReport {
            check: self.check.to_string(),
            params: self.params,
            status,
            witnesses: self.witnesses,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(
            f,
            "{:<5} {} [{}] ({} ms)",
            self.status.to_string().to_uppercase(),
            self.check,
            params.join(", "),
            self.elapsed_ms
        )?;
        for w in &self.witnesses {
            write!(f, "\n      witness: {w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_wins_over_exhaustion() {
        let mut b = ReportBuilder::new("x");
        b.exhausted();
        b.fail("w");
        assert_eq!(b.finish().status, Status::Fail);
        let mut b = ReportBuilder::new("x");
        b.exhausted();
        assert_eq!(b.finish().status, Status::BudgetExhausted);
    }

    #[test]
    fn status_serializes_kebab_case() {
        assert_eq!(serde_json::to_string(&Status::BudgetExhausted).unwrap(), "\"budget-exhausted\"");
        assert_eq!(serde_json::to_string(&Status::Pass).unwrap(), "\"pass\"");
    }
}
