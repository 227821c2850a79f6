//! Named pass/fail checks collected by the verification routines.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    /// Not applicable to this input (e.g. an iso test on a non-split coalgebra).
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `name` as passed or failed; `detail` is only evaluated on failure.
    pub fn record(&mut self, name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        let (status, detail) = if ok { (Status::Passed, None) } else { (Status::Failed, Some(detail())) };
        self.checks.push(Check { name: name.into(), status, detail });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.record(name, true, String::new);
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        let d = detail.into();
        self.record(name, false, move || d);
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status: Status::Skipped, detail: Some(reason.into()) });
    }

    /// Appends the checks of `other` with names prefixed by `prefix/`.
    pub fn merge(&mut self, prefix: &str, other: CheckReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Failed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Failed)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// `Err(ReportedFailure)` for the first failed check.
    pub fn into_result(self) -> Result<CheckReport> {
        if let Some(c) = self.failures().next() {
            return Err(Error::ReportedFailure {
                check: c.name.clone(),
                detail: c.detail.clone().unwrap_or_default(),
            });
        }
        Ok(self)
    }
}
