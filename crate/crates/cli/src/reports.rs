//! JSON report shapes shared by the subcommands.  Every report written by
//! the binary validates against the schema files shipped under `schemas/`.

use serde::{Deserialize, Serialize};

/// One named check with its measured value and (optional) bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub measured: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Output of `verify`: all checks, sorted by id, plus the vertical verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub tolerance: f64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Output of `demo`: metric table plus the artifact files written.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DemoSummary {
    pub name: String,
    pub tolerance: f64,
    pub passed: bool,
    pub metrics: Vec<Check>,
    pub artifacts: Vec<String>,
}

impl VerifyReport {
    pub fn new(suite: &str, tolerance: f64, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        VerifyReport {
            suite: suite.to_string(),
            tolerance,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}
