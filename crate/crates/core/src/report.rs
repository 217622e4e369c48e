//! Structured outcomes of checks and the JSON envelope the CLI emits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::gamma04::BasisDecomposition;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The first index at which the two sides of a relation differ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub n: i64,
    pub lhs: String,
    pub rhs: String,
    /// Extra location info for checks indexed by tuples rather than `n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub params: BTreeMap<String, String>,
    pub range: (i64, i64),
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<BasisDecomposition>,
}

impl VerificationReport {
    pub fn new(check_id: impl Into<String>, range: (i64, i64)) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            params: BTreeMap::new(),
            range,
            status: Status::Pass,
            first_failure: None,
            decomposition: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn fail(mut self, failure: Failure) -> Self {
        self.status = Status::Fail;
        self.first_failure = Some(failure);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub trunc: usize,
    pub h: f64,
    pub tol: f64,
}

/// One numeric residual: `pass` iff `residual < tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub check: String,
    pub tau: [f64; 2],
    pub config: ConfigRecord,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ResidualRecord {
    pub fn new(check: impl Into<String>, tau: [f64; 2], config: ConfigRecord, residual: f64, tolerance: f64) -> Self {
        ResidualRecord {
            check: check.into(),
            tau,
            config,
            residual,
            tolerance,
            pass: residual.is_finite() && residual < tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub timestamp: String,
    pub reports: Vec<VerificationReport>,
    pub residuals: Vec<ResidualRecord>,
    pub pass: bool,
}

impl ReportEnvelope {
    /// An envelope stamped with the current UTC time.
    pub fn stamped(command: Vec<String>, reports: Vec<VerificationReport>, residuals: Vec<ResidualRecord>) -> Self {
        let timestamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
        ReportEnvelope::new(command, timestamp, reports, residuals)
    }

    pub fn new(
        command: Vec<String>,
        timestamp: String,
        reports: Vec<VerificationReport>,
        residuals: Vec<ResidualRecord>,
    ) -> Self {
        let pass = reports.iter().all(VerificationReport::passed) && residuals.iter().all(|r| r.pass);
        ReportEnvelope {
            schema: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            timestamp,
            reports,
            residuals,
            pass,
        }
    }
}
