//! JSON shapes written by the CLI. Every document carries `schema: 1`.

use golden_core::{EvalResult, VerificationReport};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// One identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema: u32,
    pub identity: String,
    /// Evaluation point `p/q` for parameterized identities.
    pub x: Option<String>,
    pub digits_requested: u32,
    pub lhs: String,
    pub rhs: String,
    pub matched: u32,
    pub terms_used: usize,
    pub elapsed_seconds: f64,
    pub pass: bool,
    pub reason: Option<String>,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        ReportJson {
            schema: SCHEMA_VERSION,
            identity: r.identity.name().to_string(),
            x: r.identity.point().map(|x| x.to_string()),
            digits_requested: r.digits_requested,
            lhs: r.lhs.clone(),
            rhs: r.rhs.clone(),
            matched: r.matched,
            terms_used: r.terms_used,
            elapsed_seconds: r.elapsed.as_secs_f64(),
            pass: r.pass,
            reason: r.reason.clone(),
        }
    }
}

/// Output of `verify-all`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteJson {
    pub schema: u32,
    pub digits: u32,
    pub pass: bool,
    pub reports: Vec<ReportJson>,
}

impl SuiteJson {
    pub fn new(digits: u32, reports: &[VerificationReport]) -> Self {
        SuiteJson {
            schema: SCHEMA_VERSION,
            digits,
            pass: golden_core::identities::all_pass(reports),
            reports: reports.iter().map(ReportJson::from).collect(),
        }
    }
}

/// Certification data written next to an `eval` result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SidecarJson {
    pub schema: u32,
    pub terms_used: usize,
    pub tail_bound: String,
    pub rounding_budget: String,
}

impl From<&EvalResult> for SidecarJson {
    fn from(r: &EvalResult) -> Self {
        SidecarJson {
            schema: SCHEMA_VERSION,
            terms_used: r.terms_used,
            tail_bound: r.tail_bound.to_string(),
            rounding_budget: r.rounding_budget.to_string(),
        }
    }
}

/// `eval --json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalJson {
    pub schema: u32,
    pub weight: String,
    pub x: String,
    pub form: String,
    pub digits: u32,
    pub value: String,
    pub terms_used: usize,
    pub tail_bound: String,
    pub rounding_budget: String,
}
