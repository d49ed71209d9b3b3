use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::complexfn::ComplexValue;
use crate::error::Error;
use crate::lerch_ref::EvaluationPoint;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

/// Which residual the tolerance applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Relative,
    Absolute,
}

/// One cross-method comparison.
///
/// Records of the closed-form suites reuse the point fields: `t` is the
/// evaluation point, `x` carries `k` or `beta`, and `s` carries the order `alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub suite: String,
    pub point: EvaluationPoint,
    pub method_a: String,
    pub method_b: String,
    pub value_a: Option<ComplexValue>,
    pub value_b: Option<ComplexValue>,
    pub abs_residual: Option<f64>,
    pub rel_residual: Option<f64>,
    pub measure: Measure,
    pub tolerance: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

pub const RESIDUAL_FLOOR: f64 = 1e-300;

impl ComparisonRecord {
    /// Compares two computed values and sets the status from the tolerance.
    pub fn compare(
        suite: &str,
        point: EvaluationPoint,
        methods: (&str, &str),
        a: ComplexValue,
        b: ComplexValue,
        measure: Measure,
        tolerance: f64,
    ) -> Self {
        let abs = (a - b).norm();
        let rel = abs / a.norm().max(b.norm()).max(RESIDUAL_FLOOR);
        let checked = match measure {
            Measure::Relative => rel,
            Measure::Absolute => abs,
        };
        let status = if checked <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            suite: suite.to_string(),
            point,
            method_a: methods.0.to_string(),
            method_b: methods.1.to_string(),
            value_a: Some(a),
            value_b: Some(b),
            abs_residual: Some(abs),
            rel_residual: Some(rel),
            measure,
            tolerance,
            status,
            note: None,
        }
    }

    /// A comparison that could not be carried out. Domain errors skip the
    /// record, anything else fails it.
    pub fn failed(
        suite: &str,
        point: EvaluationPoint,
        methods: (&str, &str),
        measure: Measure,
        tolerance: f64,
        error: &Error,
    ) -> Self {
        let status = if error.is_domain() {
            Status::Skipped(error.to_string())
        } else {
            Status::Fail
        };
        let note = (!error.is_domain()).then(|| error.to_string());
        Self {
            suite: suite.to_string(),
            point,
            method_a: methods.0.to_string(),
            method_b: methods.1.to_string(),
            value_a: None,
            value_b: None,
            abs_residual: None,
            rel_residual: None,
            measure,
            tolerance,
            status,
            note,
        }
    }

    /// The residual the tolerance is checked against.
    pub fn checked_residual(&self) -> Option<f64> {
        match self.measure {
            Measure::Relative => self.rel_residual,
            Measure::Absolute => self.abs_residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub suite: String,
    pub grid_seed: u64,
    pub records: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(records: &[ComparisonRecord]) -> Self {
        let mut out = Summary::default();
        for r in records {
            match r.status {
                Status::Pass => out.pass += 1,
                Status::Fail => out.fail += 1,
                Status::Skipped(_) => out.skipped += 1,
            }
        }
        out
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "pass {} fail {} skipped {}", self.pass, self.fail, self.skipped)
    }
}

/// Header line followed by one JSON object per record.
pub fn write_report<W: Write>(
    mut out: W,
    header: &ReportHeader,
    records: &[ComparisonRecord],
) -> std::io::Result<()> {
    serde_json::to_writer(&mut out, header)?;
    out.write_all(b"\n")?;
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}
