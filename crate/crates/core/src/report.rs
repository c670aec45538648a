//! Residual records produced by every verification routine.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::duality::ParamsEcho;
use crate::error::Error;

/// Condition number above which a sample is flagged as ill-conditioned.
pub const ILL_CONDITIONED_RATIO: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    IllConditioned,
}

// JSON has no infinity or NaN, so serde_json writes them as null. Reading null
// back as infinity keeps such records failing.
fn null_as_infinity<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

fn nulls_as_infinity<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
    let values = Vec::<Option<f64>>::deserialize(d)?;
    Ok(values.into_iter().map(|v| v.unwrap_or(f64::INFINITY)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    /// Evaluation point, `[0, 0]` for checks without a `z`.
    pub z: [f64; 2],
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    #[serde(deserialize_with = "null_as_infinity")]
    pub residual: f64,
    /// Largest term modulus over the modulus of the sum.
    #[serde(deserialize_with = "null_as_infinity")]
    pub condition: f64,
    pub flagged: bool,
}

impl SampleRecord {
    pub fn new(z: Complex64, lhs: Complex64, rhs: Complex64, residual: f64, condition: f64) -> Self {
        SampleRecord {
            z: [z.re, z.im],
            lhs: [lhs.re, lhs.im],
            rhs: [rhs.re, rhs.im],
            residual,
            condition,
            flagged: condition > ILL_CONDITIONED_RATIO,
        }
    }

    /// A sample whose residual is already measured against the term scale, so
    /// cancellation cannot hide an error and the sample is never flagged.
    pub fn scaled(z: Complex64, lhs: Complex64, rhs: Complex64, residual: f64, condition: f64) -> Self {
        SampleRecord {
            flagged: false,
            ..Self::new(z, lhs, rhs, residual, condition)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub case_id: u64,
    pub check: String,
    pub params: ParamsEcho,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<i64>,
    pub samples: Vec<SampleRecord>,
    #[serde(deserialize_with = "nulls_as_infinity")]
    pub residuals: Vec<f64>,
    /// Infinite for a case that errored; written as `null`.
    #[serde(deserialize_with = "null_as_infinity")]
    pub max_residual: f64,
    pub tol: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

fn exceeds(residual: f64, tol: f64) -> bool {
    !(residual <= tol)
}

impl CaseRecord {
    /// Classify a case from its samples.
    ///
    /// A case fails when an unflagged sample exceeds `tol`. Flagged samples never
    /// fail a case; when one of them exceeds `tol` the case is `IllConditioned`.
    pub fn from_samples(case_id: u64, check: &str, params: ParamsEcho, samples: Vec<SampleRecord>, tol: f64) -> Self {
        let residuals: Vec<f64> = samples.iter().map(|s| s.residual).collect();
        let max_residual = residuals.iter().copied().fold(0.0, |acc: f64, r| {
            if r.is_nan() || acc.is_nan() {
                f64::NAN
            } else {
                acc.max(r)
            }
        });
        let unflagged_fail = samples.iter().any(|s| !s.flagged && exceeds(s.residual, tol));
        let flagged_fail = samples.iter().any(|s| s.flagged && exceeds(s.residual, tol));
        let status = if samples.is_empty() || unflagged_fail {
            Status::Fail
        } else if flagged_fail {
            Status::IllConditioned
        } else {
            Status::Pass
        };
        CaseRecord {
            case_id,
            check: check.to_string(),
            params,
            k: None,
            samples,
            residuals,
            max_residual,
            tol,
            status,
            note: None,
        }
    }

    /// A case whose evaluation raised an error counts as a failure.
    pub fn errored(case_id: u64, check: &str, params: ParamsEcho, tol: f64, err: &Error) -> Self {
        CaseRecord {
            case_id,
            check: check.to_string(),
            params,
            k: None,
            samples: Vec::new(),
            residuals: Vec::new(),
            max_residual: f64::INFINITY,
            tol,
            status: Status::Fail,
            note: Some(err.to_string()),
        }
    }

    pub fn with_k(mut self, k: i64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n_pass: usize,
    pub n_fail: usize,
    pub n_flagged: usize,
    pub n_flagged_samples: usize,
    /// Seconds; the only field excluded from determinism guarantees.
    pub wall_time: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

impl ResidualReport {
    pub fn new(mut cases: Vec<CaseRecord>) -> Self {
        cases.sort_by_key(|c| c.case_id);
        let mut report = ResidualReport {
            cases,
            summary: Summary::default(),
        };
        report.recount();
        report
    }

    pub fn single(case: CaseRecord) -> Self {
        Self::new(vec![case])
    }

    /// Concatenate two reports, keeping case order by id.
    pub fn merge(mut self, other: ResidualReport) -> Self {
        let wall_time = self.summary.wall_time + other.summary.wall_time;
        self.cases.extend(other.cases);
        self.cases.sort_by_key(|c| c.case_id);
        self.recount();
        self.summary.wall_time = wall_time;
        self
    }

    fn recount(&mut self) {
        let count = |s: Status| self.cases.iter().filter(|c| c.status == s).count();
        self.summary.n_pass = count(Status::Pass);
        self.summary.n_fail = count(Status::Fail);
        self.summary.n_flagged = count(Status::IllConditioned);
        self.summary.n_flagged_samples = self.cases.iter().flat_map(|c| &c.samples).filter(|s| s.flagged).count();
    }

    pub fn all_passed(&self) -> bool {
        self.summary.n_fail == 0
    }

    pub fn max_residual(&self) -> f64 {
        self.cases.iter().map(|c| c.max_residual).fold(0.0, f64::max)
    }
}
