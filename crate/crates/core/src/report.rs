//! Machine-readable command reports.
//!
//! Each command prints one JSON object on one line. Fields appear in a fixed
//! order, the object carries `schema_version`, and rationals are
//! `{"num": .., "den": ..}` pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::StageTimings;
use crate::ratio::Ratio;
use crate::sequence::InputMode;
use crate::solver::Certificate;
use crate::workbench::InstanceFamily;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliReport {
    pub schema_version: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inputs: Option<InputInfo>,
    pub result: ReportBody,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<StageTimings>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputInfo {
    pub a: String,
    pub b: String,
    pub mode: InputMode,
    pub len_a: usize,
    pub len_b: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportBody {
    Exact(ExactResult),
    Estimate(EstimateResult),
    Bounds(BoundsResult),
    Gen(GenResult),
    Bench(BenchResult),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactResult {
    pub length: u64,
    pub match_count: u64,
    pub d: Ratio,
    pub d_ceil: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimateResult {
    pub estimate: u64,
    pub solver_output: u64,
    pub solver_skipped: bool,
    pub match_count: u64,
    pub d: Ratio,
    pub d_ceil: u64,
    pub rate: Ratio,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_size: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsResult {
    pub match_count: u64,
    pub d: Ratio,
    pub d_ceil: u64,
    pub min_count_bound: u64,
    pub holder_bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenResult {
    pub family: InstanceFamily,
    pub mode: InputMode,
    pub out_a: String,
    pub out_b: String,
    pub len_a: usize,
    pub len_b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchResult {
    pub records: usize,
    pub failed: usize,
    pub violations: usize,
    pub out: String,
}

impl CliReport {
    pub fn new(command: &str, inputs: Option<InputInfo>, result: ReportBody) -> Self {
        CliReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_owned(),
            inputs,
            result,
            timings: None,
        }
    }

    /// The report as a single newline-terminated JSON line.
    pub fn to_line(&self) -> String {
        let mut s = serde_json::to_string(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn parse(line: &str) -> Result<Self> {
        let report: CliReport = serde_json::from_str(line.trim_end())
            .map_err(|e| Error::invalid(format!("malformed report: {e}")))?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(Error::invalid(format!(
                "unsupported report schema version {}",
                report.schema_version
            )));
        }
        Ok(report)
    }
}
