//! Report documents: JSON for the full tree, CSV for the summary tables.

use serde::{Deserialize, Serialize};

use super::battery::{frequency_summary, run_battery, BatteryReport, FrequencySummary};
use super::restart::RestartMatrix;
use super::StatsError;
use crate::bits::BitString;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DatasetMode {
    Sequential,
    Restart,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// Free-form label for the source, e.g. the recipe name or input path.
    pub source: String,
    pub mode: DatasetMode,
    /// Whole-string frequency figures, present for sequential datasets.
    pub frequency: Option<FrequencySummary>,
    pub battery: BatteryReport,
    pub passed: bool,
}

impl ValidationReport {
    pub fn new(
        source: impl Into<String>,
        mode: DatasetMode,
        frequency: Option<FrequencySummary>,
        battery: BatteryReport,
    ) -> Self {
        let passed = battery.passed();
        Self {
            source: source.into(),
            mode,
            frequency,
            battery,
            passed,
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

/// Sequential dataset: the first `n` bits are laid out row-major as an
/// `(n / cols) x cols` matrix for the battery, and also summarized as one
/// string.
pub fn validate_sequential(
    source: impl Into<String>,
    bits: &BitString,
    n: usize,
    cols: usize,
) -> Result<ValidationReport, StatsError> {
    if bits.len() < n {
        return Err(StatsError::InsufficientData {
            needed: n,
            available: bits.len(),
        });
    }
    if cols == 0 || !n.is_multiple_of(cols) {
        return Err(StatsError::InvalidParameter(format!(
            "sequential length {n} is not a multiple of the row length {cols}"
        )));
    }
    let data = bits.slice(0..n);
    let frequency = frequency_summary(&data)?;
    let matrix = RestartMatrix::from_bits(data, n / cols, cols)?;
    Ok(ValidationReport::new(
        source,
        DatasetMode::Sequential,
        Some(frequency),
        run_battery(&matrix)?,
    ))
}

pub fn validate_restart(
    source: impl Into<String>,
    matrix: &RestartMatrix,
) -> Result<ValidationReport, StatsError> {
    Ok(ValidationReport::new(
        source,
        DatasetMode::Restart,
        None,
        run_battery(matrix)?,
    ))
}

/// One summary line: the MCV columns followed by median and minimum
/// p-values of each IID test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub source: String,
    pub mcv: usize,
    pub min_entropy: f64,
    pub p_sanity: f64,
    pub sanity_pass: bool,
    pub ind_median_p: f64,
    pub gf_median_p: f64,
    pub lrs_median_p: f64,
    pub ind_min_p: f64,
    pub gf_min_p: f64,
    pub lrs_min_p: f64,
    pub ind_failures: usize,
    pub gf_failures: usize,
    pub lrs_failures: usize,
    pub passed: bool,
}

impl From<&ValidationReport> for SummaryRow {
    fn from(r: &ValidationReport) -> Self {
        let b = &r.battery;
        Self {
            source: r.source.clone(),
            mcv: b.sanity.global_mcv,
            min_entropy: b.sanity.min_entropy,
            p_sanity: b.sanity.p_value,
            sanity_pass: b.sanity.pass,
            ind_median_p: b.independence.median_p,
            gf_median_p: b.goodness_of_fit.median_p,
            lrs_median_p: b.lrs.median_p,
            ind_min_p: b.independence.min_p,
            gf_min_p: b.goodness_of_fit.min_p,
            lrs_min_p: b.lrs.min_p,
            ind_failures: b.independence.failures,
            gf_failures: b.goodness_of_fit.failures,
            lrs_failures: b.lrs.failures,
            passed: r.passed,
        }
    }
}

pub fn summary_csv<'a, I>(reports: I) -> csv::Result<String>
where
    I: IntoIterator<Item = &'a ValidationReport>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(SummaryRow::from(r))?;
    }
    finish(w)
}

#[derive(Serialize)]
struct GroupRow<'a> {
    axis: &'a str,
    index: usize,
    length: usize,
    mcv: usize,
    chi2_independence: f64,
    p_independence: f64,
    chi2_gf: f64,
    p_gf: f64,
    lrs_length: usize,
    p_lrs: f64,
}

/// One line per group.
pub fn groups_csv(battery: &BatteryReport) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for g in &battery.groups {
        w.serialize(GroupRow {
            axis: match g.group.axis {
                super::Axis::Row => "row",
                super::Axis::Column => "column",
            },
            index: g.group.index,
            length: g.length,
            mcv: g.mcv_count,
            chi2_independence: g.chi2_independence,
            p_independence: g.p_independence,
            chi2_gf: g.chi2_gf,
            p_gf: g.p_gf,
            lrs_length: g.lrs_length,
            p_lrs: g.p_lrs,
        })?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> csv::Result<String> {
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
