//! Per-group statistics and the aggregate battery report.
//!
//! Groups are evaluated in parallel; results are collected in group order
//! so the report does not depend on scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::binomial::{binary_min_entropy, binomial_mcv_pvalue, mcv_count};
use super::iid::{gf_test, independence_test, GF_WIDTH, INDEPENDENCE_BLOCKS};
use super::lrs::{lrs_length, lrs_pvalue};
use super::restart::{extract_groups, GroupId, RestartMatrix};
use super::StatsError;
use crate::bits::BitString;

/// Sanity-test p-value threshold.
pub const SANITY_ALPHA: f64 = 0.000_005;
/// Per-group threshold for the three IID tests.
pub const IID_ALPHA: f64 = 0.001;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupStats {
    pub group: GroupId,
    pub length: usize,
    pub mcv_count: usize,
    pub chi2_independence: f64,
    pub p_independence: f64,
    pub chi2_gf: f64,
    pub p_gf: f64,
    pub lrs_length: usize,
    pub p_lrs: f64,
}

/// Runs the three IID tests and the MCV count on one group.
pub fn group_stats(group: GroupId, bits: &BitString) -> Result<GroupStats, StatsError> {
    let ind = independence_test(bits)?;
    let gf = gf_test(bits)?;
    let lrs = lrs_length(bits);
    let p_lrs = if lrs == 0 {
        1.0
    } else {
        lrs_pvalue(lrs, bits.len())?
    };
    Ok(GroupStats {
        group,
        length: bits.len(),
        mcv_count: mcv_count(bits),
        chi2_independence: ind.chi2,
        p_independence: ind.p_value,
        chi2_gf: gf.chi2,
        p_gf: gf.p_value,
        lrs_length: lrs,
        p_lrs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SanityResult {
    pub global_mcv: usize,
    pub worst_group: GroupId,
    pub group_length: usize,
    pub min_entropy: f64,
    pub p_value: f64,
    pub pass: bool,
}

fn sanity_from_groups<I>(groups: I) -> Result<SanityResult, StatsError>
where
    I: IntoIterator<Item = (GroupId, usize, usize)>,
{
    // (id, mcv, length); ties go to the shorter group
    let (worst_group, global_mcv, group_length) = groups
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.2.cmp(&a.2)).then(b.0.cmp(&a.0)))
        .ok_or_else(|| StatsError::InvalidParameter("no groups".into()))?;
    let p_value = binomial_mcv_pvalue(global_mcv, group_length)?;
    Ok(SanityResult {
        global_mcv,
        worst_group,
        group_length,
        min_entropy: binary_min_entropy(global_mcv, group_length)?,
        p_value,
        pass: p_value >= SANITY_ALPHA,
    })
}

/// Restart sanity test: the most-common-value count over every row and
/// column, its entropy, and its binomial p-value.
pub fn sanity_test(matrix: &RestartMatrix) -> Result<SanityResult, StatsError> {
    let groups = extract_groups(matrix);
    sanity_from_groups(
        groups
            .iter()
            .map(|(id, bits)| (*id, mcv_count(bits), bits.len())),
    )
}

/// Aggregate over all groups for one test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestSummary {
    pub threshold: f64,
    pub median_p: f64,
    pub min_p: f64,
    pub median_statistic: f64,
    pub max_statistic: f64,
    /// Groups with p below the threshold.
    pub failures: usize,
    /// True iff no group fell below the threshold.
    pub all_pass: bool,
    /// Sub-threshold groups tolerated before the test is judged failed.
    pub chance_budget: usize,
}

impl TestSummary {
    pub fn within_budget(&self) -> bool {
        self.failures <= self.chance_budget
    }
}

/// Number of sub-threshold groups one should tolerate among `groups` IID
/// groups at level `alpha`: `floor(m + 3 sqrt(m))` with `m = groups * alpha`.
pub fn chance_failure_budget(groups: usize, alpha: f64) -> usize {
    let m = groups as f64 * alpha;
    (m + 3.0 * m.sqrt()).floor() as usize
}

/// Median with the midpoint rule for even counts. `NaN` for an empty slice.
pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn summarize(p: &[f64], stat: &[f64], alpha: f64) -> TestSummary {
    let failures = p.iter().filter(|&&x| x < alpha).count();
    TestSummary {
        threshold: alpha,
        median_p: median(p),
        min_p: p.iter().copied().fold(f64::INFINITY, f64::min),
        median_statistic: median(stat),
        max_statistic: stat.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        failures,
        all_pass: failures == 0,
        chance_budget: chance_failure_budget(p.len(), alpha),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatteryReport {
    pub rows: usize,
    pub cols: usize,
    pub group_count: usize,
    pub sanity: SanityResult,
    pub independence: TestSummary,
    pub goodness_of_fit: TestSummary,
    pub lrs: TestSummary,
    pub groups: Vec<GroupStats>,
}

impl BatteryReport {
    /// Sanity test passes and every IID test stays within its chance budget.
    pub fn passed(&self) -> bool {
        self.sanity.pass
            && self.independence.within_budget()
            && self.goodness_of_fit.within_budget()
            && self.lrs.within_budget()
    }
}

/// Runs the sanity test and all three IID tests over every row and column.
///
/// Both dimensions must be multiples of 20 so each group splits into 10
/// blocks and into 4-bit patterns.
pub fn run_battery(matrix: &RestartMatrix) -> Result<BatteryReport, StatsError> {
    const UNIT: usize = INDEPENDENCE_BLOCKS * GF_WIDTH / 2;
    for (what, d) in [("rows", matrix.rows()), ("columns", matrix.cols())] {
        if d % UNIT != 0 {
            return Err(StatsError::InvalidParameter(format!(
                "{what} = {d}: group lengths must be multiples of {UNIT}"
            )));
        }
    }
    let groups = extract_groups(matrix);
    let stats = groups
        .par_iter()
        .map(|(id, bits)| group_stats(*id, bits))
        .collect::<Result<Vec<_>, _>>()?;

    let sanity = sanity_from_groups(stats.iter().map(|g| (g.group, g.mcv_count, g.length)))?;
    let col = |f: fn(&GroupStats) -> f64| stats.iter().map(f).collect::<Vec<f64>>();
    Ok(BatteryReport {
        rows: matrix.rows(),
        cols: matrix.cols(),
        group_count: stats.len(),
        sanity,
        independence: summarize(
            &col(|g| g.p_independence),
            &col(|g| g.chi2_independence),
            IID_ALPHA,
        ),
        goodness_of_fit: summarize(&col(|g| g.p_gf), &col(|g| g.chi2_gf), IID_ALPHA),
        lrs: summarize(&col(|g| g.p_lrs), &col(|g| g.lrs_length as f64), IID_ALPHA),
        groups: stats,
    })
}

/// Whole-string frequency summary of a sequential dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencySummary {
    pub bits: usize,
    pub ones: usize,
    pub mcv: usize,
    pub min_entropy: f64,
    pub p_value: f64,
}

pub fn frequency_summary(bits: &BitString) -> Result<FrequencySummary, StatsError> {
    let mcv = mcv_count(bits);
    Ok(FrequencySummary {
        bits: bits.len(),
        ones: bits.count_ones(),
        mcv,
        min_entropy: binary_min_entropy(mcv, bits.len())?,
        p_value: binomial_mcv_pvalue(mcv, bits.len())?,
    })
}
