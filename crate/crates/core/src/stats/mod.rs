//! Entropy validation battery in the style of NIST SP 800-90B: restart
//! sanity test on the most common value, block independence, 4-bit
//! goodness-of-fit, and longest repeated substring.

mod battery;
mod binomial;
mod iid;
mod lrs;
pub mod report;
mod restart;
mod special;

use thiserror::Error;

use crate::source::SourceError;

pub use battery::{
    chance_failure_budget, frequency_summary, group_stats, median, run_battery, sanity_test,
    BatteryReport, FrequencySummary, GroupStats, SanityResult, TestSummary, IID_ALPHA,
    SANITY_ALPHA,
};
pub use binomial::{binary_min_entropy, binomial_mcv_pvalue, mcv_count};
pub use iid::{gf_test, independence_test, ChiSquareResult, GF_DF, INDEPENDENCE_DF};
pub use lrs::{lcp_array, lrs_length, lrs_length_symbols, lrs_pvalue, suffix_array};
pub use report::{
    groups_csv, summary_csv, validate_restart, validate_sequential, DatasetMode, SummaryRow,
    ValidationReport,
};
pub use restart::{
    collect_restart, collect_sequential, extract_groups, Axis, GroupId, RestartMatrix,
    DEFAULT_BITS_PER_RESTART, DEFAULT_RESTARTS, DEFAULT_SEQUENTIAL_BITS,
};
pub use special::{chi2_survival, gamma_p, gamma_q, ln_gamma};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("bit source failed after {completed_rows} complete rows: {source}")]
    Source {
        completed_rows: usize,
        #[source]
        source: SourceError,
    },
    #[error("insufficient data: need {needed} bits, have {available}")]
    InsufficientData { needed: usize, available: usize },
}
