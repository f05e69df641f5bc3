//! Block-frequency independence test and 4-bit goodness-of-fit test.

use serde::{Deserialize, Serialize};

use super::special::chi2_survival;
use super::StatsError;
use crate::bits::BitString;

pub const INDEPENDENCE_BLOCKS: usize = 10;
pub const INDEPENDENCE_DF: u32 = 9;
pub const GF_WIDTH: usize = 4;
/// Degrees of freedom for the 16-cell pattern test. Sixteen cells would
/// conventionally give 15; 14 is kept to match the published thresholds.
pub const GF_DF: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareResult {
    pub chi2: f64,
    pub p_value: f64,
}

/// Splits the group into 10 equal blocks and sums the per-block
/// `(obs - E)^2 / E` over both symbols, `E = block_len / 2`.
pub fn independence_test(group: &BitString) -> Result<ChiSquareResult, StatsError> {
    let n = group.len();
    if n == 0 || !n.is_multiple_of(INDEPENDENCE_BLOCKS) {
        return Err(StatsError::InvalidParameter(format!(
            "independence test needs a length divisible by {INDEPENDENCE_BLOCKS}, got {n}"
        )));
    }
    let block = n / INDEPENDENCE_BLOCKS;
    let expected = block as f64 / 2.0;
    let mut chi2 = 0.0;
    for chunk in group.to_symbols().chunks_exact(block) {
        let ones = chunk.iter().map(|&b| b as usize).sum::<usize>() as f64;
        let zeros = block as f64 - ones;
        chi2 += (ones - expected).powi(2) / expected + (zeros - expected).powi(2) / expected;
    }
    Ok(ChiSquareResult {
        chi2,
        p_value: chi2_survival(chi2, INDEPENDENCE_DF)?,
    })
}

/// Counts the 16 patterns over consecutive non-overlapping 4-bit windows
/// (first bit most significant) and tests them against a flat expectation.
pub fn gf_test(group: &BitString) -> Result<ChiSquareResult, StatsError> {
    let n = group.len();
    if n == 0 || !n.is_multiple_of(GF_WIDTH) {
        return Err(StatsError::InvalidParameter(format!(
            "goodness-of-fit test needs a length divisible by {GF_WIDTH}, got {n}"
        )));
    }
    let mut counts = [0usize; 16];
    let symbols = group.to_symbols();
    for nib in symbols.chunks_exact(GF_WIDTH) {
        let v = nib.iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
        counts[v] += 1;
    }
    let expected = (n / GF_WIDTH) as f64 / 16.0;
    let chi2 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum::<f64>();
    Ok(ChiSquareResult {
        chi2,
        p_value: chi2_survival(chi2, GF_DF)?,
    })
}
