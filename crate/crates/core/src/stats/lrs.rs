//! Longest repeated substring via suffix array + LCP, and its collision
//! p-value.

use super::StatsError;
use crate::bits::BitString;

/// Suffix array by prefix doubling, `O(n log^2 n)`.
pub fn suffix_array(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut sa: Vec<usize> = (0..n).collect();
    if n <= 1 {
        return sa;
    }
    let mut rank: Vec<usize> = s.iter().map(|&c| c as usize).collect();
    let mut next = vec![0usize; n];
    let mut k = 1;
    loop {
        // rank of the second half; suffixes running off the end sort first
        let key = |i: usize| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i));
        next[sa[0]] = 0;
        for w in 1..n {
            next[sa[w]] = next[sa[w - 1]] + usize::from(key(sa[w - 1]) != key(sa[w]));
        }
        std::mem::swap(&mut rank, &mut next);
        if rank[sa[n - 1]] == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// Kasai's algorithm. `lcp[r]` is the common-prefix length of suffixes
/// `sa[r]` and `sa[r + 1]`; the last entry is 0.
pub fn lcp_array(s: &[u8], sa: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut rank = vec![0usize; n];
    for (r, &i) in sa.iter().enumerate() {
        rank[i] = r;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] + 1 == n {
            h = 0;
            continue;
        }
        let j = sa[rank[i] + 1];
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[rank[i]] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

/// Length of the longest substring that starts at two distinct positions
/// (occurrences may overlap). 0 when nothing repeats.
pub fn lrs_length_symbols(s: &[u8]) -> usize {
    if s.len() < 2 {
        return 0;
    }
    let sa = suffix_array(s);
    lcp_array(s, &sa).into_iter().max().unwrap_or(0)
}

pub fn lrs_length(group: &BitString) -> usize {
    lrs_length_symbols(&group.to_symbols())
}

/// Probability that a fair IID bit string of length `n` contains some pair
/// of equal length-`w` windows: `1 - (1 - 2^-w)^C(n - w + 1, 2)`.
pub fn lrs_pvalue(w: usize, n: usize) -> Result<f64, StatsError> {
    if w == 0 || w >= n {
        return Err(StatsError::InvalidParameter(format!(
            "repeat length {w} out of range for length {n}"
        )));
    }
    let windows = (n - w + 1) as f64;
    let pairs = windows * (windows - 1.0) / 2.0;
    let p_pair = 2f64.powi(-(w as i32));
    Ok((-(pairs * (-p_pair).ln_1p()).exp_m1()).clamp(0.0, 1.0))
}
