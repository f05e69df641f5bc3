//! Wall-clock benchmark of `generate_bits` over a (recipe, L, c) grid.
//!
//! Every repetition visits every cell once, starting from a rotating offset,
//! so slow drift on the host is spread over all cells instead of landing on
//! whichever cell happened to run last. One untimed warm-up sweep comes
//! first.

use std::hint::black_box;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qsim::{generate_bits, GateRecipe, QrngConfig, QsimError};

#[derive(Debug, Error, PartialEq)]
pub enum BenchError {
    #[error("repetitions must be at least 1")]
    NoRepetitions,
    #[error("benchmark grid is empty")]
    EmptyGrid,
    #[error(transparent)]
    Qsim(#[from] QsimError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub recipes: Vec<GateRecipe>,
    pub lengths: Vec<usize>,
    pub qubit_counts: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            recipes: GateRecipe::ALL.to_vec(),
            lengths: vec![256],
            qubit_counts: vec![1, 2, 4, 8],
            repetitions: 1000,
            seed: 0,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.repetitions == 0 {
            return Err(BenchError::NoRepetitions);
        }
        if self.recipes.is_empty() || self.lengths.is_empty() || self.qubit_counts.is_empty() {
            return Err(BenchError::EmptyGrid);
        }
        for &l in &self.lengths {
            if l == 0 {
                return Err(QsimError::ZeroLength.into());
            }
        }
        for &r in &self.recipes {
            for &c in &self.qubit_counts {
                QrngConfig::new(r, c, self.seed)?;
            }
        }
        Ok(())
    }
}

/// Timing of one grid cell. The summary fields are order statistics of
/// `samples_ns`: the median averages the two middle samples for an even
/// count, quartiles interpolate linearly between ranks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellTiming {
    pub recipe: GateRecipe,
    pub length: usize,
    pub qubits: usize,
    pub median_ns: f64,
    pub q1_ns: f64,
    pub q3_ns: f64,
    pub min_ns: u64,
    pub max_ns: u64,
    pub samples_ns: Vec<u64>,
}

impl CellTiming {
    pub fn from_samples(
        recipe: GateRecipe,
        length: usize,
        qubits: usize,
        samples_ns: Vec<u64>,
    ) -> Self {
        let mut sorted = samples_ns.clone();
        sorted.sort_unstable();
        Self {
            recipe,
            length,
            qubits,
            median_ns: quantile(&sorted, 0.5),
            q1_ns: quantile(&sorted, 0.25),
            q3_ns: quantile(&sorted, 0.75),
            min_ns: sorted.first().copied().unwrap_or(0),
            max_ns: sorted.last().copied().unwrap_or(0),
            samples_ns,
        }
    }
}

/// Linear interpolation between closest ranks of sorted data.
pub fn quantile(sorted: &[u64], q: f64) -> f64 {
    match sorted.len() {
        0 => f64::NAN,
        1 => sorted[0] as f64,
        n => {
            let pos = q * (n - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = pos.ceil() as usize;
            let frac = pos - lo as f64;
            sorted[lo] as f64 + (sorted[hi] as f64 - sorted[lo] as f64) * frac
        }
    }
}

/// Median times for one (recipe, L) row in increasing `c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trend {
    pub recipe: GateRecipe,
    pub length: usize,
    pub medians: Vec<(usize, f64)>,
    pub strictly_decreasing: bool,
}

/// Recipes ranked fastest first at one (L, c).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecipeRanking {
    pub length: usize,
    pub qubits: usize,
    pub fastest_first: Vec<GateRecipe>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub cells: Vec<CellTiming>,
    pub trends: Vec<Trend>,
    pub rankings: Vec<RecipeRanking>,
}

impl BenchReport {
    pub fn from_cells(config: BenchConfig, cells: Vec<CellTiming>) -> Self {
        let mut trends = Vec::new();
        for &recipe in &config.recipes {
            for &length in &config.lengths {
                let mut medians: Vec<(usize, f64)> = cells
                    .iter()
                    .filter(|t| t.recipe == recipe && t.length == length)
                    .map(|t| (t.qubits, t.median_ns))
                    .collect();
                medians.sort_by_key(|m| m.0);
                let strictly_decreasing = medians.windows(2).all(|w| w[1].1 < w[0].1);
                trends.push(Trend {
                    recipe,
                    length,
                    medians,
                    strictly_decreasing,
                });
            }
        }
        let mut rankings = Vec::new();
        for &length in &config.lengths {
            for &qubits in &config.qubit_counts {
                let mut row: Vec<&CellTiming> = cells
                    .iter()
                    .filter(|t| t.length == length && t.qubits == qubits)
                    .collect();
                row.sort_by(|a, b| a.median_ns.total_cmp(&b.median_ns));
                rankings.push(RecipeRanking {
                    length,
                    qubits,
                    fastest_first: row.iter().map(|t| t.recipe).collect(),
                });
            }
        }
        Self {
            config,
            cells,
            trends,
            rankings,
        }
    }

    pub fn cell(&self, recipe: GateRecipe, length: usize, qubits: usize) -> Option<&CellTiming> {
        self.cells
            .iter()
            .find(|t| t.recipe == recipe && t.length == length && t.qubits == qubits)
    }

    pub fn all_trends_decreasing(&self) -> bool {
        self.trends.iter().all(|t| t.strictly_decreasing)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// One row per cell with the summary statistics.
    pub fn cells_csv(&self) -> csv::Result<String> {
        #[derive(Serialize)]
        struct Row<'a> {
            recipe: &'a str,
            length: usize,
            qubits: usize,
            repetitions: usize,
            median_ns: f64,
            q1_ns: f64,
            q3_ns: f64,
            min_ns: u64,
            max_ns: u64,
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for t in &self.cells {
            w.serialize(Row {
                recipe: t.recipe.short_name(),
                length: t.length,
                qubits: t.qubits,
                repetitions: t.samples_ns.len(),
                median_ns: t.median_ns,
                q1_ns: t.q1_ns,
                q3_ns: t.q3_ns,
                min_ns: t.min_ns,
                max_ns: t.max_ns,
            })?;
        }
        finish(w)
    }

    /// Every raw sample, one per line.
    pub fn samples_csv(&self) -> csv::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["recipe", "length", "qubits", "rep", "ns"])?;
        for t in &self.cells {
            for (i, ns) in t.samples_ns.iter().enumerate() {
                w.write_record([
                    t.recipe.short_name().to_string(),
                    t.length.to_string(),
                    t.qubits.to_string(),
                    i.to_string(),
                    ns.to_string(),
                ])?;
            }
        }
        finish(w)
    }
}

fn finish(w: csv::Writer<Vec<u8>>) -> csv::Result<String> {
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn time_once(cfg: &QrngConfig, length: usize) -> u64 {
    let start = Instant::now();
    let bits = generate_bits(black_box(cfg), black_box(length)).expect("validated config");
    let ns = start.elapsed().as_nanos();
    black_box(bits);
    u64::try_from(ns).unwrap_or(u64::MAX)
}

/// Times every cell `config.repetitions` times. Cells run one at a time.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport, BenchError> {
    config.validate()?;
    let mut grid = Vec::new();
    for &recipe in &config.recipes {
        for &length in &config.lengths {
            for &c in &config.qubit_counts {
                grid.push((QrngConfig::new(recipe, c, config.seed)?, length));
            }
        }
    }

    for (cfg, length) in &grid {
        time_once(cfg, *length);
    }

    let mut samples = vec![Vec::with_capacity(config.repetitions); grid.len()];
    for rep in 0..config.repetitions {
        for k in 0..grid.len() {
            let idx = (k + rep) % grid.len();
            let (cfg, length) = &grid[idx];
            samples[idx].push(time_once(cfg, *length));
        }
    }

    let cells = grid
        .iter()
        .zip(samples)
        .map(|((cfg, length), s)| CellTiming::from_samples(cfg.recipe, *length, cfg.num_qubits, s))
        .collect();
    Ok(BenchReport::from_cells(config.clone(), cells))
}
