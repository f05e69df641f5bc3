//! Sequential and restart datasets.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::StatsError;
use crate::bits::BitString;
use crate::source::BitSource;

pub const DEFAULT_SEQUENTIAL_BITS: usize = 1_000_000;
pub const DEFAULT_RESTARTS: usize = 1000;
pub const DEFAULT_BITS_PER_RESTART: usize = 1000;

/// `rows x cols` bit matrix, row-major. Row `i` holds the bits of the
/// `i`-th restart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestartMatrix {
    rows: usize,
    cols: usize,
    bits: BitString,
}

impl RestartMatrix {
    pub fn from_bits(bits: BitString, rows: usize, cols: usize) -> Result<Self, StatsError> {
        if rows == 0 || cols == 0 {
            return Err(StatsError::InvalidParameter(
                "matrix dimensions must be positive".into(),
            ));
        }
        if bits.len() != rows * cols {
            return Err(StatsError::InvalidParameter(format!(
                "{} bits do not fill a {rows}x{cols} matrix",
                bits.len()
            )));
        }
        Ok(Self { rows, cols, bits })
    }

    pub fn from_rows(rows: &[BitString]) -> Result<Self, StatsError> {
        let cols = rows.first().map_or(0, BitString::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(StatsError::InvalidParameter(
                "rows have unequal lengths".into(),
            ));
        }
        let mut bits = BitString::with_capacity(rows.len() * cols);
        for r in rows {
            bits.append(r);
        }
        Self::from_bits(bits, rows.len(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits.get(row * self.cols + col).expect("cell in range")
    }

    pub fn row(&self, i: usize) -> BitString {
        self.bits.slice(i * self.cols..(i + 1) * self.cols)
    }

    pub fn column(&self, j: usize) -> BitString {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Row,
    Column,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupId {
    pub axis: Axis,
    pub index: usize,
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axis {
            Axis::Row => write!(f, "row {}", self.index),
            Axis::Column => write!(f, "column {}", self.index),
        }
    }
}

/// All rows, then all columns.
pub fn extract_groups(matrix: &RestartMatrix) -> Vec<(GroupId, BitString)> {
    let rows = (0..matrix.rows()).map(|i| {
        (
            GroupId {
                axis: Axis::Row,
                index: i,
            },
            matrix.row(i),
        )
    });
    let cols = (0..matrix.cols()).map(|j| {
        (
            GroupId {
                axis: Axis::Column,
                index: j,
            },
            matrix.column(j),
        )
    });
    rows.chain(cols).collect()
}

/// `n` bits from one uninterrupted session of `source`.
pub fn collect_sequential<S: BitSource + ?Sized>(
    source: &mut S,
    n: usize,
) -> Result<BitString, StatsError> {
    if n == 0 {
        return Err(StatsError::InvalidParameter(
            "sequential dataset needs at least one bit".into(),
        ));
    }
    let bits = source.next_bits(n).map_err(|e| StatsError::Source {
        completed_rows: 0,
        source: e,
    })?;
    debug_assert_eq!(bits.len(), n);
    Ok(bits)
}

/// One fresh session per row. `factory(i)` must start a new, independent
/// session for restart `i`.
pub fn collect_restart<S, F>(
    mut factory: F,
    restarts: usize,
    bits_per_restart: usize,
) -> Result<RestartMatrix, StatsError>
where
    S: BitSource,
    F: FnMut(usize) -> S,
{
    if restarts == 0 || bits_per_restart == 0 {
        return Err(StatsError::InvalidParameter(
            "restart matrix dimensions must be positive".into(),
        ));
    }
    let mut bits = BitString::with_capacity(restarts * bits_per_restart);
    for i in 0..restarts {
        let mut session = factory(i);
        let row = session
            .next_bits(bits_per_restart)
            .map_err(|e| StatsError::Source {
                completed_rows: i,
                source: e,
            })?;
        bits.append(&row);
    }
    RestartMatrix::from_bits(bits, restarts, bits_per_restart)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{GateRecipe, Qrng, QrngConfig};
    use crate::source::{ConstantSource, ScriptedSource, SourceError};

    fn qrng_factory(seed: u64) -> impl FnMut(usize) -> Qrng {
        let cfg = QrngConfig::new(GateRecipe::H, 1, seed).unwrap();
        move |i| Qrng::with_stream(cfg, i as u64).unwrap()
    }

    #[test]
    fn sequential_constant() {
        let bits = collect_sequential(&mut ConstantSource(false), 100).unwrap();
        assert_eq!(bits.len(), 100);
        assert_eq!(bits.count_ones(), 0);
    }

    #[test]
    fn sequential_reproducible() {
        let cfg = QrngConfig::new(GateRecipe::sx(), 2, 5).unwrap();
        let a = collect_sequential(&mut Qrng::new(cfg).unwrap(), 1000).unwrap();
        let b = collect_sequential(&mut Qrng::new(cfg).unwrap(), 1000).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn restart_shape_and_distinct_rows() {
        let m = collect_restart(qrng_factory(3), 2, 4).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 4));
        let m = collect_restart(qrng_factory(3), 20, 64).unwrap();
        for i in 1..20 {
            assert_ne!(m.row(0), m.row(i));
        }
    }

    #[test]
    fn restart_failure_reports_progress() {
        let err = collect_restart(
            |i| {
                if i < 3 {
                    ScriptedSource::new(BitString::zeros(8))
                } else {
                    ScriptedSource::new(BitString::zeros(2))
                }
            },
            5,
            8,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            StatsError::Source {
                completed_rows: 3,
                source: SourceError::Exhausted { .. }
            }
        ));
    }

    #[test]
    fn groups_rows_then_columns() {
        let m = RestartMatrix::from_rows(&[
            BitString::parse("100").unwrap(),
            BitString::parse("010").unwrap(),
            BitString::parse("001").unwrap(),
        ])
        .unwrap();
        let g = extract_groups(&m);
        let text: Vec<String> = g.iter().map(|(_, b)| b.to_string()).collect();
        assert_eq!(text, ["100", "010", "001", "100", "010", "001"]);
        assert_eq!(
            g[3].0,
            GroupId {
                axis: Axis::Column,
                index: 0
            }
        );

        let m = RestartMatrix::from_bits(BitString::zeros(6), 2, 3).unwrap();
        assert_eq!(extract_groups(&m).len(), 5);
    }

    #[test]
    fn malformed_matrices() {
        assert!(RestartMatrix::from_bits(BitString::zeros(5), 2, 3).is_err());
        assert!(RestartMatrix::from_rows(&[BitString::zeros(3), BitString::zeros(2)]).is_err());
        assert!(collect_restart(qrng_factory(0), 0, 4).is_err());
    }
}
