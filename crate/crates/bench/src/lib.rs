//! Criterion benchmarks for `qrng-core`; see `benches/`.
