//! Simulated single-qubit QRNG, a restart/IID validation battery for its
//! output, and seed wiring of that output into ML-KEM, ML-DSA and SLH-DSA.
//!
//! * [`qsim`]: gate recipes, state evolution, measurement and the bit generator.
//! * [`stats`]: min-entropy sanity test, chi-square IID tests, LRS, battery and reports.
//! * [`pqc`]: entropy sources, seed bundles, signing/KEM flows and the mock backend.
//! * [`bitfile`] and [`timing`]: on-disk bit format and the generation benchmark.

pub mod bitfile;
pub mod bits;
pub mod pqc;
pub mod qsim;
pub mod source;
pub mod stats;
pub mod timing;

pub use bits::BitString;
pub use qsim::{generate_bits, GateRecipe, Qrng, QrngConfig, QsimError};
pub use source::{BitSource, ConstantSource, ScriptedSource, SeededRng, SourceError};
pub use stats::{run_battery, BatteryReport, StatsError};
