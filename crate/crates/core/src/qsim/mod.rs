//! Single-qubit statevector simulation of the six superposition recipes and
//! the measurement-driven bit generator built on top of them.
//!
//! A `c`-qubit circuit is simulated as `c` independent single-qubit states;
//! every recipe is a product circuit, so no joint `2^c` vector is needed.

mod gate;
mod generator;
mod sampler;
mod state;

use thiserror::Error;

pub use gate::{build_gate, ComplexValue, GateMatrix, GateRecipe};
pub use generator::{
    circuit_passes, generate_bits, superposition_check, Circuit, Qrng, QrngConfig,
};
pub use sampler::{ChaChaSampler, FixedSampler, UniformSampler};
pub use state::{
    apply_gate, apply_gate_checked, measure, measure_with, outcome_probabilities, QubitState,
};

/// Unitarity tolerance, per entry of `U^dagger U - I`.
pub const UNITARITY_TOL: f64 = 1e-12;
/// Normalisation / probability tolerance.
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QsimError {
    #[error("non-finite angle in recipe {0:?}")]
    NonFiniteAngle(GateRecipe),
    #[error("non-finite amplitude or matrix entry")]
    NonFinite,
    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),
    #[error("state is not normalised (|norm^2 - 1| = {0:e})")]
    NotNormalized(f64),
    #[error("circuit needs at least one qubit")]
    NoQubits,
    #[error("requested bit length must be at least 1")]
    ZeroLength,
    #[error("unknown recipe '{0}' (expected one of h, sx, rx, ry, ph, u)")]
    UnknownRecipe(String),
}
