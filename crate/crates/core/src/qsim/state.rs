use num_complex::Complex64;

use super::gate::GateMatrix;
use super::sampler::UniformSampler;
use super::{QsimError, NORM_TOL};

/// Single-qubit pure state `alpha|0> + beta|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl QubitState {
    pub const ZERO: QubitState = QubitState {
        alpha: Complex64::new(1.0, 0.0),
        beta: Complex64::new(0.0, 0.0),
    };

    pub const ONE: QubitState = QubitState {
        alpha: Complex64::new(0.0, 0.0),
        beta: Complex64::new(1.0, 0.0),
    };

    /// Checked constructor; amplitudes must be finite and normalised.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self, QsimError> {
        let s = Self { alpha, beta };
        if ![alpha.re, alpha.im, beta.re, beta.im]
            .iter()
            .all(|x| x.is_finite())
        {
            return Err(QsimError::NonFinite);
        }
        let dev = (s.norm_sqr() - 1.0).abs();
        if dev > NORM_TOL {
            return Err(QsimError::NotNormalized(dev));
        }
        Ok(s)
    }

    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }
}

impl Default for QubitState {
    fn default() -> Self {
        Self::ZERO
    }
}

/// Matrix-vector product. Gate and state are trusted to be valid; use
/// [`apply_gate_checked`] for untrusted inputs.
#[inline]
pub fn apply_gate(gate: &GateMatrix, state: &QubitState) -> QubitState {
    let e = gate.entries();
    QubitState {
        alpha: e[0][0] * state.alpha + e[0][1] * state.beta,
        beta: e[1][0] * state.alpha + e[1][1] * state.beta,
    }
}

pub fn apply_gate_checked(gate: &GateMatrix, state: &QubitState) -> Result<QubitState, QsimError> {
    let dev = gate.unitarity_deviation();
    if dev > super::UNITARITY_TOL {
        return Err(QsimError::NotUnitary(dev));
    }
    let state = QubitState::new(state.alpha, state.beta)?;
    let out = apply_gate(gate, &state);
    QubitState::new(out.alpha, out.beta)
}

/// Born-rule outcome probabilities `(p0, p1)`.
#[inline]
pub fn outcome_probabilities(state: &QubitState) -> (f64, f64) {
    (state.alpha.norm_sqr(), state.beta.norm_sqr())
}

/// Collapses `state` using one uniform draw `u` in `[0, 1)`: 1 iff `u < p1`.
#[inline]
pub fn measure_with(state: &QubitState, u: f64) -> bool {
    u < state.beta.norm_sqr()
}

#[inline]
pub fn measure<S: UniformSampler + ?Sized>(state: &QubitState, sampler: &mut S) -> bool {
    measure_with(state, sampler.next_uniform())
}
