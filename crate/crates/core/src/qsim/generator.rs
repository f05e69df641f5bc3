use std::hint::black_box;

use serde::{Deserialize, Serialize};

use super::gate::{build_gate, GateMatrix, GateRecipe};
use super::sampler::{ChaChaSampler, UniformSampler};
use super::state::{apply_gate, measure, outcome_probabilities, QubitState};
use super::{QsimError, NORM_TOL};
use crate::bits::BitString;
use crate::source::{BitSource, SourceError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QrngConfig {
    pub recipe: GateRecipe,
    pub num_qubits: usize,
    pub sampler_seed: u64,
}

impl QrngConfig {
    pub fn new(
        recipe: GateRecipe,
        num_qubits: usize,
        sampler_seed: u64,
    ) -> Result<Self, QsimError> {
        let cfg = Self {
            recipe,
            num_qubits,
            sampler_seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), QsimError> {
        if self.num_qubits == 0 {
            return Err(QsimError::NoQubits);
        }
        build_gate(self.recipe).map(|_| ())
    }
}

/// Number of circuit executions needed for `bits` output bits on a
/// `width`-qubit circuit.
pub fn circuit_passes(bits: usize, width: usize) -> usize {
    bits.div_ceil(width)
}

/// A `width`-qubit circuit: every qubit starts in |0>, gets the recipe's
/// gate, and is measured.
///
/// Each [`run`](Self::run) is a complete execution: the gate is compiled
/// from the recipe and a fresh register is allocated, as a simulator job
/// would. That fixed cost is paid once per pass regardless of width.
#[derive(Debug, Clone)]
pub struct Circuit {
    recipe: GateRecipe,
    width: usize,
}

impl Circuit {
    pub fn new(recipe: GateRecipe, width: usize) -> Result<Self, QsimError> {
        if width == 0 {
            return Err(QsimError::NoQubits);
        }
        build_gate(recipe)?;
        Ok(Self { recipe, width })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn recipe(&self) -> GateRecipe {
        self.recipe
    }

    pub fn gate(&self) -> GateMatrix {
        build_gate(self.recipe).expect("recipe validated in Circuit::new")
    }

    /// Executes one pass and appends the first `keep` measured bits to `out`.
    ///
    /// All `width` qubits are measured (each consumes one draw) even when
    /// `keep < width`.
    pub fn run<S: UniformSampler + ?Sized>(
        &self,
        sampler: &mut S,
        out: &mut BitString,
        keep: usize,
    ) {
        // black_box keeps the per-pass setup from being hoisted or elided
        let gate = black_box(self.gate());
        let mut register = black_box(vec![QubitState::ZERO; self.width]);
        for q in register.iter_mut() {
            *q = apply_gate(&gate, q);
        }
        for (i, q) in register.iter().enumerate() {
            let bit = measure(q, sampler);
            if i < keep {
                out.push(bit);
            }
        }
    }
}

/// A running generator session: one circuit plus its own sampler stream.
#[derive(Debug, Clone)]
pub struct Qrng {
    config: QrngConfig,
    circuit: Circuit,
    sampler: ChaChaSampler,
    passes: u64,
}

impl Qrng {
    pub fn new(config: QrngConfig) -> Result<Self, QsimError> {
        Self::with_stream(config, 0)
    }

    /// Session on sampler stream `stream` of the configured seed. Distinct
    /// streams are independent.
    pub fn with_stream(config: QrngConfig, stream: u64) -> Result<Self, QsimError> {
        config.validate()?;
        Ok(Self {
            circuit: Circuit::new(config.recipe, config.num_qubits)?,
            sampler: ChaChaSampler::with_stream(config.sampler_seed, stream),
            config,
            passes: 0,
        })
    }

    pub fn config(&self) -> &QrngConfig {
        &self.config
    }

    /// Circuit executions so far.
    pub fn passes(&self) -> u64 {
        self.passes
    }

    /// Runs `ceil(n / c)` passes and returns exactly `n` bits.
    pub fn generate(&mut self, n: usize) -> BitString {
        let width = self.circuit.width();
        let mut out = BitString::with_capacity(n);
        let mut remaining = n;
        while remaining > 0 {
            let keep = remaining.min(width);
            self.circuit.run(&mut self.sampler, &mut out, keep);
            remaining -= keep;
            self.passes += 1;
        }
        out
    }
}

impl BitSource for Qrng {
    fn next_bits(&mut self, n: usize) -> Result<BitString, SourceError> {
        Ok(self.generate(n))
    }
}

/// Fresh session: `length` bits from `config`.
pub fn generate_bits(config: &QrngConfig, length: usize) -> Result<BitString, QsimError> {
    if length == 0 {
        return Err(QsimError::ZeroLength);
    }
    Ok(Qrng::new(*config)?.generate(length))
}

/// True iff the recipe takes |0> to equal outcome probabilities.
pub fn superposition_check(recipe: GateRecipe) -> bool {
    let Ok(gate) = build_gate(recipe) else {
        return false;
    };
    let (p0, p1) = outcome_probabilities(&apply_gate(&gate, &QubitState::ZERO));
    (p0 - 0.5).abs() <= NORM_TOL && (p1 - 0.5).abs() <= NORM_TOL
}
