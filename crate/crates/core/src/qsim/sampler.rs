//! Classical uniform source used to collapse simulated qubits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Stream of uniform reals in `[0, 1)`.
pub trait UniformSampler {
    fn next_uniform(&mut self) -> f64;
}

/// ChaCha20-backed sampler. A `(seed, stream)` pair selects one of 2^64
/// independent streams, each with period 2^68 words.
#[derive(Debug, Clone)]
pub struct ChaChaSampler {
    rng: ChaCha20Rng,
}

impl ChaChaSampler {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    /// Independent sampler on another stream of the same seed.
    pub fn split(&self, stream: u64) -> Self {
        let mut rng = self.rng.clone();
        rng.set_stream(stream);
        rng.set_word_pos(0);
        Self { rng }
    }
}

impl UniformSampler for ChaChaSampler {
    #[inline]
    fn next_uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }
}

/// Replays a fixed list of draws, cycling. Test helper.
#[derive(Debug, Clone)]
pub struct FixedSampler {
    draws: Vec<f64>,
    pos: usize,
}

impl FixedSampler {
    pub fn new(draws: Vec<f64>) -> Self {
        assert!(!draws.is_empty());
        Self { draws, pos: 0 }
    }
}

impl UniformSampler for FixedSampler {
    fn next_uniform(&mut self) -> f64 {
        let u = self.draws[self.pos % self.draws.len()];
        self.pos += 1;
        u
    }
}
