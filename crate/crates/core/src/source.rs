//! Bit sources: anything that can hand out a requested number of bits.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::bits::BitString;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SourceError {
    #[error("entropy source exhausted: requested {requested} bits, {available} available")]
    Exhausted { requested: usize, available: usize },
    #[error("entropy source failed: {0}")]
    Failed(String),
}

pub trait BitSource {
    /// Returns exactly `n` bits or an error; never a short read.
    fn next_bits(&mut self, n: usize) -> Result<BitString, SourceError>;
}

impl<S: BitSource + ?Sized> BitSource for &mut S {
    fn next_bits(&mut self, n: usize) -> Result<BitString, SourceError> {
        (**self).next_bits(n)
    }
}

impl<S: BitSource + ?Sized> BitSource for Box<S> {
    fn next_bits(&mut self, n: usize) -> Result<BitString, SourceError> {
        (**self).next_bits(n)
    }
}

/// Emits the same bit forever.
#[derive(Debug, Clone, Copy)]
pub struct ConstantSource(pub bool);

impl BitSource for ConstantSource {
    fn next_bits(&mut self, n: usize) -> Result<BitString, SourceError> {
        Ok(std::iter::repeat_n(self.0, n).collect())
    }
}

/// Conventional seeded CSPRNG (ChaCha20), used as the non-quantum baseline.
#[derive(Debug, Clone)]
pub struct SeededRng {
    rng: ChaCha20Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }
}

impl BitSource for SeededRng {
    fn next_bits(&mut self, n: usize) -> Result<BitString, SourceError> {
        let mut bytes = vec![0u8; n.div_ceil(8)];
        self.rng.fill_bytes(&mut bytes);
        Ok(BitString::from_bytes(&bytes, n).expect("buffer sized for n bits"))
    }
}

/// Serves bits from a fixed buffer, front to back, and can be told to fail
/// on a given request.
#[derive(Debug, Clone)]
pub struct ScriptedSource {
    bits: BitString,
    pos: usize,
    requests: usize,
    fail_on_request: Option<usize>,
}

impl ScriptedSource {
    pub fn new(bits: BitString) -> Self {
        Self {
            bits,
            pos: 0,
            requests: 0,
            fail_on_request: None,
        }
    }

    /// Makes the `index`-th request (0-based) fail.
    pub fn fail_on(mut self, index: usize) -> Self {
        self.fail_on_request = Some(index);
        self
    }

    pub fn consumed(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }
}

impl BitSource for ScriptedSource {
    fn next_bits(&mut self, n: usize) -> Result<BitString, SourceError> {
        let index = self.requests;
        self.requests += 1;
        if self.fail_on_request == Some(index) {
            return Err(SourceError::Failed(format!(
                "scripted failure on request {index}"
            )));
        }
        if self.remaining() < n {
            return Err(SourceError::Exhausted {
                requested: n,
                available: self.remaining(),
            });
        }
        let out = self.bits.slice(self.pos..self.pos + n);
        self.pos += n;
        Ok(out)
    }
}
