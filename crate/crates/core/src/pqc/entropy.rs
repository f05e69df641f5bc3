use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::qsim::{Qrng, QrngConfig, QsimError};
use crate::source::{BitSource, SeededRng, SourceError};

/// Randomness provider for the seed-wiring flows.
///
/// A source is a stateful stream; give each concurrent flow its own.
pub trait EntropySource {
    fn label(&self) -> &str;

    /// Total bits handed out by successful requests.
    fn bits_served(&self) -> u64;

    /// Exactly `bits` fresh bits, or an error. A failed request serves
    /// nothing.
    fn request(&mut self, bits: usize) -> Result<BitString, SourceError>;
}

impl<E: EntropySource + ?Sized> EntropySource for &mut E {
    fn label(&self) -> &str {
        (**self).label()
    }

    fn bits_served(&self) -> u64 {
        (**self).bits_served()
    }

    fn request(&mut self, bits: usize) -> Result<BitString, SourceError> {
        (**self).request(bits)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawRecord {
    pub requested: usize,
    pub ok: bool,
}

/// Wraps a [`BitSource`] with a label, a served-bits counter and a log of
/// every request in order.
#[derive(Debug, Clone)]
pub struct MeteredSource<S> {
    inner: S,
    label: String,
    served: u64,
    draws: Vec<DrawRecord>,
}

impl<S: BitSource> MeteredSource<S> {
    pub fn new(label: impl Into<String>, inner: S) -> Self {
        Self {
            inner,
            label: label.into(),
            served: 0,
            draws: Vec::new(),
        }
    }

    pub fn draws(&self) -> &[DrawRecord] {
        &self.draws
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }

    pub fn into_inner(self) -> S {
        self.inner
    }
}

impl MeteredSource<Qrng> {
    /// QRNG-backed source labelled by its recipe and width.
    pub fn qrng(config: QrngConfig) -> Result<Self, QsimError> {
        let label = format!("qrng/{}/c={}", config.recipe, config.num_qubits);
        Ok(Self::new(label, Qrng::new(config)?))
    }
}

impl MeteredSource<SeededRng> {
    pub fn host(seed: u64) -> Self {
        Self::new("host-prng", SeededRng::new(seed))
    }
}

impl<S: BitSource> EntropySource for MeteredSource<S> {
    fn label(&self) -> &str {
        &self.label
    }

    fn bits_served(&self) -> u64 {
        self.served
    }

    fn request(&mut self, bits: usize) -> Result<BitString, SourceError> {
        let result = self.inner.next_bits(bits).and_then(|b| {
            if b.len() == bits {
                Ok(b)
            } else {
                Err(SourceError::Failed(format!(
                    "short read: {} of {bits} bits",
                    b.len()
                )))
            }
        });
        self.draws.push(DrawRecord {
            requested: bits,
            ok: result.is_ok(),
        });
        if result.is_ok() {
            self.served += bits as u64;
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::ScriptedSource;

    struct Short;
    impl BitSource for Short {
        fn next_bits(&mut self, n: usize) -> Result<BitString, SourceError> {
            Ok(BitString::zeros(n / 2))
        }
    }

    #[test]
    fn counter_and_log() {
        let mut s = MeteredSource::new("t", ScriptedSource::new(BitString::zeros(100)).fail_on(1));
        s.request(10).unwrap();
        assert!(s.request(10).is_err());
        s.request(20).unwrap();
        assert_eq!(s.bits_served(), 30);
        assert_eq!(
            s.draws()
                .iter()
                .map(|d| (d.requested, d.ok))
                .collect::<Vec<_>>(),
            [(10, true), (10, false), (20, true)]
        );
    }

    #[test]
    fn short_read_is_failure() {
        let mut s = MeteredSource::new("short", Short);
        assert!(s.request(8).is_err());
        assert_eq!(s.bits_served(), 0);
    }

    #[test]
    fn labels() {
        use crate::qsim::GateRecipe;
        let q = MeteredSource::qrng(QrngConfig::new(GateRecipe::u(), 8, 0).unwrap()).unwrap();
        assert_eq!(q.label(), "qrng/u/c=8");
        assert_eq!(MeteredSource::host(1).label(), "host-prng");
    }
}
