//! One-shot runs of a single PQC operation against a chosen entropy source,
//! with timing and draw accounting. Used by the CLI demo.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::entropy::{DrawRecord, EntropySource, MeteredSource};
use super::flows::{self, SignRequest, SlhKeygenMode};
use super::mock::{MockBackend, Transcript};
use super::params::SlhParamSet;
use super::PqcError;
use crate::source::{BitSource, SeededRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PqcAlgorithm {
    MlKem(u16),
    MlDsa(u8),
    SlhDsa(SlhParamSet),
}

impl PqcAlgorithm {
    pub fn name(&self) -> String {
        match self {
            Self::MlKem(k) => format!("ML-KEM-{k}"),
            Self::MlDsa(l) => format!("ML-DSA-{l}"),
            Self::SlhDsa(p) => p.name(),
        }
    }

    pub fn supports(&self, op: Operation) -> bool {
        matches!(
            (self, op),
            (_, Operation::KeyGen)
                | (Self::MlKem(_), Operation::Encaps)
                | (Self::MlDsa(_) | Self::SlhDsa(_), Operation::Sign)
        )
    }

    /// Bits the operation draws from the entropy source.
    pub fn seed_bits(&self, op: Operation) -> Option<usize> {
        if !self.supports(op) {
            return None;
        }
        Some(match (self, op) {
            (Self::MlKem(_), Operation::KeyGen) => 512,
            (Self::MlKem(_), _) => 256,
            (Self::MlDsa(_), _) => 256,
            (Self::SlhDsa(p), Operation::KeyGen) => 3 * p.seed_bits(),
            (Self::SlhDsa(p), _) => p.seed_bits(),
        })
    }
}

impl fmt::Display for PqcAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for PqcAlgorithm {
    type Err = PqcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let bad = || PqcError::UnknownParameterSet(s.to_string());
        let num = |rest: &str| rest.trim_start_matches(['-', '_']).to_string();
        if let Some(rest) = lower
            .strip_prefix("ml-kem")
            .or_else(|| lower.strip_prefix("mlkem"))
        {
            return match num(rest).as_str() {
                "512" => Ok(Self::MlKem(512)),
                "768" => Ok(Self::MlKem(768)),
                "1024" => Ok(Self::MlKem(1024)),
                _ => Err(bad()),
            };
        }
        if let Some(rest) = lower
            .strip_prefix("ml-dsa")
            .or_else(|| lower.strip_prefix("mldsa"))
        {
            return match num(rest).as_str() {
                "44" => Ok(Self::MlDsa(44)),
                "65" => Ok(Self::MlDsa(65)),
                "87" => Ok(Self::MlDsa(87)),
                _ => Err(bad()),
            };
        }
        s.parse::<SlhParamSet>()
            .map(Self::SlhDsa)
            .map_err(|_| bad())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    KeyGen,
    Encaps,
    Sign,
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::KeyGen => "keygen",
            Self::Encaps => "encaps",
            Self::Sign => "sign",
        })
    }
}

impl FromStr for Operation {
    type Err = PqcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "keygen" => Ok(Self::KeyGen),
            "encaps" | "encapsulate" => Ok(Self::Encaps),
            "sign" => Ok(Self::Sign),
            _ => Err(PqcError::InvalidOperation(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DemoOutcome {
    pub algorithm: String,
    pub operation: Operation,
    pub source: String,
    pub bits_consumed: u64,
    pub draws: Vec<DrawRecord>,
    pub elapsed_ns: u64,
    /// Hex of the operation's outputs in return order.
    pub outputs: Vec<String>,
    pub transcript: Transcript,
}

#[derive(Debug, Clone)]
pub struct DemoOptions {
    pub request: SignRequest,
    pub slh_mode: SlhKeygenMode,
    /// Seed of the host PRNG that produces prerequisite keys.
    pub setup_seed: u64,
}

impl Default for DemoOptions {
    fn default() -> Self {
        Self {
            request: SignRequest::new(b"demo message".to_vec()),
            slh_mode: SlhKeygenMode::ThreeCalls,
            setup_seed: 0,
        }
    }
}

/// Runs `op` with every seed taken from `source`. Keys the operation needs
/// are made beforehand from a host PRNG, so only the measured operation
/// touches `source` and appears in the transcript.
pub fn run_demo<S: BitSource>(
    algorithm: PqcAlgorithm,
    op: Operation,
    source: &mut MeteredSource<S>,
    options: &DemoOptions,
) -> Result<DemoOutcome, PqcError> {
    if !algorithm.supports(op) {
        return Err(PqcError::InvalidOperation(format!(
            "{op} is not defined for {algorithm}"
        )));
    }
    let backend = MockBackend::with_label(algorithm.name());
    let mut setup: MeteredSource<SeededRng> = MeteredSource::host(options.setup_seed);
    let served_before = source.bits_served();
    let draws_before = source.draws().len();

    let (elapsed, outputs) = match (algorithm, op) {
        (PqcAlgorithm::MlKem(_), Operation::KeyGen) => {
            let t = Instant::now();
            let kp = flows::mlkem_keygen(source, &backend)?;
            (t.elapsed(), vec![kp.ek, kp.dk])
        }
        (PqcAlgorithm::MlKem(_), _) => {
            let kp = flows::mlkem_keygen(&mut setup, &backend)?;
            backend.clear();
            let t = Instant::now();
            let e = flows::mlkem_encaps(source, &backend, &kp.ek)?;
            (t.elapsed(), vec![e.shared_key, e.ciphertext])
        }
        (PqcAlgorithm::MlDsa(_), Operation::KeyGen) => {
            let t = Instant::now();
            let kp = flows::mldsa_keygen(source, &backend)?;
            (t.elapsed(), vec![kp.pk, kp.sk])
        }
        (PqcAlgorithm::MlDsa(_), _) => {
            let kp = flows::mldsa_keygen(&mut setup, &backend)?;
            backend.clear();
            let t = Instant::now();
            let sig = flows::mldsa_sign(source, &backend, &options.request, &kp.sk)?;
            (t.elapsed(), vec![sig])
        }
        (PqcAlgorithm::SlhDsa(p), Operation::KeyGen) => {
            let t = Instant::now();
            let kp = flows::slh_keygen(source, &backend, p, options.slh_mode)?;
            (t.elapsed(), vec![kp.sk, kp.pk])
        }
        (PqcAlgorithm::SlhDsa(p), _) => {
            let kp = flows::slh_keygen(&mut setup, &backend, p, SlhKeygenMode::ThreeCalls)?;
            backend.clear();
            let t = Instant::now();
            let sig = flows::slh_sign(source, &backend, p, &options.request, &kp.sk)?;
            (t.elapsed(), vec![sig])
        }
    };

    Ok(DemoOutcome {
        algorithm: algorithm.name(),
        operation: op,
        source: source.label().to_string(),
        bits_consumed: source.bits_served() - served_before,
        draws: source.draws()[draws_before..].to_vec(),
        elapsed_ns: u64::try_from(elapsed.as_nanos()).unwrap_or(u64::MAX),
        outputs: outputs.iter().map(hex::encode).collect(),
        transcript: backend.transcript(),
    })
}
