//! Seed wiring for ML-KEM, ML-DSA and SLH-DSA.
//!
//! The flows take every random seed from an [`EntropySource`] and hand it to
//! a deterministic [`PqcBackend`]. A failed draw surfaces as `Err` and no
//! backend call is made.

mod backend;
pub mod demo;
mod entropy;
mod flows;
mod mock;
mod params;
mod seeds;

use thiserror::Error;

use crate::source::SourceError;

pub use backend::{Encapsulation, MlDsaKeyPair, MlKemKeyPair, PqcBackend, SlhKeyPair};
pub use demo::{run_demo, DemoOptions, DemoOutcome, Operation, PqcAlgorithm};
pub use entropy::{DrawRecord, EntropySource, MeteredSource};
pub use flows::{
    hash_slh_sign, mldsa_keygen, mldsa_sign, mlkem_encaps, mlkem_keygen, pre_hash_message,
    pure_message, slh_keygen, slh_keygen_seeds, slh_sign, SignRequest, SlhKeygenMode,
    MAX_CONTEXT_LEN,
};
pub use mock::{MockBackend, Transcript, TranscriptArg, TranscriptEntry};
pub use params::{PreHash, SlhHash, SlhParamSet, SlhVariant};
pub use seeds::{Seed, SeedBundle, SeedRole};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PqcError {
    #[error("entropy source failed while drawing {role}: {source}")]
    Entropy { role: SeedRole, source: SourceError },
    #[error("context is {0} bytes; at most 255 allowed")]
    ContextTooLong(usize),
    #[error("unsupported pre-hash function `{0}`")]
    UnsupportedPreHash(String),
    #[error("unknown parameter set `{0}`")]
    UnknownParameterSet(String),
    #[error("seed {0} needs an SLH-DSA parameter set")]
    MissingParameterSet(SeedRole),
    #[error("seed {role} must be {expected} bits, got {got}")]
    SeedLength {
        role: SeedRole,
        expected: usize,
        got: usize,
    },
    #[error("pre-hash signing requested without a pre-hash function")]
    MissingPreHash,
    #[error("invalid key: {0}")]
    InvalidKey(&'static str),
    #[error("invalid operation: {0}")]
    InvalidOperation(String),
}
