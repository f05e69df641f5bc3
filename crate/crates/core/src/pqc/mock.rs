//! Digest-transcript stand-in for the PQC internal functions.
//!
//! Each call hashes its tag and arguments with SHA-256 and derives every
//! output from that digest. The call is also appended to a transcript that
//! can be dumped as JSON for golden-file comparison.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::backend::{Encapsulation, MlDsaKeyPair, MlKemKeyPair, PqcBackend, SlhKeyPair};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptArg {
    pub name: String,
    pub hex: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub tag: String,
    pub args: Vec<TranscriptArg>,
    /// Hex of the concatenated outputs, in return order.
    pub output: String,
}

impl TranscriptEntry {
    pub fn arg(&self, name: &str) -> Option<Vec<u8>> {
        self.args
            .iter()
            .find(|a| a.name == name)
            .map(|a| hex::decode(&a.hex).expect("transcript hex"))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub backend: String,
    pub entries: Vec<TranscriptEntry>,
}

impl Transcript {
    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

#[derive(Debug, Default)]
pub struct MockBackend {
    label: String,
    record: bool,
    calls: AtomicUsize,
    log: Mutex<Vec<TranscriptEntry>>,
}

impl MockBackend {
    pub fn new() -> Self {
        Self::with_label("mock")
    }

    /// The label is mixed into every digest, so e.g. `ML-KEM-512` and
    /// `ML-KEM-1024` mocks give different outputs for the same seeds.
    pub fn with_label(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            record: true,
            calls: AtomicUsize::new(0),
            log: Mutex::new(Vec::new()),
        }
    }

    /// Same outputs, but calls are not logged. For long benchmark loops.
    pub fn unrecorded(label: impl Into<String>) -> Self {
        Self {
            record: false,
            ..Self::with_label(label)
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Backend calls since construction or the last [`clear`](Self::clear).
    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn transcript(&self) -> Transcript {
        Transcript {
            backend: self.label.clone(),
            entries: self.log.lock().expect("transcript lock").clone(),
        }
    }

    pub fn clear(&self) {
        self.calls.store(0, Ordering::Relaxed);
        self.log.lock().expect("transcript lock").clear();
    }

    fn call(&self, tag: &str, args: &[(&str, &[u8])], outputs: &[&str]) -> Vec<Vec<u8>> {
        let mut h = Sha256::new();
        for part in [self.label.as_bytes(), tag.as_bytes()] {
            h.update((part.len() as u32).to_be_bytes());
            h.update(part);
        }
        for (name, value) in args {
            h.update((name.len() as u32).to_be_bytes());
            h.update(name.as_bytes());
            h.update((value.len() as u32).to_be_bytes());
            h.update(value);
        }
        let digest = h.finalize();
        let outs: Vec<Vec<u8>> = outputs
            .iter()
            .map(|o| {
                let mut h = Sha256::new();
                h.update(o.as_bytes());
                h.update(digest);
                h.finalize().to_vec()
            })
            .collect();
        self.calls.fetch_add(1, Ordering::Relaxed);
        if !self.record {
            return outs;
        }
        self.log
            .lock()
            .expect("transcript lock")
            .push(TranscriptEntry {
                tag: tag.to_string(),
                args: args
                    .iter()
                    .map(|(n, v)| TranscriptArg {
                        name: n.to_string(),
                        hex: hex::encode(v),
                    })
                    .collect(),
                output: hex::encode(outs.concat()),
            });
        outs
    }
}

impl PqcBackend for MockBackend {
    fn mlkem_keygen_internal(&self, d: &[u8], z: &[u8]) -> MlKemKeyPair {
        let mut o = self
            .call(
                "mlkem_keygen_internal",
                &[("d", d), ("z", z)],
                &["ek", "dk"],
            )
            .into_iter();
        MlKemKeyPair {
            ek: o.next().unwrap(),
            dk: o.next().unwrap(),
        }
    }

    fn mlkem_encaps_internal(&self, ek: &[u8], m: &[u8]) -> Encapsulation {
        let mut o = self
            .call(
                "mlkem_encaps_internal",
                &[("ek", ek), ("m", m)],
                &["K", "c"],
            )
            .into_iter();
        Encapsulation {
            shared_key: o.next().unwrap(),
            ciphertext: o.next().unwrap(),
        }
    }

    fn mldsa_keygen_internal(&self, xi: &[u8]) -> MlDsaKeyPair {
        let mut o = self
            .call("mldsa_keygen_internal", &[("xi", xi)], &["pk", "sk"])
            .into_iter();
        MlDsaKeyPair {
            pk: o.next().unwrap(),
            sk: o.next().unwrap(),
        }
    }

    fn mldsa_sign_internal(&self, message: &[u8], sk: &[u8], rnd: &[u8]) -> Vec<u8> {
        self.call(
            "mldsa_sign_internal",
            &[("M'", message), ("sk", sk), ("rnd", rnd)],
            &["sigma"],
        )
        .remove(0)
    }

    fn slh_keygen_internal(&self, sk_seed: &[u8], sk_prf: &[u8], pk_seed: &[u8]) -> SlhKeyPair {
        let mut o = self
            .call(
                "slh_keygen_internal",
                &[
                    ("SK.seed", sk_seed),
                    ("SK.prf", sk_prf),
                    ("PK.seed", pk_seed),
                ],
                &["SK", "PK"],
            )
            .into_iter();
        SlhKeyPair {
            sk: o.next().unwrap(),
            pk: o.next().unwrap(),
        }
    }

    fn slh_sign_internal(&self, message: &[u8], sk: &[u8], addrnd: &[u8]) -> Vec<u8> {
        self.call(
            "slh_sign_internal",
            &[("M'", message), ("SK", sk), ("addrnd", addrnd)],
            &["SIG"],
        )
        .remove(0)
    }
}
