//! Parameter-set names and pre-hash functions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256, Sha512};
use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::{Shake128, Shake256};

use super::PqcError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SlhHash {
    Sha2,
    Shake,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SlhVariant {
    /// small signatures
    S,
    /// fast signing
    F,
}

/// One of the twelve SLH-DSA parameter sets. Only the seed length `n`
/// matters for seed wiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlhParamSet {
    pub hash: SlhHash,
    pub security_level: u8,
    pub variant: SlhVariant,
}

impl SlhParamSet {
    pub const fn new(hash: SlhHash, security_level: u8, variant: SlhVariant) -> Self {
        Self {
            hash,
            security_level,
            variant,
        }
    }

    pub const SHAKE_128F: Self = Self::new(SlhHash::Shake, 1, SlhVariant::F);
    pub const SHAKE_192F: Self = Self::new(SlhHash::Shake, 3, SlhVariant::F);
    pub const SHAKE_256F: Self = Self::new(SlhHash::Shake, 5, SlhVariant::F);

    pub fn all() -> impl Iterator<Item = SlhParamSet> {
        [SlhHash::Sha2, SlhHash::Shake].into_iter().flat_map(|h| {
            [1u8, 3, 5].into_iter().flat_map(move |l| {
                [SlhVariant::S, SlhVariant::F]
                    .into_iter()
                    .map(move |v| Self::new(h, l, v))
            })
        })
    }

    /// Seed length in bytes.
    pub fn n(&self) -> usize {
        match self.security_level {
            1 => 16,
            3 => 24,
            5 => 32,
            l => unreachable!("invalid security level {l}"),
        }
    }

    pub fn seed_bits(&self) -> usize {
        8 * self.n()
    }

    pub fn name(&self) -> String {
        let bits = match self.security_level {
            1 => 128,
            3 => 192,
            _ => 256,
        };
        let hash = match self.hash {
            SlhHash::Sha2 => "SHA2",
            SlhHash::Shake => "SHAKE",
        };
        let v = match self.variant {
            SlhVariant::S => 's',
            SlhVariant::F => 'f',
        };
        format!("SLH-DSA-{hash}-{bits}{v}")
    }
}

impl fmt::Display for SlhParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for SlhParamSet {
    type Err = PqcError;

    /// Accepts `SLH-DSA-SHAKE-128f`, `slhdsa-shake-128f` or `shake-128f`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let rest = lower
            .strip_prefix("slh-dsa-")
            .or_else(|| lower.strip_prefix("slhdsa-"))
            .unwrap_or(&lower);
        let bad = || PqcError::UnknownParameterSet(s.to_string());
        let (hash, tail) = rest.split_once('-').ok_or_else(bad)?;
        let hash = match hash {
            "sha2" => SlhHash::Sha2,
            "shake" => SlhHash::Shake,
            _ => return Err(bad()),
        };
        let (bits, variant) = tail.split_at(tail.len().saturating_sub(1));
        let variant = match variant {
            "s" => SlhVariant::S,
            "f" => SlhVariant::F,
            _ => return Err(bad()),
        };
        let level = match bits {
            "128" => 1,
            "192" => 3,
            "256" => 5,
            _ => return Err(bad()),
        };
        Ok(Self::new(hash, level, variant))
    }
}

/// Pre-hash functions accepted for pre-hash signing, with their DER OIDs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PreHash {
    Sha256,
    Sha512,
    Shake128,
    Shake256,
}

impl PreHash {
    pub const ALL: [PreHash; 4] = [Self::Sha256, Self::Sha512, Self::Shake128, Self::Shake256];

    /// DER encoding (tag 06, length 09) of the hash OID under
    /// 2.16.840.1.101.3.4.2.
    pub fn oid(&self) -> [u8; 11] {
        let last = match self {
            Self::Sha256 => 0x01,
            Self::Sha512 => 0x03,
            Self::Shake128 => 0x0b,
            Self::Shake256 => 0x0c,
        };
        [
            0x06, 0x09, 0x60, 0x86, 0x48, 0x01, 0x65, 0x03, 0x04, 0x02, last,
        ]
    }

    /// Digest length in bytes; the XOFs are read for 256 and 512 bits.
    pub fn output_len(&self) -> usize {
        match self {
            Self::Sha256 | Self::Shake128 => 32,
            Self::Sha512 | Self::Shake256 => 64,
        }
    }

    pub fn digest(&self, message: &[u8]) -> Vec<u8> {
        match self {
            Self::Sha256 => Sha256::digest(message).to_vec(),
            Self::Sha512 => Sha512::digest(message).to_vec(),
            Self::Shake128 => xof::<Shake128>(message, 32),
            Self::Shake256 => xof::<Shake256>(message, 64),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Sha256 => "SHA-256",
            Self::Sha512 => "SHA-512",
            Self::Shake128 => "SHAKE128",
            Self::Shake256 => "SHAKE256",
        }
    }
}

fn xof<X: Default + Update + ExtendableOutput>(message: &[u8], len: usize) -> Vec<u8> {
    let mut h = X::default();
    h.update(message);
    let mut out = vec![0u8; len];
    h.finalize_xof().read(&mut out);
    out
}

impl fmt::Display for PreHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PreHash {
    type Err = PqcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "sha256" => Ok(Self::Sha256),
            "sha512" => Ok(Self::Sha512),
            "shake128" => Ok(Self::Shake128),
            "shake256" => Ok(Self::Shake256),
            _ => Err(PqcError::UnsupportedPreHash(s.to_string())),
        }
    }
}
