use std::fmt;

use serde::{Deserialize, Serialize};

use super::entropy::EntropySource;
use super::PqcError;
use crate::bits::BitString;

/// Named randomness inputs of the key-generation, encapsulation and
/// signing flows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeedRole {
    /// ML-KEM keygen seed `d`
    D,
    /// ML-KEM implicit-rejection seed `z`
    Z,
    /// ML-KEM encapsulation message `m`
    M,
    /// ML-DSA keygen seed `xi`
    Xi,
    /// ML-DSA signing randomness `rnd`
    Rnd,
    SkSeed,
    SkPrf,
    PkSeed,
    /// SLH-DSA per-signature randomness
    AddRnd,
}

impl SeedRole {
    pub fn name(&self) -> &'static str {
        match self {
            Self::D => "d",
            Self::Z => "z",
            Self::M => "m",
            Self::Xi => "xi",
            Self::Rnd => "rnd",
            Self::SkSeed => "SK.seed",
            Self::SkPrf => "SK.prf",
            Self::PkSeed => "PK.seed",
            Self::AddRnd => "addrnd",
        }
    }

    /// Required length in bits; the SLH-DSA roles take `8n` for the
    /// parameter set's `n`.
    pub fn bits(&self, slh_n: Option<usize>) -> Option<usize> {
        match self {
            Self::D | Self::Z | Self::M | Self::Xi | Self::Rnd => Some(256),
            Self::SkSeed | Self::SkPrf | Self::PkSeed | Self::AddRnd => slh_n.map(|n| 8 * n),
        }
    }
}

impl fmt::Display for SeedRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed {
    pub role: SeedRole,
    pub bits: BitString,
}

impl Seed {
    /// Packed bytes (bit `i` is bit `i % 8` of byte `i / 8`).
    pub fn bytes(&self) -> &[u8] {
        self.bits.as_bytes()
    }
}

/// Seeds drawn for one operation, in draw order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedBundle {
    seeds: Vec<Seed>,
}

impl SeedBundle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a seed after checking its length against the role.
    pub fn push(
        &mut self,
        role: SeedRole,
        bits: BitString,
        slh_n: Option<usize>,
    ) -> Result<(), PqcError> {
        let expected = role
            .bits(slh_n)
            .ok_or(PqcError::MissingParameterSet(role))?;
        if bits.len() != expected {
            return Err(PqcError::SeedLength {
                role,
                expected,
                got: bits.len(),
            });
        }
        self.seeds.push(Seed { role, bits });
        Ok(())
    }

    /// Draws one seed per role, in order, stopping at the first failure.
    pub fn draw<E: EntropySource + ?Sized>(
        source: &mut E,
        roles: &[SeedRole],
        slh_n: Option<usize>,
    ) -> Result<Self, PqcError> {
        let mut bundle = Self::new();
        for &role in roles {
            let bits = role
                .bits(slh_n)
                .ok_or(PqcError::MissingParameterSet(role))?;
            let drawn = source
                .request(bits)
                .map_err(|e| PqcError::Entropy { role, source: e })?;
            bundle.push(role, drawn, slh_n)?;
        }
        Ok(bundle)
    }

    /// One request for all roles together, sliced in order.
    pub fn draw_split<E: EntropySource + ?Sized>(
        source: &mut E,
        roles: &[SeedRole],
        slh_n: Option<usize>,
    ) -> Result<Self, PqcError> {
        let sizes = roles
            .iter()
            .map(|r| r.bits(slh_n).ok_or(PqcError::MissingParameterSet(*r)))
            .collect::<Result<Vec<_>, _>>()?;
        let total: usize = sizes.iter().sum();
        let first = *roles
            .first()
            .ok_or(PqcError::MissingParameterSet(SeedRole::SkSeed))?;
        let block = source.request(total).map_err(|e| PqcError::Entropy {
            role: first,
            source: e,
        })?;
        let mut bundle = Self::new();
        let mut at = 0;
        for (&role, &len) in roles.iter().zip(&sizes) {
            bundle.push(role, block.slice(at..at + len), slh_n)?;
            at += len;
        }
        Ok(bundle)
    }

    pub fn get(&self, role: SeedRole) -> Option<&Seed> {
        self.seeds.iter().find(|s| s.role == role)
    }

    /// Bytes of a role that must be present.
    pub fn bytes(&self, role: SeedRole) -> &[u8] {
        self.get(role)
            .unwrap_or_else(|| panic!("seed {role} missing from bundle"))
            .bytes()
    }

    pub fn seeds(&self) -> &[Seed] {
        &self.seeds
    }

    pub fn roles(&self) -> Vec<SeedRole> {
        self.seeds.iter().map(|s| s.role).collect()
    }

    pub fn total_bits(&self) -> usize {
        self.seeds.iter().map(|s| s.bits.len()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pqc::entropy::MeteredSource;
    use crate::source::ScriptedSource;

    #[test]
    fn push_checks_length() {
        let mut b = SeedBundle::new();
        assert!(b.push(SeedRole::D, BitString::zeros(256), None).is_ok());
        assert!(matches!(
            b.push(SeedRole::Z, BitString::zeros(255), None),
            Err(PqcError::SeedLength {
                expected: 256,
                got: 255,
                ..
            })
        ));
        assert!(matches!(
            b.push(SeedRole::AddRnd, BitString::zeros(128), None),
            Err(PqcError::MissingParameterSet(SeedRole::AddRnd))
        ));
        assert!(b
            .push(SeedRole::AddRnd, BitString::zeros(128), Some(16))
            .is_ok());
    }

    #[test]
    fn split_matches_sequential_draws() {
        let stream: BitString = (0..384).map(|i| (i * 7 + i / 5) % 3 == 0).collect();
        let roles = [SeedRole::SkSeed, SeedRole::SkPrf, SeedRole::PkSeed];
        let mut a = MeteredSource::new("a", ScriptedSource::new(stream.clone()));
        let mut b = MeteredSource::new("b", ScriptedSource::new(stream));
        let three = SeedBundle::draw(&mut a, &roles, Some(16)).unwrap();
        let one = SeedBundle::draw_split(&mut b, &roles, Some(16)).unwrap();
        assert_eq!(three, one);
        assert_eq!(a.draws().len(), 3);
        assert_eq!(b.draws().len(), 1);
        assert_eq!(one.total_bits(), 384);
    }
}
