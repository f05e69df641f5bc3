use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlKemKeyPair {
    pub ek: Vec<u8>,
    pub dk: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Encapsulation {
    pub shared_key: Vec<u8>,
    pub ciphertext: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlDsaKeyPair {
    pub pk: Vec<u8>,
    pub sk: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlhKeyPair {
    pub sk: Vec<u8>,
    pub pk: Vec<u8>,
}

/// The deterministic internal functions of ML-KEM, ML-DSA and SLH-DSA.
///
/// All randomness arrives through the seed arguments, so identical inputs
/// must give identical outputs. A real PQC library can be adapted to this
/// trait; [`MockBackend`](super::MockBackend) is the shipped implementation.
pub trait PqcBackend {
    fn mlkem_keygen_internal(&self, d: &[u8], z: &[u8]) -> MlKemKeyPair;
    fn mlkem_encaps_internal(&self, ek: &[u8], m: &[u8]) -> Encapsulation;
    fn mldsa_keygen_internal(&self, xi: &[u8]) -> MlDsaKeyPair;
    fn mldsa_sign_internal(&self, message: &[u8], sk: &[u8], rnd: &[u8]) -> Vec<u8>;
    fn slh_keygen_internal(&self, sk_seed: &[u8], sk_prf: &[u8], pk_seed: &[u8]) -> SlhKeyPair;
    fn slh_sign_internal(&self, message: &[u8], sk: &[u8], addrnd: &[u8]) -> Vec<u8>;
}

impl<B: PqcBackend + ?Sized> PqcBackend for &B {
    fn mlkem_keygen_internal(&self, d: &[u8], z: &[u8]) -> MlKemKeyPair {
        (**self).mlkem_keygen_internal(d, z)
    }
    fn mlkem_encaps_internal(&self, ek: &[u8], m: &[u8]) -> Encapsulation {
        (**self).mlkem_encaps_internal(ek, m)
    }
    fn mldsa_keygen_internal(&self, xi: &[u8]) -> MlDsaKeyPair {
        (**self).mldsa_keygen_internal(xi)
    }
    fn mldsa_sign_internal(&self, message: &[u8], sk: &[u8], rnd: &[u8]) -> Vec<u8> {
        (**self).mldsa_sign_internal(message, sk, rnd)
    }
    fn slh_keygen_internal(&self, sk_seed: &[u8], sk_prf: &[u8], pk_seed: &[u8]) -> SlhKeyPair {
        (**self).slh_keygen_internal(sk_seed, sk_prf, pk_seed)
    }
    fn slh_sign_internal(&self, message: &[u8], sk: &[u8], addrnd: &[u8]) -> Vec<u8> {
        (**self).slh_sign_internal(message, sk, addrnd)
    }
}
