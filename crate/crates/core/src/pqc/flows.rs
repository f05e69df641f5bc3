//! Key generation, encapsulation and signing with every random input
//! drawn from an [`EntropySource`].
//!
//! Each flow checks its inputs, draws its seeds in a fixed order, and only
//! then calls the backend. A failed draw aborts the flow before any backend
//! call and before any later draw.

use serde::{Deserialize, Serialize};

use super::backend::{Encapsulation, MlDsaKeyPair, MlKemKeyPair, PqcBackend, SlhKeyPair};
use super::entropy::EntropySource;
use super::params::{PreHash, SlhParamSet};
use super::seeds::{SeedBundle, SeedRole};
use super::PqcError;

pub const MAX_CONTEXT_LEN: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignRequest {
    pub message: Vec<u8>,
    pub context: Vec<u8>,
    pub pre_hash: Option<PreHash>,
}

impl SignRequest {
    pub fn new(message: impl Into<Vec<u8>>) -> Self {
        Self {
            message: message.into(),
            context: Vec::new(),
            pre_hash: None,
        }
    }

    pub fn with_context(mut self, context: impl Into<Vec<u8>>) -> Self {
        self.context = context.into();
        self
    }

    pub fn with_pre_hash(mut self, ph: PreHash) -> Self {
        self.pre_hash = Some(ph);
        self
    }

    fn check_context(&self) -> Result<(), PqcError> {
        if self.context.len() > MAX_CONTEXT_LEN {
            return Err(PqcError::ContextTooLong(self.context.len()));
        }
        Ok(())
    }
}

/// `0x00 || len(ctx) || ctx || M`.
pub fn pure_message(context: &[u8], message: &[u8]) -> Result<Vec<u8>, PqcError> {
    let len = u8::try_from(context.len()).map_err(|_| PqcError::ContextTooLong(context.len()))?;
    let mut out = Vec::with_capacity(2 + context.len() + message.len());
    out.extend_from_slice(&[0, len]);
    out.extend_from_slice(context);
    out.extend_from_slice(message);
    Ok(out)
}

/// `0x01 || len(ctx) || ctx || OID(PH) || PH(M)`.
pub fn pre_hash_message(context: &[u8], ph: PreHash, message: &[u8]) -> Result<Vec<u8>, PqcError> {
    let len = u8::try_from(context.len()).map_err(|_| PqcError::ContextTooLong(context.len()))?;
    let digest = ph.digest(message);
    let oid = ph.oid();
    let mut out = Vec::with_capacity(2 + context.len() + oid.len() + digest.len());
    out.extend_from_slice(&[1, len]);
    out.extend_from_slice(context);
    out.extend_from_slice(&oid);
    out.extend_from_slice(&digest);
    Ok(out)
}

fn frame(request: &SignRequest) -> Result<Vec<u8>, PqcError> {
    match request.pre_hash {
        None => pure_message(&request.context, &request.message),
        Some(ph) => pre_hash_message(&request.context, ph, &request.message),
    }
}

/// ML-KEM key generation: `d` then `z`, 256 bits each.
pub fn mlkem_keygen<E, B>(source: &mut E, backend: &B) -> Result<MlKemKeyPair, PqcError>
where
    E: EntropySource + ?Sized,
    B: PqcBackend + ?Sized,
{
    let seeds = SeedBundle::draw(source, &[SeedRole::D, SeedRole::Z], None)?;
    Ok(backend.mlkem_keygen_internal(seeds.bytes(SeedRole::D), seeds.bytes(SeedRole::Z)))
}

/// ML-KEM encapsulation: one 256-bit `m`.
pub fn mlkem_encaps<E, B>(source: &mut E, backend: &B, ek: &[u8]) -> Result<Encapsulation, PqcError>
where
    E: EntropySource + ?Sized,
    B: PqcBackend + ?Sized,
{
    if ek.is_empty() {
        return Err(PqcError::InvalidKey("empty encapsulation key"));
    }
    let seeds = SeedBundle::draw(source, &[SeedRole::M], None)?;
    Ok(backend.mlkem_encaps_internal(ek, seeds.bytes(SeedRole::M)))
}

/// ML-DSA key generation: one 256-bit `xi`.
pub fn mldsa_keygen<E, B>(source: &mut E, backend: &B) -> Result<MlDsaKeyPair, PqcError>
where
    E: EntropySource + ?Sized,
    B: PqcBackend + ?Sized,
{
    let seeds = SeedBundle::draw(source, &[SeedRole::Xi], None)?;
    Ok(backend.mldsa_keygen_internal(seeds.bytes(SeedRole::Xi)))
}

/// ML-DSA hedged signing: context check, then one 256-bit `rnd`.
pub fn mldsa_sign<E, B>(
    source: &mut E,
    backend: &B,
    request: &SignRequest,
    sk: &[u8],
) -> Result<Vec<u8>, PqcError>
where
    E: EntropySource + ?Sized,
    B: PqcBackend + ?Sized,
{
    request.check_context()?;
    let seeds = SeedBundle::draw(source, &[SeedRole::Rnd], None)?;
    let framed = frame(request)?;
    Ok(backend.mldsa_sign_internal(&framed, sk, seeds.bytes(SeedRole::Rnd)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlhKeygenMode {
    /// Three `8n`-bit requests.
    ThreeCalls,
    /// One `24n`-bit request sliced into thirds.
    SingleCallSplit,
}

const SLH_KEY_ROLES: [SeedRole; 3] = [SeedRole::SkSeed, SeedRole::SkPrf, SeedRole::PkSeed];

/// Draws `(SK.seed, SK.prf, PK.seed)` for `params`.
pub fn slh_keygen_seeds<E>(
    source: &mut E,
    params: SlhParamSet,
    mode: SlhKeygenMode,
) -> Result<SeedBundle, PqcError>
where
    E: EntropySource + ?Sized,
{
    let n = Some(params.n());
    match mode {
        SlhKeygenMode::ThreeCalls => SeedBundle::draw(source, &SLH_KEY_ROLES, n),
        SlhKeygenMode::SingleCallSplit => SeedBundle::draw_split(source, &SLH_KEY_ROLES, n),
    }
}

pub fn slh_keygen<E, B>(
    source: &mut E,
    backend: &B,
    params: SlhParamSet,
    mode: SlhKeygenMode,
) -> Result<SlhKeyPair, PqcError>
where
    E: EntropySource + ?Sized,
    B: PqcBackend + ?Sized,
{
    let seeds = slh_keygen_seeds(source, params, mode)?;
    Ok(backend.slh_keygen_internal(
        seeds.bytes(SeedRole::SkSeed),
        seeds.bytes(SeedRole::SkPrf),
        seeds.bytes(SeedRole::PkSeed),
    ))
}

/// SLH-DSA signing with `8n` bits of `addrnd`. A request carrying a
/// pre-hash function is routed to [`hash_slh_sign`].
pub fn slh_sign<E, B>(
    source: &mut E,
    backend: &B,
    params: SlhParamSet,
    request: &SignRequest,
    sk: &[u8],
) -> Result<Vec<u8>, PqcError>
where
    E: EntropySource + ?Sized,
    B: PqcBackend + ?Sized,
{
    if request.pre_hash.is_some() {
        return hash_slh_sign(source, backend, params, request, sk);
    }
    request.check_context()?;
    let seeds = SeedBundle::draw(source, &[SeedRole::AddRnd], Some(params.n()))?;
    let framed = pure_message(&request.context, &request.message)?;
    Ok(backend.slh_sign_internal(&framed, sk, seeds.bytes(SeedRole::AddRnd)))
}

/// Pre-hash SLH-DSA signing: the message is replaced by
/// `OID(PH) || PH(M)` under domain byte 1.
pub fn hash_slh_sign<E, B>(
    source: &mut E,
    backend: &B,
    params: SlhParamSet,
    request: &SignRequest,
    sk: &[u8],
) -> Result<Vec<u8>, PqcError>
where
    E: EntropySource + ?Sized,
    B: PqcBackend + ?Sized,
{
    let ph = request.pre_hash.ok_or(PqcError::MissingPreHash)?;
    request.check_context()?;
    let seeds = SeedBundle::draw(source, &[SeedRole::AddRnd], Some(params.n()))?;
    let framed = pre_hash_message(&request.context, ph, &request.message)?;
    Ok(backend.slh_sign_internal(&framed, sk, seeds.bytes(SeedRole::AddRnd)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitString;
    use crate::pqc::entropy::MeteredSource;
    use crate::pqc::mock::MockBackend;
    use crate::source::{ScriptedSource, SeededRng};

    fn host() -> MeteredSource<SeededRng> {
        MeteredSource::host(99)
    }

    fn pattern(bits: usize) -> BitString {
        (0..bits).map(|i| (i * 31 + 7) % 5 < 2).collect()
    }

    fn scripted(bits: usize) -> MeteredSource<ScriptedSource> {
        MeteredSource::new("scripted", ScriptedSource::new(pattern(bits)))
    }

    #[test]
    fn mlkem_keygen_draws_d_then_z() {
        let mut src = scripted(512);
        let backend = MockBackend::new();
        mlkem_keygen(&mut src, &backend).unwrap();
        assert_eq!(src.bits_served(), 512);
        let all = pattern(512);
        let e = &backend.transcript().entries[0];
        assert_eq!(e.tag, "mlkem_keygen_internal");
        assert_eq!(e.arg("d").unwrap(), all.slice(0..256).as_bytes());
        assert_eq!(e.arg("z").unwrap(), all.slice(256..512).as_bytes());
    }

    #[test]
    fn first_draw_failure_short_circuits() {
        let mut src =
            MeteredSource::new("f", ScriptedSource::new(BitString::zeros(1024)).fail_on(0));
        let backend = MockBackend::new();
        let err = mlkem_keygen(&mut src, &backend).unwrap_err();
        assert!(matches!(
            err,
            PqcError::Entropy {
                role: SeedRole::D,
                ..
            }
        ));
        assert_eq!(src.bits_served(), 0);
        assert_eq!(src.draws().len(), 1);
        assert_eq!(backend.calls(), 0);
    }

    #[test]
    fn replayed_stream_gives_same_keys() {
        let b = MockBackend::new();
        let k1 = mlkem_keygen(&mut scripted(512), &b).unwrap();
        let k2 = mlkem_keygen(&mut scripted(512), &b).unwrap();
        assert_eq!(k1, k2);
    }

    #[test]
    fn encaps_consumes_256() {
        let b = MockBackend::new();
        let kp = mlkem_keygen(&mut host(), &b).unwrap();
        let mut src = host();
        let e1 = mlkem_encaps(&mut src, &b, &kp.ek).unwrap();
        assert_eq!(src.bits_served(), 256);
        let e2 = mlkem_encaps(&mut host(), &b, &kp.ek).unwrap();
        assert_eq!(e1, e2);
        assert!(matches!(
            mlkem_encaps(&mut host(), &b, &[]),
            Err(PqcError::InvalidKey(_))
        ));
    }

    #[test]
    fn mldsa_sizes_and_context() {
        let b = MockBackend::new();
        let mut src = host();
        let kp = mldsa_keygen(&mut src, &b).unwrap();
        assert_eq!(src.bits_served(), 256);
        mldsa_sign(&mut src, &b, &SignRequest::new("hi"), &kp.sk).unwrap();
        assert_eq!(src.bits_served(), 512);

        let long = SignRequest::new("hi").with_context(vec![0u8; 256]);
        let mut src = host();
        assert_eq!(
            mldsa_sign(&mut src, &b, &long, &kp.sk),
            Err(PqcError::ContextTooLong(256))
        );
        assert_eq!(src.draws().len(), 0);
    }

    #[test]
    fn slh_sign_frames_message() {
        let b = MockBackend::new();
        let mut src = host();
        slh_sign(
            &mut src,
            &b,
            SlhParamSet::SHAKE_128F,
            &SignRequest::new("abc"),
            &[0; 64],
        )
        .unwrap();
        assert_eq!(src.bits_served(), 128);
        let e = &b.transcript().entries[0];
        assert_eq!(e.arg("M'").unwrap(), b"\x00\x00abc");
        assert_eq!(e.arg("addrnd").unwrap().len(), 16);

        b.clear();
        slh_sign(
            &mut host(),
            &b,
            SlhParamSet::SHAKE_128F,
            &SignRequest::new(""),
            &[0; 64],
        )
        .unwrap();
        assert_eq!(b.transcript().entries[0].arg("M'").unwrap(), vec![0, 0]);

        b.clear();
        let req = SignRequest::new("m").with_context(b"ctx".to_vec());
        slh_sign(&mut host(), &b, SlhParamSet::SHAKE_128F, &req, &[0; 64]).unwrap();
        assert_eq!(
            b.transcript().entries[0].arg("M'").unwrap(),
            b"\x00\x03ctxm"
        );
    }

    #[test]
    fn slh_sign_context_limit() {
        let b = MockBackend::new();
        let ok = SignRequest::new("m").with_context(vec![7u8; 255]);
        assert!(slh_sign(&mut host(), &b, SlhParamSet::SHAKE_256F, &ok, &[0; 128]).is_ok());
        let bad = SignRequest::new("m").with_context(vec![7u8; 256]);
        let mut src = host();
        assert_eq!(
            slh_sign(&mut src, &b, SlhParamSet::SHAKE_256F, &bad, &[0; 128]),
            Err(PqcError::ContextTooLong(256))
        );
        assert_eq!(src.bits_served(), 0);
        assert_eq!(b.calls(), 1);
    }

    #[test]
    fn hash_slh_sign_frames_with_oid_and_digest() {
        let b = MockBackend::new();
        let req = SignRequest::new("abc").with_pre_hash(PreHash::Sha256);
        let mut src = host();
        hash_slh_sign(&mut src, &b, SlhParamSet::SHAKE_192F, &req, &[0; 96]).unwrap();
        assert_eq!(src.bits_served(), 192);
        let framed = b.transcript().entries[0].arg("M'").unwrap();
        assert_eq!(framed[0], 1);
        assert_eq!(framed[1], 0);
        assert_eq!(hex::encode(&framed[2..13]), "0609608648016503040201");
        assert_eq!(
            hex::encode(&framed[13..]),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );

        // slh_sign routes pre-hash requests here
        b.clear();
        slh_sign(&mut host(), &b, SlhParamSet::SHAKE_192F, &req, &[0; 96]).unwrap();
        assert_eq!(b.transcript().entries[0].arg("M'").unwrap(), framed);

        assert_eq!(
            hash_slh_sign(
                &mut host(),
                &b,
                SlhParamSet::SHAKE_192F,
                &SignRequest::new("abc"),
                &[0; 96]
            ),
            Err(PqcError::MissingPreHash)
        );
    }

    #[test]
    fn hash_slh_sign_rejects_context_before_hashing_or_drawing() {
        let b = MockBackend::new();
        let req = SignRequest::new("abc")
            .with_pre_hash(PreHash::Shake256)
            .with_context(vec![0; 300]);
        let mut src = host();
        assert_eq!(
            hash_slh_sign(&mut src, &b, SlhParamSet::SHAKE_128F, &req, &[0; 64]),
            Err(PqcError::ContextTooLong(300))
        );
        assert!(src.draws().is_empty());
    }

    #[test]
    fn slh_keygen_modes() {
        let b = MockBackend::new();
        let mut three = scripted(768);
        let mut one = scripted(768);
        let k3 = slh_keygen(
            &mut three,
            &b,
            SlhParamSet::SHAKE_256F,
            SlhKeygenMode::ThreeCalls,
        )
        .unwrap();
        let k1 = slh_keygen(
            &mut one,
            &b,
            SlhParamSet::SHAKE_256F,
            SlhKeygenMode::SingleCallSplit,
        )
        .unwrap();
        assert_eq!(k3, k1);
        assert_eq!(three.bits_served(), 768);
        assert_eq!(one.bits_served(), 768);
        assert_eq!(
            three
                .draws()
                .iter()
                .map(|d| d.requested)
                .collect::<Vec<_>>(),
            [256, 256, 256]
        );
        assert_eq!(
            one.draws().iter().map(|d| d.requested).collect::<Vec<_>>(),
            [768]
        );
    }

    #[test]
    fn framing_helpers() {
        assert_eq!(pure_message(b"", b"").unwrap(), [0, 0]);
        assert!(pure_message(&[0; 256], b"").is_err());
        let f = pre_hash_message(b"c", PreHash::Sha512, b"").unwrap();
        assert_eq!(f.len(), 2 + 1 + 11 + 64);
    }
}
