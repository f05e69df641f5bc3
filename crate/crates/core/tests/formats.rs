use proptest::prelude::*;
use qrng_core::bitfile;
use qrng_core::pqc::{mlkem_keygen, MeteredSource, MockBackend, Transcript};
use qrng_core::source::ScriptedSource;
use qrng_core::stats::{collect_restart, validate_restart, ValidationReport};
use qrng_core::{BitString, GateRecipe, Qrng, QrngConfig};
use sha2::{Digest, Sha256};

proptest! {
    #[test]
    fn bitfile_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..300)) {
        let s = BitString::from_bools(bits.iter().copied());
        let header = bitfile::encode_header(s.len() as u64);
        prop_assert_eq!(bitfile::decode(&header, s.as_bytes()).unwrap(), s);
    }
}

#[test]
fn bitfile_on_disk() {
    let dir = std::env::temp_dir().join(format!("qrng-formats-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bits.bin");
    let cfg = QrngConfig::new(GateRecipe::sx(), 3, 77).unwrap();
    let bits = Qrng::new(cfg).unwrap().generate(1234);
    bitfile::write_bits(&path, &bits).unwrap();
    assert_eq!(std::fs::read(&path).unwrap().len(), 155);
    assert_eq!(bitfile::read_bits(&path).unwrap(), bits);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn len_prefixed(h: &mut Sha256, part: &[u8]) {
    h.update((part.len() as u32).to_be_bytes());
    h.update(part);
}

/// Digest scheme of the mock, rebuilt from its documented description.
fn expected_outputs(label: &str, tag: &str, args: &[(&str, &[u8])], outputs: &[&str]) -> String {
    let mut h = Sha256::new();
    len_prefixed(&mut h, label.as_bytes());
    len_prefixed(&mut h, tag.as_bytes());
    for (name, value) in args {
        len_prefixed(&mut h, name.as_bytes());
        len_prefixed(&mut h, value);
    }
    let digest = h.finalize();
    outputs
        .iter()
        .map(|o| {
            let mut h = Sha256::new();
            h.update(o.as_bytes());
            h.update(digest);
            hex::encode(h.finalize())
        })
        .collect()
}

#[test]
fn transcript_matches_documented_digest_scheme() {
    // d = 0x00..0x1f, z = 0x20..0x3f, delivered LSB-first
    let bytes: Vec<u8> = (0u8..64).collect();
    let stream = BitString::from_bytes(&bytes, 512).unwrap();
    let mut src = MeteredSource::new("scripted", ScriptedSource::new(stream));
    let backend = MockBackend::with_label("ML-KEM-768");
    let kp = mlkem_keygen(&mut src, &backend).unwrap();

    let t = backend.transcript();
    let e = &t.entries[0];
    assert_eq!(t.backend, "ML-KEM-768");
    assert_eq!(e.tag, "mlkem_keygen_internal");
    assert_eq!(e.arg("d").unwrap(), &bytes[..32]);
    assert_eq!(e.arg("z").unwrap(), &bytes[32..]);
    let want = expected_outputs(
        "ML-KEM-768",
        "mlkem_keygen_internal",
        &[("d", &bytes[..32]), ("z", &bytes[32..])],
        &["ek", "dk"],
    );
    assert_eq!(e.output, want);
    assert_eq!(hex::encode([kp.ek, kp.dk].concat()), want);

    let json = t.to_json().unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["entries"][0]["args"][0]["name"], "d");
    assert_eq!(v["entries"][0]["args"][0]["hex"], hex::encode(&bytes[..32]));
    assert_eq!(Transcript::from_json(&json).unwrap(), t);
}

#[test]
fn validation_report_round_trip() {
    let cfg = QrngConfig::new(GateRecipe::p_then_h(), 5, 3).unwrap();
    let m = collect_restart(|i| Qrng::with_stream(cfg, i as u64).unwrap(), 60, 80).unwrap();
    let r = validate_restart("ph", &m).unwrap();
    assert_eq!(r.battery.group_count, 140);
    assert_eq!(
        ValidationReport::from_json(&r.to_json().unwrap()).unwrap(),
        r
    );
}
