use criterion::{criterion_group, criterion_main, Criterion};
use qrng_core::pqc::{
    mldsa_keygen, mlkem_keygen, slh_keygen, slh_sign, MeteredSource, MockBackend, SignRequest,
    SlhKeygenMode, SlhParamSet,
};
use qrng_core::{GateRecipe, QrngConfig};

fn qrng_source() -> MeteredSource<qrng_core::Qrng> {
    MeteredSource::qrng(QrngConfig::new(GateRecipe::u(), 8, 0).unwrap()).unwrap()
}

/// Each flow is timed with a QRNG-backed source and with the host PRNG.
fn flows(c: &mut Criterion) {
    let backend = MockBackend::unrecorded("bench");
    let mut group = c.benchmark_group("seed_wiring");

    group.bench_function("mlkem_keygen/qrng", |b| {
        let mut s = qrng_source();
        b.iter(|| mlkem_keygen(&mut s, &backend).unwrap());
    });
    group.bench_function("mlkem_keygen/host", |b| {
        let mut s = MeteredSource::host(0);
        b.iter(|| mlkem_keygen(&mut s, &backend).unwrap());
    });
    group.bench_function("mldsa_keygen/qrng", |b| {
        let mut s = qrng_source();
        b.iter(|| mldsa_keygen(&mut s, &backend).unwrap());
    });
    for p in [SlhParamSet::SHAKE_128F, SlhParamSet::SHAKE_256F] {
        for mode in [SlhKeygenMode::ThreeCalls, SlhKeygenMode::SingleCallSplit] {
            group.bench_function(format!("slh_keygen/{}/{mode:?}", p.name()), |b| {
                let mut s = qrng_source();
                b.iter(|| slh_keygen(&mut s, &backend, p, mode).unwrap());
            });
        }
        let req = SignRequest::new(b"benchmark".to_vec());
        group.bench_function(format!("slh_sign/{}", p.name()), |b| {
            let mut s = qrng_source();
            b.iter(|| slh_sign(&mut s, &backend, p, &req, &[0; 64]).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, flows);
criterion_main!(benches);
