use proptest::prelude::*;
use qrng_core::pqc::{
    hash_slh_sign, mldsa_keygen, mldsa_sign, mlkem_encaps, mlkem_keygen, slh_keygen,
    slh_keygen_seeds, slh_sign, EntropySource, MeteredSource, MockBackend, PqcError, PreHash,
    SignRequest, SlhKeygenMode, SlhParamSet,
};
use qrng_core::qsim::{apply_gate, build_gate, QubitState};
use qrng_core::source::{ScriptedSource, SeededRng};
use qrng_core::stats::{binary_min_entropy, chi2_survival, collect_restart, run_battery};
use qrng_core::{BitSource, BitString, GateRecipe, Qrng, QrngConfig};

#[test]
fn ones_fraction_over_many_seeds() {
    let mut inside = 0;
    for seed in 0..100u64 {
        let recipe = GateRecipe::ALL[seed as usize % 6];
        let cfg = QrngConfig::new(recipe, 64, seed).unwrap();
        let bits = Qrng::new(cfg).unwrap().generate(100_000);
        let frac = bits.count_ones() as f64 / 1e5;
        if (0.49..=0.51).contains(&frac) {
            inside += 1;
        }
    }
    assert!(inside >= 99, "{inside}/100 seeds inside [0.49, 0.51]");
}

#[test]
fn default_battery_shape() {
    let cfg = QrngConfig::new(GateRecipe::sx(), 16, 8).unwrap();
    let m = collect_restart(|i| Qrng::with_stream(cfg, i as u64).unwrap(), 1000, 1000).unwrap();
    let r = run_battery(&m).unwrap();
    assert_eq!(r.group_count, 2000);
    assert_eq!(r.groups.len(), 2000);
    assert!(r.sanity.global_mcv >= 500);
}

const SLH_ROLES: usize = 3;

fn stream(seed: u64, bits: usize) -> BitString {
    SeededRng::new(seed).next_bits(bits).unwrap()
}

fn scripted(seed: u64, bits: usize) -> MeteredSource<ScriptedSource> {
    MeteredSource::new("scripted", ScriptedSource::new(stream(seed, bits)))
}

fn any_param_set() -> impl Strategy<Value = SlhParamSet> {
    let all: Vec<SlhParamSet> = SlhParamSet::all().collect();
    (0..all.len()).prop_map(move |i| all[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn p_then_h_on_zero_is_plus_state(theta in -100.0f64..100.0) {
        let s = apply_gate(&build_gate(GateRecipe::PThenH { theta }).unwrap(), &QubitState::ZERO);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        prop_assert!((s.alpha.re - r).abs() <= 1e-12 && s.alpha.im.abs() <= 1e-12);
        prop_assert!((s.beta.re - r).abs() <= 1e-12 && s.beta.im.abs() <= 1e-12);
    }

    #[test]
    fn entropy_monotone(n in 2usize..5000, a in 0usize..5000, b in 0usize..5000) {
        let half = n.div_ceil(2);
        let lo = half + a % (n - half + 1);
        let hi = half + b % (n - half + 1);
        prop_assume!(lo < hi);
        prop_assert!(binary_min_entropy(hi, n).unwrap() < binary_min_entropy(lo, n).unwrap());
    }

    #[test]
    fn chi2_survival_monotone(df in 1u32..64, x in 0.0f64..150.0, dx in 0.01f64..10.0) {
        let a = chi2_survival(x, df).unwrap();
        let b = chi2_survival(x + dx, df).unwrap();
        prop_assert!(b <= a);
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn slh_accounting_every_set(p in any_param_set(), seed in any::<u64>()) {
        let backend = MockBackend::new();
        let mut s = MeteredSource::host(seed);
        let kp = slh_keygen(&mut s, &backend, p, SlhKeygenMode::ThreeCalls).unwrap();
        prop_assert_eq!(s.bits_served(), 24 * p.n() as u64);
        let mut s = MeteredSource::host(seed);
        slh_sign(&mut s, &backend, p, &SignRequest::new("m"), &kp.sk).unwrap();
        prop_assert_eq!(s.bits_served(), 8 * p.n() as u64);
    }

    #[test]
    fn split_equals_three_calls(p in any_param_set(), seed in any::<u64>()) {
        let bits = SLH_ROLES * p.seed_bits();
        let three = slh_keygen_seeds(&mut scripted(seed, bits), p, SlhKeygenMode::ThreeCalls).unwrap();
        let one = slh_keygen_seeds(&mut scripted(seed, bits), p, SlhKeygenMode::SingleCallSplit).unwrap();
        prop_assert_eq!(three, one);
    }

    #[test]
    fn slh_keygen_failure_at_any_draw(p in any_param_set(), k in 0usize..SLH_ROLES) {
        let mut src = MeteredSource::new(
            "f",
            ScriptedSource::new(stream(1, SLH_ROLES * p.seed_bits())).fail_on(k),
        );
        let backend = MockBackend::new();
        let err = slh_keygen(&mut src, &backend, p, SlhKeygenMode::ThreeCalls).unwrap_err();
        let is_entropy_error = matches!(err, PqcError::Entropy { .. });
        prop_assert!(is_entropy_error);
        prop_assert_eq!(backend.calls(), 0);
        prop_assert_eq!(src.bits_served(), (k * p.seed_bits()) as u64);
        prop_assert_eq!(src.draws().len(), k + 1);
    }

    #[test]
    fn flows_are_deterministic(seed in any::<u64>(), msg in proptest::collection::vec(any::<u8>(), 0..64),
                               ctx in proptest::collection::vec(any::<u8>(), 0..=255)) {
        let run = || {
            let b = MockBackend::new();
            let mut s = scripted(seed, 4096);
            let kem = mlkem_keygen(&mut s, &b).unwrap();
            let enc = mlkem_encaps(&mut s, &b, &kem.ek).unwrap();
            let dsa = mldsa_keygen(&mut s, &b).unwrap();
            let req = SignRequest::new(msg.clone()).with_context(ctx.clone());
            let sig = mldsa_sign(&mut s, &b, &req, &dsa.sk).unwrap();
            let p = SlhParamSet::SHAKE_128F;
            let slh = slh_keygen(&mut s, &b, p, SlhKeygenMode::SingleCallSplit).unwrap();
            let ph = hash_slh_sign(&mut s, &b, p, &req.clone().with_pre_hash(PreHash::Shake256), &slh.sk).unwrap();
            (kem, enc, dsa, sig, slh, ph, b.transcript(), s.bits_served())
        };
        let a = run();
        prop_assert_eq!(a.7, 512 + 256 + 256 + 256 + 384 + 128);
        prop_assert_eq!(a, run());
    }
}
