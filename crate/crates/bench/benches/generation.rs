use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qrng_core::{generate_bits, GateRecipe, QrngConfig};

fn by_width(c: &mut Criterion) {
    for recipe in GateRecipe::ALL {
        let mut group = c.benchmark_group(format!("generate_256/{}", recipe.short_name()));
        for width in [1usize, 2, 4, 8] {
            let cfg = QrngConfig::new(recipe, width, 0).unwrap();
            group.bench_with_input(BenchmarkId::from_parameter(width), &cfg, |b, cfg| {
                b.iter(|| generate_bits(black_box(cfg), 256).unwrap())
            });
        }
        group.finish();
    }
}

fn long_run(c: &mut Criterion) {
    let cfg = QrngConfig::new(GateRecipe::h(), 64, 0).unwrap();
    c.bench_function("generate_1e5/h/c=64", |b| {
        b.iter(|| generate_bits(black_box(&cfg), 100_000).unwrap())
    });
}

criterion_group!(benches, by_width, long_run);
criterion_main!(benches);
