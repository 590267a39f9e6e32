use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclokappa_core::kappa::{kappa_with, KappaOptions};
use cyclokappa_core::par::Exec;

fn blocks(c: &mut Criterion) {
    let mut g = c.benchmark_group("kappa_blocks");
    g.sample_size(10);
    for n in [91u64, 121] {
        for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            let opts = KappaOptions { exec, ..Default::default() };
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| kappa_with(black_box(n), &opts).unwrap().kappa)
            });
        }
    }
    g.finish();
}

criterion_group!(benches, blocks);
criterion_main!(benches);
