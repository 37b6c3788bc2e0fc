use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use bpa_core::asymptotics::{convergent_series_r, gross_series_r};
use bpa_core::bijection::sweep::{f_sweep, g_sweep};
use bpa_core::enumerate::enumerate_bpa;
use bpa_core::exact::{r_via_blocks, r_via_recurrence, r_via_stirling_first};
use bpa_core::series::egf_r;

fn exact(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact");
    g.bench_function("recurrence m=10 l=60", |b| b.iter(|| r_via_recurrence(black_box(10), black_box(60))));
    g.bench_function("stirling-first m=10 l=60", |b| b.iter(|| r_via_stirling_first(black_box(10), black_box(60))));
    g.bench_function("blocks m=10 l=60", |b| b.iter(|| r_via_blocks(black_box(10), black_box(60))));
    g.bench_function("egf m=5 order 30", |b| b.iter(|| egf_r(black_box(5), black_box(30))));
    g.finish();
}

fn combinatorial(c: &mut Criterion) {
    let mut g = c.benchmark_group("combinatorial");
    g.sample_size(10);
    g.bench_function("enumerate m=3 l=5", |b| b.iter(|| enumerate_bpa(black_box(3), black_box(5)).count()));
    g.bench_function("f sweep m=3 l=3", |b| b.iter(|| f_sweep(black_box(3), black_box(3))));
    g.bench_function("g sweep m=2 l=3", |b| b.iter(|| g_sweep(black_box(2), black_box(3))));
    g.finish();
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    g.sample_size(10);
    g.bench_function("gross l=30 512 bits", |b| b.iter(|| gross_series_r(black_box(30), 0.25, 512)));
    g.bench_function("convergent l=20 K=50", |b| b.iter(|| convergent_series_r(black_box(20), 50, 256)));
    g.finish();
}

criterion_group!(benches, exact, combinatorial, series);
criterion_main!(benches);
