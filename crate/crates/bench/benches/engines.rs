use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use num_rational::BigRational;
use parastacks_core::{analysis, equations, machine, walks, Permutation};

fn loop_dp(c: &mut Criterion) {
    let mut g = c.benchmark_group("loop_dp");
    for n in [10, 20, 40] {
        g.bench_with_input(BenchmarkId::new("symbolic", n), &n, |b, &n| {
            b.iter(|| walks::quarter_loop_series(black_box(n)))
        });
    }
    g.bench_function("refined/15", |b| b.iter(|| walks::quarter_loop_series_refined(black_box(15))));
    let a = BigRational::new(BigInt::from(-19), BigInt::from(128));
    g.bench_function("rational_a/100", |b| b.iter(|| walks::quarter_loop_values_at(100, black_box(&a))));
    g.bench_function("float_a/100", |b| b.iter(|| walks::quarter_loop_values_f64(100, black_box(-0.15))));
    g.finish();
}

fn solvers(c: &mut Criterion) {
    let mut g = c.benchmark_group("solvers");
    let q40 = walks::quarter_loop_series(40);
    let q12 = walks::quarter_loop_series(12);
    g.bench_function("sprim_from_q/40", |b| b.iter(|| equations::solve_sprim_via_q(black_box(&q40), 40)));
    g.bench_function("c_from_q/12", |b| b.iter(|| equations::solve_c(black_box(&q12), 12)));
    let c12 = equations::solve_c(&q12, 12).expect("C solves");
    g.bench_function("s_from_c/12", |b| b.iter(|| equations::solve_s_via_c(black_box(&c12), 12)));
    g.bench_function("w00/10", |b| b.iter(|| walks::unconfined_series(black_box(10), 10)));
    g.finish();
}

fn oracles(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracles");
    g.sample_size(10);
    g.bench_function("enumerate_achievable/8", |b| {
        b.iter(|| machine::enumerate_achievable(black_box(8), 8))
    });
    let p: Permutation = "3 1 2 8 5 4 7 6 10 9 12 11".parse().expect("permutation");
    g.bench_function("canonical_sequence/12", |b| b.iter(|| machine::canonical_sequence(black_box(&p))));
    g.finish();
}

fn estimates(c: &mut Criterion) {
    let mut g = c.benchmark_group("estimates");
    g.sample_size(10);
    g.bench_function("tc_bracket/40", |b| b.iter(|| analysis::tc_bracket(black_box(40), 1e-5)));
    g.bench_function("positivity_q/30", |b| {
        b.iter(|| analysis::positivity_check(&analysis::SeriesId::Q, black_box(30)))
    });
    g.finish();
}

criterion_group!(benches, loop_dp, solvers, oracles, estimates);
criterion_main!(benches);
