use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nbtail_bench::{p_grid, SHAPES};
use nbtail_core::chvatal::{a_seq, lemma22_check};
use nbtail_core::nbdist::mean_tail_prob;
use nbtail_core::specfun::{log_gamma, reg_inc_beta};
use nbtail_core::NBParams;
use std::hint::black_box;

fn special_functions(c: &mut Criterion) {
    let xs: Vec<f64> = (1..=64).map(|i| i as f64 * 1.37).collect();
    c.bench_function("log_gamma/64", |b| {
        b.iter(|| {
            xs.iter()
                .map(|&s| log_gamma(black_box(s)).unwrap())
                .sum::<f64>()
        })
    });
    let mut group = c.benchmark_group("reg_inc_beta");
    for &(a, bb) in &[(0.5, 3.0), (5.0, 40.0), (200.0, 1800.0)] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{a}_{bb}")),
            &(a, bb),
            |b, &(a, bb)| b.iter(|| reg_inc_beta(black_box(a / (a + bb)), a, bb).unwrap()),
        );
    }
    group.finish();
}

fn mean_tail(c: &mut Criterion) {
    let ps = p_grid(1000);
    let mut group = c.benchmark_group("mean_tail_prob_grid1000");
    for &r in &SHAPES {
        group.bench_with_input(BenchmarkId::from_parameter(r), &r, |b, &r| {
            b.iter(|| {
                ps.iter()
                    .map(|&p| {
                        mean_tail_prob(NBParams::new(r, p).unwrap())
                            .unwrap()
                            .value()
                    })
                    .fold(f64::INFINITY, f64::min)
            })
        });
    }
    group.finish();
}

fn sequence(c: &mut Criterion) {
    c.bench_function("a_seq/r2.7_n300", |b| {
        b.iter(|| a_seq(black_box(2.7), 300).unwrap())
    });
    let mut group = c.benchmark_group("lemma22_check");
    for &(r, n) in &[(0.5, 0), (3.0, 10), (8.0, 30)] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("r{r}_n{n}")),
            &(r, n),
            |b, &(r, n)| b.iter(|| lemma22_check(r, n, 1e-10).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, special_functions, mean_tail, sequence);
criterion_main!(benches);
