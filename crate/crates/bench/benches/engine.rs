use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nerode_core::linear::ho_kalman;
use nerode_core::nerode::{machine_equivalence, minimize, Mode};
use nerode_core::system::System;
use nerode_core::testkit;

fn bench_minimize(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimize");
    for states in [16usize, 64, 256] {
        let mut r = testkit::rng(1);
        let m = testkit::random_machine(&mut r, states, 3, 2);
        let sys = System::Mealy(m);
        group.bench_with_input(BenchmarkId::from_parameter(states), &sys, |b, sys| {
            b.iter(|| minimize(sys, Mode::Controllable).unwrap())
        });
    }
    group.finish();
}

fn bench_equivalence(c: &mut Criterion) {
    let mut group = c.benchmark_group("machine_equivalence");
    for states in [16usize, 64, 256] {
        let mut r = testkit::rng(2);
        let m1 = testkit::random_machine(&mut r, states, 2, 2);
        let m2 = minimize(&System::Mealy(m1.clone()), Mode::RestReachable)
            .unwrap()
            .machine()
            .clone();
        group.bench_with_input(BenchmarkId::from_parameter(states), &(m1, m2), |b, (m1, m2)| {
            b.iter(|| machine_equivalence(m1, m2).unwrap())
        });
    }
    group.finish();
}

fn bench_ho_kalman(c: &mut Criterion) {
    let mut group = c.benchmark_group("ho_kalman");
    for n in [2usize, 4, 6] {
        let mut r = testkit::rng(3);
        let sys = testkit::random_rational_system(&mut r, n);
        let markov = sys.markov_parameters(2 * n + 6);
        group.bench_with_input(BenchmarkId::from_parameter(n), &markov, |b, markov| {
            b.iter(|| ho_kalman(markov, n + 1, n + 1, 1, 1).unwrap())
        });
    }
    group.finish();
}

fn bench_window_to_mealy(c: &mut Criterion) {
    let mut r = testkit::rng(4);
    let w = testkit::random_window_system(&mut r, 3, 5, 2);
    c.bench_function("window_to_mealy_3^5", |b| b.iter(|| w.to_mealy().unwrap()));
}

criterion_group!(benches, bench_minimize, bench_equivalence, bench_ho_kalman, bench_window_to_mealy);
criterion_main!(benches);
