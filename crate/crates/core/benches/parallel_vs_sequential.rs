use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use lgcy_core::continuation::build_u_matrix_with;
use lgcy_core::continuation::{e_const, C_CONST};
use lgcy_core::ifunction::build_fjrw_omegas;
use lgcy_core::mirror::{fjrw_j_coefficients, fjrw_mirror_map};
use lgcy_core::ring::int;
use lgcy_core::{Complex, Execution, TruncatedSeries};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn series_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_mul");
    for order in [256usize, 1024] {
        let a = TruncatedSeries::new("t", order, (0..order as i64).map(|k| int(k % 7 - 3)).collect());
        let b = TruncatedSeries::new("t", order, (0..order as i64).map(|k| int(k % 5 + 1)).collect());
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, order), &order, |bench, _| {
                bench.iter(|| black_box(a.mul_with(&b, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn periods(c: &mut Criterion) {
    let mut group = c.benchmark_group("fjrw_omegas");
    for order in [60usize, 200] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, order), &order, |bench, &order| {
                bench.iter(|| black_box(build_fjrw_omegas(order, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn mirror(c: &mut Criterion) {
    let mut group = c.benchmark_group("mirror");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("revert", name), |bench| {
            bench.iter(|| black_box(fjrw_mirror_map(60, exec).unwrap()))
        });
        group.bench_function(BenchmarkId::new("j_slots", name), |bench| {
            bench.iter(|| black_box(fjrw_j_coefficients(60, exec).unwrap()))
        });
    }
    group.finish();
}

fn u_matrix(c: &mut Criterion) {
    let mut group = c.benchmark_group("u_matrix");
    for (name, exec) in MODES {
        group.bench_function(name, |bench| {
            bench.iter(|| black_box(build_u_matrix_with(Complex::new(C_CONST, 0.0), e_const(), exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, series_mul, periods, mirror, u_matrix);
criterion_main!(benches);
