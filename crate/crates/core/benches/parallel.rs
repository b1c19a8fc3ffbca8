//! Sequential versus rayon execution of the data-parallel kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gol_core::algebra::{check_algebra_with, group_algebra_from_table_with, symmetric_group_table};
use gol_core::brauer_tree::{to_algebra, BrauerTree};
use gol_core::green::{closure_trials, GreenOrderSpec};
use gol_core::par::Exec;
use gol_core::polyfunctor::verify_welldefined;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn closure(c: &mut Criterion) {
    let spec = GreenOrderSpec::lambda0(7, 6).unwrap();
    let mut g = c.benchmark_group("green_closure_2000");
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| closure_trials(&spec, 2000, 1, exec).unwrap())
        });
    }
    g.finish();
}

fn radical_search(c: &mut Criterion) {
    let table = symmetric_group_table(3);
    let mut g = c.benchmark_group("group_radical_s3_f3");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| group_algebra_from_table_with(&table, 3, exec).unwrap())
        });
    }
    g.finish();
}

fn welldefined(c: &mut Criterion) {
    let mut g = c.benchmark_group("welldefined_p5_100");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_welldefined(5, 100, 1, exec).unwrap())
        });
    }
    g.finish();
}

fn algebra_check(c: &mut Criterion) {
    let a = to_algebra(&BrauerTree::stem(8).unwrap()).unwrap();
    let mut g = c.benchmark_group("check_algebra_stem8");
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| check_algebra_with(&a, exec)));
    }
    g.finish();
}

criterion_group!(benches, closure, radical_search, welldefined, algebra_check);
criterion_main!(benches);
