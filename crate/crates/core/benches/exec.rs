use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hullforge::families::{construct, Family, FamilyRequest};
use hullforge::grs::{mds_check_minors, min_distance_bruteforce};
use hullforge::tables::{run_table, table};
use hullforge::{Exec, FieldCtx};

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn shadow_code() -> hullforge::grs::LinearCode {
    let ctx = Arc::new(FieldCtx::new(3, 4, None).unwrap());
    let req = FamilyRequest::new(Family::T4n1, 3, 4, 1, 3, 1).with_cosets(8, 2);
    construct(&ctx, &req).unwrap().code
}

fn bench_minors(c: &mut Criterion) {
    let code = shadow_code();
    let mut group = c.benchmark_group("mds_check_minors");
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| mds_check_minors(&code, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_distance(c: &mut Criterion) {
    let code = shadow_code();
    let mut group = c.benchmark_group("min_distance_bruteforce");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| min_distance_bruteforce(&code, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_table");
    group.sample_size(10);
    for index in [1, 4] {
        let spec = table(index).unwrap();
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, index), &exec, |b, &exec| {
                b.iter(|| run_table(&spec, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_minors, bench_distance, bench_tables);
criterion_main!(benches);
