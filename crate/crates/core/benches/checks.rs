use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tq_core::br::{random_seeded, tsystem_points, tsystem_residual, BrFamily};
use tq_core::exactring::ShiftBase;
use tq_core::exec;
use tq_core::qfamily::{random_family, Grading, QFamily};

fn br_family() -> BrFamily {
    random_seeded(&mut ChaCha8Rng::seed_from_u64(7), 2, &ShiftBase::default(), 6).unwrap()
}

fn gl_family(m: usize, n: usize) -> QFamily {
    random_family(&mut ChaCha8Rng::seed_from_u64(3), Grading::new(m, n), ShiftBase::default(), 6, 2).unwrap()
}

fn tsystem(c: &mut Criterion) {
    let f = br_family();
    let points = tsystem_points(2, 3);
    let mut g = c.benchmark_group("tsystem r=2 O=6");
    g.sample_size(10);
    g.bench_function("sequential", |b| {
        b.iter(|| exec::map_seq(&points, |&(a, s)| tsystem_residual(black_box(&f), a, s).is_ok()))
    });
    g.bench_function(if exec::is_parallel() { "rayon" } else { "rayon (disabled)" }, |b| {
        b.iter(|| exec::map(&points, |&(a, s)| tsystem_residual(black_box(&f), a, s).is_ok()))
    });
    g.finish();
}

fn qq(c: &mut Criterion) {
    let mut g = c.benchmark_group("qq closure");
    g.sample_size(10);
    for (m, n) in [(2, 1), (4, 1)] {
        let fam = gl_family(m, n);
        let inst = fam.qq_instances();
        let label = format!("{m}|{n}");
        g.bench_with_input(BenchmarkId::new("sequential", &label), &inst, |b, inst| {
            b.iter(|| exec::map_seq(inst, |&(set, i, j)| fam.qq_residual(set, i, j).is_ok()))
        });
        g.bench_with_input(BenchmarkId::new("rayon", &label), &inst, |b, inst| {
            b.iter(|| exec::map(inst, |&(set, i, j)| fam.qq_residual(set, i, j).is_ok()))
        });
    }
    g.finish();
}

criterion_group!(benches, tsystem, qq);
criterion_main!(benches);
