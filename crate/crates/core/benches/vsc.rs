//! Single-threaded versus default-width evaluation of a genus-one potential.
//! Build with `--no-default-features` to time the sequential fallback.

use criterion::{criterion_group, criterion_main, Criterion};
use evsc_core::{par, Session, SpaceSpec};

fn f1b(space: &SpaceSpec, order: usize) {
    // fresh session so nothing is memoised between iterations
    let s = Session::new(space.clone());
    std::hint::black_box(s.f1b_series(order).expect("evaluates"));
}

fn threads(c: &mut Criterion) {
    let space = SpaceSpec::parse("1,1,1,1,2|2").unwrap();
    let mut g = c.benchmark_group(format!("f1b {space} q^3"));
    g.sample_size(10);
    g.bench_function("1 thread", |b| {
        b.iter(|| par::with_threads(1, || f1b(&space, 3)))
    });
    g.bench_function("default pool", |b| {
        b.iter(|| par::with_threads(0, || f1b(&space, 3)))
    });
    g.finish();
}

fn genus_zero(c: &mut Criterion) {
    let space = SpaceSpec::parse("1,1,1,1,1|2,2").unwrap();
    let mut g = c.benchmark_group(format!("mirror maps {space} q^4"));
    g.sample_size(10);
    for (name, n) in [("1 thread", 1), ("default pool", 0)] {
        g.bench_function(name, |b| {
            b.iter(|| {
                par::with_threads(n, || {
                    std::hint::black_box(Session::new(space.clone()).mirror_maps(4).unwrap())
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, threads, genus_zero);
criterion_main!(benches);
