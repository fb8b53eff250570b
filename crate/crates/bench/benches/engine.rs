use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qcluster::charcalc::{verify_abelian_sequences, Window};
use qcluster::coulomb::{build_registry, initial_seed_gl2, verify_relations, Suite};
use qcluster::explore;
use qcluster::pairs::enumerate_box;

fn mutation(c: &mut Criterion) {
    let seed = initial_seed_gl2();
    c.bench_function("gl2 mutate 1,2,3,1,2,3", |b| {
        b.iter(|| black_box(&seed).mutate_sequence(&[0, 1, 2, 0, 1, 2]).unwrap())
    });
}

fn graph(c: &mut Criterion) {
    let seed = initial_seed_gl2();
    let mut g = c.benchmark_group("explore");
    g.sample_size(10);
    for d in [3, 5] {
        g.bench_function(format!("gl2 depth {d}"), |b| b.iter(|| explore(black_box(&seed), d).unwrap()));
    }
    g.finish();
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("registry");
    g.sample_size(10);
    g.bench_function("build depth 5 window 3", |b| b.iter(|| build_registry(5, 3).unwrap()));
    let reg = build_registry(5, 3).unwrap();
    g.bench_function("all suites l in [-2,2]", |b| {
        b.iter(|| {
            for s in Suite::GL2 {
                verify_relations(&reg, s, 2).unwrap();
            }
        })
    });
    g.finish();
}

fn characters(c: &mut Criterion) {
    let mut g = c.benchmark_group("charcalc");
    g.sample_size(10);
    g.bench_function("abelian window 20", |b| {
        b.iter(|| verify_abelian_sequences(Window::symmetric(20).unwrap()).unwrap())
    });
    g.finish();
}

fn pairs(c: &mut Criterion) {
    c.bench_function("enumerate_box n=3 [-3,3]", |b| b.iter(|| enumerate_box(3, -3, 3).unwrap()));
}

criterion_group!(benches, mutation, graph, suites, characters, pairs);
criterion_main!(benches);
