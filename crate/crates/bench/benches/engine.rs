use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sitekit_bench::universe;
use sitekit_core::fraisse::{back_and_forth, build_limit, Graphs, LinearOrders, DEFAULT_NODE_LIMIT};
use sitekit_core::*;

const CATEGORIES: [&str; 4] = ["arrow", "span", "lin4", "square"];

fn topologies(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_topologies");
    for name in CATEGORIES {
        let u = universe(name);
        g.bench_with_input(BenchmarkId::new("closure", name), &u, |b, u| {
            b.iter(|| enumerate_topologies(u, &Budget::default()).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("axiom_filter", name), &u, |b, u| {
            b.iter(|| enumerate_topologies_by_axioms(u, &Budget::default()).unwrap())
        });
    }
    g.finish();

    let u = universe("square");
    let seeds: Vec<Sieve> = (0..u.len()).step_by(5).map(|i| u.sieve(i)).collect();
    c.bench_function("generate_topology/square", |b| {
        b.iter(|| generate_topology(&u, black_box(&seeds)).unwrap())
    });
}

fn sheaves(c: &mut Criterion) {
    let u = universe("lin3");
    let dense = canonical_topology(&u, TopologyKind::Dense).unwrap();
    c.bench_function("site_invariants/lin3_dense", |b| b.iter(|| site_invariants(&dense).unwrap()));
    let trivial = canonical_topology(&universe("z2"), TopologyKind::Trivial).unwrap();
    c.bench_function("enumerate_models/z2_card2", |b| {
        b.iter(|| enumerate_models(&trivial, 2, &Budget::default()).unwrap())
    });
}

fn fraisse(c: &mut Criterion) {
    let budget = Budget::default();
    let mut g = c.benchmark_group("build_limit");
    g.sample_size(10);
    g.bench_function("linord_100", |b| b.iter(|| build_limit(&LinearOrders, 100, 1, &budget).unwrap()));
    g.bench_function("graph_120", |b| b.iter(|| build_limit(&Graphs::default(), 120, 1, &budget).unwrap()));
    g.finish();

    let l1 = build_limit(&LinearOrders, 100, 1, &budget).unwrap();
    let l2 = build_limit(&LinearOrders, 100, 2, &budget).unwrap();
    c.bench_function("back_and_forth/linord_k16", |b| {
        b.iter(|| back_and_forth(&l1, &l2, 16, DEFAULT_NODE_LIMIT).unwrap())
    });
}

criterion_group!(benches, topologies, sheaves, fraisse);
criterion_main!(benches);
