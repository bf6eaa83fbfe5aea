//! Benchmarks for the hot paths: node finding, embedding certification,
//! diagram extraction plus identification, height construction, and the
//! degree-6 obstruction test.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use polyknot::construct::{height_by_intervals, obstruction_deg6, CrossingPattern};
use polyknot::corpus::load_corpus;
use polyknot::diagram::extract_diagram;
use polyknot::embedding::is_embedding;
use polyknot::invariants::{identify, jones};
use polyknot::resultant::double_points;
use polyknot_bench::{five_node_projection, trefoil};

fn bench_double_points(c: &mut Criterion) {
    let (f, g) = five_node_projection();
    c.bench_function("double_points/five_node_quintic", |b| {
        b.iter(|| double_points(black_box(&f), black_box(&g)).unwrap())
    });
}

fn bench_is_embedding(c: &mut Criterion) {
    let k = trefoil();
    c.bench_function("is_embedding/trefoil", |b| {
        b.iter(|| is_embedding(black_box(&k)).unwrap())
    });
}

fn bench_identify(c: &mut Criterion) {
    let k = trefoil();
    let dg = extract_diagram(&k).unwrap();
    c.bench_function("identify/trefoil_diagram", |b| {
        b.iter(|| identify(black_box(&dg)).unwrap())
    });

    let corpus = load_corpus().unwrap();
    let deep = &corpus.iter().find(|e| e.name == "8_19").unwrap().knot;
    let deep_dg = extract_diagram(deep).unwrap();
    c.bench_function("jones/8_19_state_sum", |b| {
        b.iter(|| jones(black_box(&deep_dg)).unwrap())
    });
}

fn bench_construct(c: &mut Criterion) {
    let (f, g) = five_node_projection();
    let pattern = CrossingPattern::parse("-+-+-").unwrap();
    c.bench_function("height_by_intervals/five_crossings", |b| {
        b.iter(|| height_by_intervals(black_box(&f), black_box(&g), black_box(&pattern)).unwrap())
    });
}

fn bench_obstruction(c: &mut Criterion) {
    let (f, g) = five_node_projection();
    let pattern = CrossingPattern::parse("-+-+-").unwrap();
    let mut group = c.benchmark_group("obstruction_deg6");
    group.sample_size(10);
    group.bench_function("five_crossings", |b| {
        b.iter(|| obstruction_deg6(black_box(&f), black_box(&g), black_box(&pattern)).unwrap())
    });
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = bench_double_points, bench_is_embedding, bench_identify,
              bench_construct, bench_obstruction
}
criterion_main!(benches);
