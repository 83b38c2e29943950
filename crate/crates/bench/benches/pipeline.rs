use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use phasealign::alignment::{build_graph, greedy_color, max_independent_set_size, random_graph, EXACT_MIS_MAX};
use phasealign::ssa::{optimize_ssa, AscentOptions, SearchMode};
use phasealign::{bpsk_rate, sample_channel, StreamedGains};

fn graph_and_coloring(c: &mut Criterion) {
    let mut group = c.benchmark_group("interference_graph");
    group.sample_size(10);
    for k in [256usize, 1024, 4096] {
        let gains = StreamedGains::new(k, 1).unwrap();
        group.bench_with_input(BenchmarkId::new("build_graph", k), &k, |b, _| {
            b.iter(|| build_graph(black_box(&gains), 0.4).unwrap())
        });
        let graph = build_graph(&gains, 0.4).unwrap();
        group.bench_with_input(BenchmarkId::new("greedy_color", k), &k, |b, _| {
            b.iter(|| greedy_color(black_box(&graph), None).unwrap())
        });
    }
    group.finish();
}

fn independence_number(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_independent_set");
    for k in [32usize, 50, 64] {
        let graph = random_graph(k, 0.5, 7).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, _| {
            b.iter(|| max_independent_set_size(black_box(&graph), EXACT_MIS_MAX))
        });
    }
    group.finish();
}

fn bpsk(c: &mut Criterion) {
    c.bench_function("bpsk_rate", |b| b.iter(|| bpsk_rate(black_box(1.0), black_box(0.75)).unwrap()));
}

fn ssa_ascent(c: &mut Criterion) {
    let mut group = c.benchmark_group("ssa_ascent");
    group.sample_size(10);
    for k in [8usize, 32, 64] {
        let ch = sample_channel(k, 3).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, _| {
            b.iter(|| optimize_ssa(black_box(&ch), SearchMode::CoordinateAscent, &AscentOptions::new(4, 1)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, graph_and_coloring, independence_number, bpsk, ssa_ascent);
criterion_main!(benches);
