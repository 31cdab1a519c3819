use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use epsmean::mean::min_lattice_size;
use epsmean::{bounds_exact, bounds_heuristic, ConflictGraph, SearchConfig, DEFAULT_CAP};
use epsmean_bench::grid_instance;

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounds_exact");
    for n in [20usize, 30, 40] {
        let (space, f) = grid_instance(n);
        // neighbours and second neighbours conflict
        let eps = 2.5 / (n - 1) as f64;
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| bounds_exact(&space, &f, black_box(eps), DEFAULT_CAP).unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounds_heuristic");
    group.sample_size(20);
    for n in [64usize, 201] {
        let (space, f) = grid_instance(n);
        let eps = 4.5 / (n - 1) as f64;
        let cfg = SearchConfig::default();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| bounds_heuristic(&space, &f, black_box(eps), &cfg).unwrap())
        });
    }
    group.finish();
}

fn minimum_size(c: &mut Criterion) {
    let (space, _) = grid_instance(64);
    let graph = ConflictGraph::new(&space, 1.5 / 63.0).unwrap();
    c.bench_function("min_lattice_size/64", |b| {
        b.iter(|| min_lattice_size(black_box(&graph), 10_000_000).unwrap())
    });
}

criterion_group!(benches, enumeration, search, minimum_size);
criterion_main!(benches);
