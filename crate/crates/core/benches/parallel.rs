//! Rayon pools of one thread, four threads and the default size. For the compiled
//! sequential path run `cargo bench -p origami-lab --no-default-features`.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use origami_lab::graph::Graph;
use origami_lab::spectral::{cheeger_exact, lambda2};
use origami_lab::surface::{staircase, Surface};
use origami_lab::warpgraph::build_level;
use rayon::ThreadPool;

fn pools() -> Vec<(String, ThreadPool)> {
    let mut counts = vec![1, 4, rayon::current_num_threads()];
    counts.sort_unstable();
    counts.dedup();
    counts
        .into_iter()
        .map(|n| (n.to_string(), rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap()))
        .collect()
}

fn z2() -> Surface {
    Surface::new(staircase(2).unwrap()).unwrap()
}

fn circulant(n: usize, jumps: &[usize]) -> Graph {
    let mut e = Vec::new();
    for v in 0..n {
        for &j in jumps {
            e.push((v as u32, ((v + j) % n) as u32));
        }
    }
    Graph::new(n, e)
}

fn bench_build(c: &mut Criterion) {
    let s = z2();
    let mut g = c.benchmark_group("build_level_t64");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::from_parameter(&name), |b| {
            pool.install(|| b.iter(|| build_level(black_box(&s), 2, 64).unwrap()))
        });
    }
    g.finish();
}

fn bench_lambda2(c: &mut Criterion) {
    let level = build_level(&z2(), 2, 32).unwrap();
    let mut g = c.benchmark_group("lambda2_t32");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::from_parameter(&name), |b| {
            pool.install(|| b.iter(|| lambda2(black_box(level.graph()), 1e-9).unwrap()))
        });
    }
    g.finish();
}

fn bench_cheeger(c: &mut Criterion) {
    let graph = circulant(20, &[1, 3, 7]);
    let mut g = c.benchmark_group("cheeger_n20");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::from_parameter(&name), |b| {
            pool.install(|| b.iter(|| cheeger_exact(black_box(&graph)).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_build, bench_lambda2, bench_cheeger);
criterion_main!(benches);
