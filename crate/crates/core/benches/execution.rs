use std::hint::black_box;

use cartprod::graph::{
    distance_cartesian_check, generate::connected_graphs, spectral_radius_bound_check,
};
use cartprod::verify::run_verify;
use cartprod::{Execution, Graph};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn verify_campaign(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_all_200_trials");
    group.sample_size(10);
    for (label, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| run_verify("all", black_box(200), 42, 3, exec).unwrap())
        });
    }
    group.finish();
}

fn graph_sweep(c: &mut Criterion) {
    let corpus: Vec<Graph> = (1..=4).flat_map(|n| connected_graphs(n).unwrap()).collect();
    let pairs: Vec<(Graph, Graph)> = corpus
        .iter()
        .flat_map(|g| corpus.iter().map(move |h| (g.clone(), h.clone())))
        .collect();
    let mut group = c.benchmark_group("graph_corpus_sweep");
    group.sample_size(10);
    for (label, exec) in MODES {
        group.bench_function(BenchmarkId::new("distance_identity", label), |b| {
            b.iter(|| exec.map_slice(&pairs, |(g, h)| distance_cartesian_check(g, h).unwrap()))
        });
        group.bench_function(BenchmarkId::new("spectral_bounds", label), |b| {
            b.iter(|| {
                exec.map_slice(&pairs, |(g, h)| {
                    spectral_radius_bound_check(g, h).unwrap().consistent()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, verify_campaign, graph_sweep);
criterion_main!(benches);
