use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use gedgm::experiment::run_equivalence;
use gedgm::generate::{generate, GeneratorSpec};
use gedgm::par::Execution;
use gedgm::solvers::solve_oracle_with;
use gedgm::{CostModel, SolverConfig};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn equivalence(c: &mut Criterion) {
    let graphs = generate(&GeneratorSpec::default());
    let m = CostModel::default();
    let cfg = SolverConfig::default();
    let mut group = c.benchmark_group("equivalence_10_graphs");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_equivalence(black_box(&graphs), &m, &cfg, exec).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let spec = GeneratorSpec {
        count: 2,
        min_vertices: 7,
        max_vertices: 7,
        ..GeneratorSpec::default()
    };
    let graphs = generate(&spec);
    let (g1, g2) = (&graphs[0].1, &graphs[1].1);
    let m = CostModel::default();
    let cfg = SolverConfig::default();
    let mut group = c.benchmark_group("oracle_7x7");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| solve_oracle_with(&m, black_box(g1), black_box(g2), &cfg, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, equivalence, oracle);
criterion_main!(benches);
