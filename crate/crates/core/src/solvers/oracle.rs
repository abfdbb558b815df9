//! Exhaustive search over every injective partial vertex map.
//!
//! Edit costs are driven entirely by the vertex map, so minimizing the induced
//! edit-path cost over all assignments gives the exact edit distance. The
//! matching oracle maximizes the quadratic score over the same set.
//! Ties go to the lexicographically smallest assignment (deletions last).

use std::time::Instant;

use crate::assignment::{check_size, MappingEnumerator};
use crate::cost::{CostModel, CostTables};
use crate::error::Result;
use crate::formulations::QuadraticModelGmm;
use crate::graph::AttributedGraph;
use crate::par::{self, Execution};

use super::{Instance, Route, SolveResult, SolveStats, SolveStatus, SolverConfig};

#[derive(Debug, Clone)]
pub(crate) struct Best {
    pub value: f64,
    pub mapping: Vec<Option<usize>>,
    pub scanned: u64,
}

fn chunks(n1: usize, n2: usize) -> Vec<MappingEnumerator> {
    if n1 == 0 {
        return vec![MappingEnumerator::new(0, n2)];
    }
    (0..n2)
        .map(Some)
        .chain([None])
        .map(|first| MappingEnumerator::with_first(n1, n2, first))
        .collect()
}

// Scans in lexicographic order, so keeping only strict improvements keeps the
// smallest key among equal values.
fn scan(chunk: MappingEnumerator, value: impl Fn(&[Option<usize>]) -> f64, better: fn(f64, f64) -> bool) -> Option<Best> {
    let mut best: Option<Best> = None;
    let mut scanned = 0;
    for mapping in chunk {
        scanned += 1;
        let v = value(&mapping);
        match &mut best {
            Some(b) if !better(v, b.value) => {}
            _ => {
                best = Some(Best {
                    value: v,
                    mapping,
                    scanned: 0,
                })
            }
        }
    }
    best.map(|b| Best { scanned, ..b })
}

fn merge(parts: Vec<Option<Best>>, better: fn(f64, f64) -> bool) -> Best {
    let scanned = parts.iter().flatten().map(|b| b.scanned).sum();
    // Chunks come in lexicographic order of their first entry.
    let best = parts
        .into_iter()
        .flatten()
        .reduce(|acc, b| if better(b.value, acc.value) { b } else { acc })
        .expect("the empty assignment is always enumerated");
    Best { scanned, ..best }
}

pub(crate) fn exhaustive_min(tables: &CostTables<'_>, exec: Execution) -> Best {
    let parts = par::map(chunks(tables.n1(), tables.n2()), exec, |chunk| {
        scan(chunk, |m| tables.induced_cost(m), |a, b| a < b)
    });
    merge(parts, |a, b| a < b)
}

/// Maximum of the quadratic matching score and the lexicographically smallest
/// maximizer.
pub fn gm_oracle_maximize(model: &QuadraticModelGmm, exec: Execution) -> (Vec<Option<usize>>, f64, u64) {
    let parts = par::map(chunks(model.n1(), model.n2()), exec, |chunk| {
        scan(chunk, |m| model.objective(m), |a, b| a > b)
    });
    let best = merge(parts, |a, b| a > b);
    (best.mapping, best.value, best.scanned)
}

/// Exact edit distance by exhaustive minimization.
pub fn solve_oracle(m: &CostModel, g1: &AttributedGraph, g2: &AttributedGraph, cfg: &SolverConfig) -> Result<SolveResult> {
    solve_oracle_with(m, g1, g2, cfg, Execution::Sequential)
}

pub fn solve_oracle_with(
    m: &CostModel,
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    cfg: &SolverConfig,
    exec: Execution,
) -> Result<SolveResult> {
    let start = Instant::now();
    check_size(g1.vertex_count(), g2.vertex_count(), cfg.oracle_limit)?;
    let inst = Instance::new(m, g1, g2)?;
    let best = exhaustive_min(&inst.tables, exec);
    let stats = SolveStats {
        nodes: best.scanned,
        wall_time_secs: start.elapsed().as_secs_f64(),
        ..SolveStats::default()
    };
    inst.finish(&best.mapping, SolveStatus::Optimal, stats, Route::Edit)
}

/// Exact maximum of the matching score; `ged_value` is `gamma - max score`.
pub fn solve_gm_oracle(
    m: &CostModel,
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    cfg: &SolverConfig,
) -> Result<SolveResult> {
    let start = Instant::now();
    check_size(g1.vertex_count(), g2.vertex_count(), cfg.oracle_limit)?;
    let inst = Instance::new(m, g1, g2)?;
    let model = crate::formulations::build_gmm_prime(&inst.sim, g1, g2);
    let (mapping, _, scanned) = gm_oracle_maximize(&model, Execution::Sequential);
    let stats = SolveStats {
        nodes: scanned,
        wall_time_secs: start.elapsed().as_secs_f64(),
        ..SolveStats::default()
    };
    inst.finish(&mapping, SolveStatus::Optimal, stats, Route::Matching)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::{Edge, Vertex};

    fn graph(attrs: &[f64], edges: &[(usize, usize)]) -> AttributedGraph {
        let vertices = attrs
            .iter()
            .enumerate()
            .map(|(i, &a)| Vertex {
                id: i.to_string(),
                attrs: vec![a],
            })
            .collect();
        let edges = edges
            .iter()
            .map(|&(s, t)| Edge {
                source: s,
                target: t,
                attrs: vec![],
            })
            .collect();
        AttributedGraph::new(false, vertices, edges).unwrap()
    }

    #[test]
    fn identical_graphs_cost_nothing() {
        let g = graph(&[0.0, 1.0, 2.5], &[(0, 1), (1, 2)]);
        let r = solve_oracle(&CostModel::default(), &g, &g, &SolverConfig::default()).unwrap();
        assert_eq!(r.ged_value, 0.0);
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_eq!(r.assignment.pairs().collect::<Vec<_>>(), vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn one_vertex_prefers_deletion() {
        let (g1, g2) = (graph(&[0.0], &[]), graph(&[3.0], &[]));
        let r = solve_oracle(&CostModel::default(), &g1, &g2, &SolverConfig::default()).unwrap();
        assert_eq!(r.ged_value, 2.0);
        assert!(r.assignment.is_empty());
        assert_eq!(r.stats.nodes, 2);
    }

    #[test]
    fn against_empty_graph_costs_gamma() {
        let g = graph(&[0.0, 1.0, 2.0], &[(0, 1)]);
        let e = AttributedGraph::empty(false);
        let r = solve_oracle(&CostModel::default(), &g, &e, &SolverConfig::default()).unwrap();
        assert_eq!(r.ged_value, r.gamma);
        assert_eq!(r.gamma, 4.0);
        let r = solve_oracle(&CostModel::default(), &e, &g, &SolverConfig::default()).unwrap();
        assert_eq!(r.ged_value, 4.0);
    }

    #[test]
    fn matching_oracle_agrees() {
        let g1 = graph(&[0.0, 1.0, 2.0], &[(0, 1), (1, 2)]);
        let g2 = graph(&[0.3, 2.2], &[(0, 1)]);
        let cfg = SolverConfig::default();
        let ged = solve_oracle(&CostModel::default(), &g1, &g2, &cfg).unwrap();
        let gm = solve_gm_oracle(&CostModel::default(), &g1, &g2, &cfg).unwrap();
        assert!((ged.ged_value - gm.ged_value).abs() < 1e-9);
        assert_eq!(ged.assignment, gm.assignment);
    }

    #[test]
    fn parallel_matches_sequential() {
        let g1 = graph(&[0.0, 1.0, 2.0, 0.5], &[(0, 1), (1, 2), (2, 3)]);
        let g2 = graph(&[0.3, 2.2, 1.1], &[(0, 1), (0, 2)]);
        let cfg = SolverConfig::default();
        let m = CostModel::default();
        let a = solve_oracle_with(&m, &g1, &g2, &cfg, Execution::Sequential).unwrap();
        let b = solve_oracle_with(&m, &g1, &g2, &cfg, Execution::Parallel).unwrap();
        assert_eq!(a.assignment, b.assignment);
        assert_eq!(a.ged_value.to_bits(), b.ged_value.to_bits());
        assert_eq!(a.stats.nodes, b.stats.nodes);
    }

    #[test]
    fn size_limit() {
        let big = graph(&[0.0; 5], &[]);
        let cfg = SolverConfig {
            oracle_limit: 4,
            ..SolverConfig::default()
        };
        let err = solve_oracle(&CostModel::default(), &big, &big, &cfg).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { limit: 4, .. }));
    }
}
