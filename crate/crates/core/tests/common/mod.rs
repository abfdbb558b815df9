#![allow(dead_code)]

use gedgm::generate::random_graph;
use gedgm::{AttributedGraph, CostModel, Edge, SubstitutionCost, Vertex};
use rand::Rng;

/// A pair of random graphs sharing directedness, sizes in `0..=max_n`.
pub fn random_pair<R: Rng>(rng: &mut R, min_n: usize, max_n: usize) -> (AttributedGraph, AttributedGraph) {
    let directed = rng.random_bool(0.5);
    let p = rng.random_range(0.0..=1.0);
    let n1 = rng.random_range(min_n..=max_n);
    let n2 = rng.random_range(min_n..=max_n);
    (
        random_graph(rng, n1, p, 2, 1, directed),
        random_graph(rng, n2, p, 2, 1, directed),
    )
}

/// Weighted Euclidean substitutions with random non-negative deletion and
/// insertion prices (not necessarily symmetric).
pub fn random_cost<R: Rng>(rng: &mut R) -> CostModel {
    let mut price = || (rng.random_range(0..=8) as f64) * 0.25;
    let (vd, vi, ed, ei) = (price(), price(), price(), price());
    CostModel::new(
        SubstitutionCost::euclidean(rng.random_range(0.5..3.0)),
        vd,
        vi,
        SubstitutionCost::euclidean(rng.random_range(0.5..3.0)),
        ed,
        ei,
    )
    .unwrap()
}

/// Euclidean substitutions with equal deletion and insertion prices.
pub fn random_metric_cost<R: Rng>(rng: &mut R) -> CostModel {
    let v = rng.random_range(0.5..2.0);
    let e = rng.random_range(0.5..2.0);
    CostModel::new(
        SubstitutionCost::euclidean(rng.random_range(0.5..2.0)),
        v,
        v,
        SubstitutionCost::euclidean(rng.random_range(0.5..2.0)),
        e,
        e,
    )
    .unwrap()
}

pub fn graph(attrs: &[f64], edges: &[(usize, usize)], directed: bool) -> AttributedGraph {
    let vertices = attrs
        .iter()
        .enumerate()
        .map(|(i, &a)| Vertex {
            id: format!("v{i}"),
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
    AttributedGraph::new(directed, vertices, edges).unwrap()
}
