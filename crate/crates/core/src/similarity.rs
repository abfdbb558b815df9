//! Graph-matching similarities derived from edit costs.
//!
//! Each pairwise similarity is the saving obtained by substituting instead of
//! deleting and inserting: `s'(a -> b) = -(c(a -> b) - c(a -> eps) - c(eps -> b))`.
//! With these values the matching score of any assignment equals
//! `gamma - cost(induced edit path)`, so maximizing the score and minimizing
//! the edit cost select the same assignments.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::assignment::{require_feasible, Assignment};
use crate::cost::{compute_gamma, CostModel};
use crate::error::{Result, ValidationError};
use crate::graph::AttributedGraph;

/// How the endpoints of a G1 edge `(i, j)` land on a G2 edge `(k, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `i -> k`, `j -> l`.
    Straight,
    /// `i -> l`, `j -> k`; only for undirected graphs.
    Crossed,
}

/// Similarity of substituting one G1 edge by one G2 edge under one
/// orientation. The term is active when both `head` and `tail` vertex pairs
/// are in the assignment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgePairSimilarity {
    pub e1: usize,
    pub e2: usize,
    pub orientation: Orientation,
    pub head: (usize, usize),
    pub tail: (usize, usize),
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityModel {
    n1: usize,
    n2: usize,
    vertex_sim: Vec<f64>,
    edge_sim: Vec<EdgePairSimilarity>,
    edge_lookup: HashMap<(usize, usize, Orientation), usize>,
    gamma: f64,
}

/// `s'` for one substitution given its substitution, deletion and insertion costs.
#[inline]
pub fn transformed_similarity(sub: f64, del: f64, ins: f64) -> f64 {
    -(sub - del - ins)
}

/// Recovers the substitution cost from a transformed similarity.
#[inline]
pub fn substitution_from_similarity(sim: f64, del: f64, ins: f64) -> f64 {
    -sim + del + ins
}

/// Build the transformed similarity tables and `gamma` for a graph pair.
pub fn build_similarity(m: &CostModel, g1: &AttributedGraph, g2: &AttributedGraph) -> Result<SimilarityModel> {
    if g1.is_directed() != g2.is_directed() {
        return Err(ValidationError::DirectednessMismatch.into());
    }
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let mut vertex_sim = Vec::with_capacity(n1 * n2);
    for i in 0..n1 {
        for k in 0..n2 {
            let sub = m.vertex_substitution(g1, i, g2, k);
            vertex_sim.push(transformed_similarity(sub, m.vertex_del, m.vertex_ins));
        }
    }

    let orientations: &[Orientation] = if g1.is_directed() {
        &[Orientation::Straight]
    } else {
        &[Orientation::Straight, Orientation::Crossed]
    };
    let mut edge_sim = Vec::with_capacity(g1.edge_count() * g2.edge_count() * orientations.len());
    let mut edge_lookup = HashMap::with_capacity(edge_sim.capacity());
    for (e1, a) in g1.edges().iter().enumerate() {
        for (e2, b) in g2.edges().iter().enumerate() {
            let value = transformed_similarity(m.edge_substitution(g1, e1, g2, e2), m.edge_del, m.edge_ins);
            for &orientation in orientations {
                let (head, tail) = match orientation {
                    Orientation::Straight => ((a.source, b.source), (a.target, b.target)),
                    Orientation::Crossed => ((a.source, b.target), (a.target, b.source)),
                };
                edge_lookup.insert((e1, e2, orientation), edge_sim.len());
                edge_sim.push(EdgePairSimilarity {
                    e1,
                    e2,
                    orientation,
                    head,
                    tail,
                    value,
                });
            }
        }
    }

    Ok(SimilarityModel {
        n1,
        n2,
        vertex_sim,
        edge_sim,
        edge_lookup,
        gamma: compute_gamma(m, g1, g2),
    })
}

impl SimilarityModel {
    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    #[inline]
    pub fn vertex(&self, i: usize, k: usize) -> f64 {
        self.vertex_sim[i * self.n2 + k]
    }

    /// Row-major `n1 x n2` vertex similarities.
    pub fn vertex_table(&self) -> Vec<Vec<f64>> {
        if self.n2 == 0 {
            return vec![Vec::new(); self.n1];
        }
        self.vertex_sim.chunks(self.n2).map(<[f64]>::to_vec).collect()
    }

    pub fn edge_pairs(&self) -> &[EdgePairSimilarity] {
        &self.edge_sim
    }

    pub fn edge(&self, e1: usize, e2: usize, orientation: Orientation) -> Option<f64> {
        self.edge_lookup.get(&(e1, e2, orientation)).map(|&i| self.edge_sim[i].value)
    }

    /// Matching score of a dense mapping: the first-order terms of mapped
    /// pairs plus every second-order term whose two vertex pairs are both
    /// selected.
    pub fn score_mapping(&self, mapping: &[Option<usize>]) -> f64 {
        let mut score = 0.0;
        for (i, image) in mapping.iter().enumerate() {
            if let Some(k) = *image {
                score += self.vertex(i, k);
            }
        }
        for p in &self.edge_sim {
            if mapping[p.head.0] == Some(p.head.1) && mapping[p.tail.0] == Some(p.tail.1) {
                score += p.value;
            }
        }
        score
    }

    /// Dense affinity matrix `K` over the column-wise vectorized assignment
    /// (`index = i + k * n1`): vertex similarities on the diagonal, edge
    /// similarities at (head, tail). For binary `y`, `y' K y` is the score.
    pub fn affinity_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.n1 * self.n2;
        let idx = |(i, k): (usize, usize)| i + k * self.n1;
        let mut kmat = vec![vec![0.0; n]; n];
        for i in 0..self.n1 {
            for k in 0..self.n2 {
                kmat[idx((i, k))][idx((i, k))] = self.vertex(i, k);
            }
        }
        for p in &self.edge_sim {
            kmat[idx(p.head)][idx(p.tail)] += p.value;
        }
        kmat
    }
}

/// Matching score of an assignment under the transformed similarities.
pub fn gm_score(sim: &SimilarityModel, a: &Assignment, g1: &AttributedGraph, g2: &AttributedGraph) -> Result<f64> {
    require_feasible(a, g1, g2)?;
    Ok(sim.score_mapping(&a.to_mapping(sim.n1)))
}

/// Edit distance value corresponding to a matching score.
pub fn ged_value_from_score(sim: &SimilarityModel, score: f64) -> f64 {
    sim.gamma - score
}
