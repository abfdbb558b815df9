//! The quadratic graph-matching model over transformed similarities.
//!
//! Maximize `S''(y) = sum s'(i->k) y[i,k] + sum s'(e->f) y[i,k] y[j,l]`
//! subject only to the matching rows `sum_k y[i,k] <= 1` and
//! `sum_i y[i,k] <= 1`. Edge consistency is carried by the products, so
//! there are no topological rows.

use crate::assignment::{check_assignment, Assignment};
use crate::graph::AttributedGraph;
use crate::similarity::SimilarityModel;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticModelGmm {
    sim: SimilarityModel,
    n1: usize,
    n2: usize,
}

pub fn build_gmm_prime(sim: &SimilarityModel, g1: &AttributedGraph, g2: &AttributedGraph) -> QuadraticModelGmm {
    debug_assert_eq!((sim.n1(), sim.n2()), (g1.vertex_count(), g2.vertex_count()));
    QuadraticModelGmm {
        sim: sim.clone(),
        n1: g1.vertex_count(),
        n2: g2.vertex_count(),
    }
}

impl QuadraticModelGmm {
    pub fn similarity(&self) -> &SimilarityModel {
        &self.sim
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn variable_count(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn constraint_count(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn is_feasible(&self, y: &Assignment, g1: &AttributedGraph, g2: &AttributedGraph) -> bool {
        check_assignment(y, g1, g2)
    }

    /// Row and column sums of a relaxed (row-major `n1 x n2`) iterate are all
    /// at most `1 + tol` and every entry is in `[-tol, 1 + tol]`.
    pub fn relaxed_feasible(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.variable_count() || x.iter().any(|&v| v < -tol || v > 1.0 + tol) {
            return false;
        }
        let rows_ok = (0..self.n1).all(|i| x[i * self.n2..(i + 1) * self.n2].iter().sum::<f64>() <= 1.0 + tol);
        let cols_ok = (0..self.n2).all(|k| (0..self.n1).map(|i| x[i * self.n2 + k]).sum::<f64>() <= 1.0 + tol);
        rows_ok && cols_ok
    }

    pub fn objective(&self, mapping: &[Option<usize>]) -> f64 {
        self.sim.score_mapping(mapping)
    }

    /// `S''` on a relaxed row-major iterate.
    pub fn relaxed_objective(&self, x: &[f64]) -> f64 {
        let n2 = self.n2;
        let linear: f64 = x
            .iter()
            .enumerate()
            .map(|(idx, &v)| self.sim.vertex(idx / n2, idx % n2) * v)
            .sum();
        let quadratic: f64 = self
            .sim
            .edge_pairs()
            .iter()
            .map(|p| p.value * x[p.head.0 * n2 + p.head.1] * x[p.tail.0 * n2 + p.tail.1])
            .sum();
        linear + quadratic
    }

    /// Gradient of `S''` at `x`.
    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let n2 = self.n2;
        let mut g: Vec<f64> = (0..x.len()).map(|idx| self.sim.vertex(idx / n2, idx % n2)).collect();
        for p in self.sim.edge_pairs() {
            let h = p.head.0 * n2 + p.head.1;
            let t = p.tail.0 * n2 + p.tail.1;
            g[h] += p.value * x[t];
            g[t] += p.value * x[h];
        }
        g
    }

    /// Pure quadratic part `d' K d` along a direction, excluding the linear
    /// terms.
    pub fn quadratic_form(&self, d: &[f64]) -> f64 {
        let n2 = self.n2;
        self.sim
            .edge_pairs()
            .iter()
            .map(|p| p.value * d[p.head.0 * n2 + p.head.1] * d[p.tail.0 * n2 + p.tail.1])
            .sum()
    }
}
