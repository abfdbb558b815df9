//! Integer projected fixed point iterations on the quadratic matching score.
//!
//! Works directly on the maximization form: at each iterate the score is
//! linearized, the best partial assignment for the linearization is found by
//! a padded linear assignment, and the score is maximized exactly along the
//! segment towards it (a one-dimensional quadratic). Every discrete point
//! visited is kept as a candidate; the final relaxed iterate is projected
//! onto a partial assignment by one more linear assignment.

use std::time::Instant;

use crate::assignment::Assignment;
use crate::cost::CostModel;
use crate::error::Result;
use crate::formulations::{build_gmm_prime, QuadraticModelGmm};
use crate::graph::AttributedGraph;

use super::lsap::lsap_max;
use super::{Instance, Route, SolveResult, SolveStats, SolveStatus, SolverConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct IpfpOutcome {
    pub mapping: Vec<Option<usize>>,
    pub score: f64,
    pub iterations: u64,
    /// Relaxed score at the start and after every iteration.
    pub relaxed_scores: Vec<f64>,
    pub converged: bool,
}

/// Best partial assignment for linear gains `w` (row-major `n1 x n2`).
/// Unassigned rows and columns contribute zero.
fn best_partial_assignment(w: &[f64], n1: usize, n2: usize) -> Vec<Option<usize>> {
    if n1 == 0 {
        return Vec::new();
    }
    let n = n1 + n2;
    let mut gains = vec![0.0; n * n];
    for i in 0..n1 {
        gains[i * n..i * n + n2].copy_from_slice(&w[i * n2..(i + 1) * n2]);
    }
    let perm = lsap_max(&gains, n);
    (0..n1)
        .map(|i| {
            let k = perm[i];
            // A zero-gain substitution is no better than leaving both unmatched.
            (k < n2 && w[i * n2 + k] > 0.0).then_some(k)
        })
        .collect()
}

fn indicator(mapping: &[Option<usize>], n2: usize) -> Vec<f64> {
    let mut x = vec![0.0; mapping.len() * n2];
    for (i, k) in mapping.iter().enumerate() {
        if let Some(k) = *k {
            x[i * n2 + k] = 1.0;
        }
    }
    x
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Maximize the matching score of `model`, starting from `start` (a partial
/// assignment) or from the uniform point `1 / max(n1, n2)` of the relaxed
/// polytope.
pub fn ipfp_maximize(model: &QuadraticModelGmm, cfg: &SolverConfig, start: Option<&Assignment>) -> IpfpOutcome {
    let (n1, n2) = (model.n1(), model.n2());
    if n1 == 0 || n2 == 0 {
        return IpfpOutcome {
            mapping: vec![None; n1],
            score: 0.0,
            iterations: 0,
            relaxed_scores: vec![0.0],
            converged: true,
        };
    }

    let mut x = match start {
        Some(a) => indicator(&a.to_mapping(n1), n2),
        None => vec![1.0 / n1.max(n2) as f64; n1 * n2],
    };
    let mut fx = model.relaxed_objective(&x);
    let mut relaxed_scores = vec![fx];

    let mut best_mapping = vec![None; n1];
    let mut best_score = 0.0;
    let mut consider = |mapping: Vec<Option<usize>>| {
        let s = model.objective(&mapping);
        // Strict improvement only: ties keep the earlier (sparser) candidate.
        if s > best_score {
            best_score = s;
            best_mapping = mapping;
        }
    };
    if let Some(a) = start {
        consider(a.to_mapping(n1));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.ipfp_max_iters as u64 {
        iterations += 1;
        let grad = model.gradient(&x);
        let target = best_partial_assignment(&grad, n1, n2);
        let b = indicator(&target, n2);
        consider(target);

        let d: Vec<f64> = b.iter().zip(&x).map(|(bi, xi)| bi - xi).collect();
        // f(x + t d) = f(x) + t * slope + t^2 * curvature
        let slope = dot(&grad, &d);
        let curvature = model.quadratic_form(&d);
        let t = if curvature < 0.0 {
            (-slope / (2.0 * curvature)).clamp(0.0, 1.0)
        } else if slope + curvature > 0.0 {
            1.0
        } else {
            0.0
        };
        let candidate: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + t * di).collect();
        let f_candidate = model.relaxed_objective(&candidate);
        let improvement = f_candidate - fx;
        if improvement > 0.0 {
            x = candidate;
            fx = f_candidate;
        }
        relaxed_scores.push(fx);
        if improvement < cfg.ipfp_tolerance {
            converged = true;
            break;
        }
    }

    consider(best_partial_assignment(&x, n1, n2));

    IpfpOutcome {
        mapping: best_mapping,
        score: best_score,
        iterations,
        relaxed_scores,
        converged,
    }
}

fn run(
    m: &CostModel,
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    cfg: &SolverConfig,
    start: Option<&Assignment>,
) -> Result<SolveResult> {
    let clock = Instant::now();
    let inst = Instance::new(m, g1, g2)?;
    let model = build_gmm_prime(&inst.sim, g1, g2);
    let out = ipfp_maximize(&model, cfg, start);
    let stats = SolveStats {
        iterations: out.iterations,
        wall_time_secs: clock.elapsed().as_secs_f64(),
        relaxed_scores: out.relaxed_scores,
        ..SolveStats::default()
    };
    inst.finish(&out.mapping, SolveStatus::Heuristic, stats, Route::Matching)
}

/// Fixed-point heuristic from the uniform starting point.
pub fn solve_ipfp(m: &CostModel, g1: &AttributedGraph, g2: &AttributedGraph, cfg: &SolverConfig) -> Result<SolveResult> {
    run(m, g1, g2, cfg, None)
}

/// Fixed-point heuristic from a given assignment, e.g. a bipartite solution.
pub fn solve_ipfp_from(
    m: &CostModel,
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    cfg: &SolverConfig,
    start: &Assignment,
) -> Result<SolveResult> {
    crate::assignment::require_feasible(start, g1, g2)?;
    run(m, g1, g2, cfg, Some(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, Vertex};
    use crate::similarity::build_similarity;
    use crate::solvers::solve_oracle;

    fn graph(attrs: &[f64], edges: &[(usize, usize)], directed: bool) -> AttributedGraph {
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
        AttributedGraph::new(directed, vertices, edges).unwrap()
    }

    #[test]
    fn identity_is_a_fixed_point() {
        let g = graph(&[0.0, 1.0], &[(0, 1)], true);
        let id = Assignment::from_pairs([(0, 0), (1, 1)]);
        let r = solve_ipfp_from(&CostModel::default(), &g, &g, &SolverConfig::default(), &id).unwrap();
        assert_eq!(r.stats.iterations, 1);
        assert_eq!(r.gm_score, 6.0);
        assert_eq!(r.gm_score, r.gamma);
        assert_eq!(r.ged_value, 0.0);
        assert_eq!(r.assignment, id);
    }

    #[test]
    fn zero_similarity_gives_empty_assignment() {
        let g1 = graph(&[0.0, 1.0], &[(0, 1)], false);
        let g2 = graph(&[5.0, 2.0, 1.0], &[(0, 1)], false);
        let m = CostModel::constant(2.0, 1.0, 2.0, 1.0);
        let r = solve_ipfp(&m, &g1, &g2, &SolverConfig::default()).unwrap();
        assert_eq!(r.gm_score, 0.0);
        assert!(r.assignment.is_empty());
        assert_eq!(r.ged_value, r.gamma);
    }

    #[test]
    fn scores_are_monotone_and_bounded() {
        let g1 = graph(&[0.0, 1.0, 2.0, 3.0], &[(0, 1), (1, 2), (2, 3)], false);
        let g2 = graph(&[0.4, 2.1, 2.9, 1.2], &[(0, 1), (1, 2), (0, 3)], false);
        let m = CostModel::default();
        let cfg = SolverConfig::default();
        let r = solve_ipfp(&m, &g1, &g2, &cfg).unwrap();
        assert!(r.stats.relaxed_scores.windows(2).all(|w| w[1] >= w[0]));
        assert!(r.stats.iterations <= cfg.ipfp_max_iters as u64);
        let opt = solve_oracle(&m, &g1, &g2, &cfg).unwrap();
        assert!(r.ged_value >= opt.ged_value - 1e-9);
    }

    #[test]
    fn empty_side() {
        let g = graph(&[0.0], &[], true);
        let e = AttributedGraph::empty(true);
        let sim = build_similarity(&CostModel::default(), &g, &e).unwrap();
        let out = ipfp_maximize(&build_gmm_prime(&sim, &g, &e), &SolverConfig::default(), None);
        assert_eq!(out.mapping, vec![None]);
        assert_eq!(out.score, 0.0);
    }
}
