//! Bipartite upper bound: one linear assignment over vertices whose costs
//! include an estimate of the local edge edits, then the exact cost of the
//! edit path induced by the resulting vertex map.

use std::time::Instant;

use crate::cost::{CostModel, CostTables};
use crate::error::Result;
use crate::graph::AttributedGraph;

use super::lsap::lsap_min;
use super::{Instance, Route, SolveResult, SolveStats, SolveStatus, SolverConfig};

const FORBIDDEN: f64 = f64::INFINITY;

/// Incident edges of each vertex, split into outgoing and incoming for
/// directed graphs (all in `out` otherwise).
struct Incidence {
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(g: &AttributedGraph) -> Self {
        let n = g.vertex_count();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (e, edge) in g.edges().iter().enumerate() {
            out[edge.source].push(e);
            if g.is_directed() {
                inc[edge.target].push(e);
            } else {
                out[edge.target].push(e);
            }
        }
        Incidence { out, inc }
    }
}

/// Square `(a + b)` assignment matrix in the usual substitution / deletion /
/// insertion block layout, `sub(r, c)` filling the top-left block.
pub(crate) fn padded_cost_matrix(
    a: usize,
    b: usize,
    sub: impl Fn(usize, usize) -> f64,
    del: impl Fn(usize) -> f64,
    ins: impl Fn(usize) -> f64,
) -> Vec<f64> {
    let n = a + b;
    let mut m = vec![FORBIDDEN; n * n];
    for r in 0..a {
        for c in 0..b {
            m[r * n + c] = sub(r, c);
        }
        m[r * n + b + r] = del(r);
    }
    for c in 0..b {
        m[(a + c) * n + c] = ins(c);
        for r in 0..a {
            m[(a + c) * n + b + r] = 0.0;
        }
    }
    m
}

/// Optimal cost of editing one set of incident edges into another.
fn edge_set_cost(tables: &CostTables<'_>, left: &[usize], right: &[usize]) -> f64 {
    if left.is_empty() && right.is_empty() {
        return 0.0;
    }
    let m = tables.model();
    let (a, b) = (left.len(), right.len());
    let costs = padded_cost_matrix(
        a,
        b,
        |r, c| tables.edge_sub(left[r], right[c]),
        |_| m.edge_del,
        |_| m.edge_ins,
    );
    let perm = lsap_min(&costs, a + b);
    perm.iter().enumerate().map(|(r, &c)| costs[r * (a + b) + c]).sum()
}

/// Vertex map chosen by the bipartite approximation.
pub(crate) fn bipartite_mapping(tables: &CostTables<'_>) -> Vec<Option<usize>> {
    let (g1, g2) = (tables.g1, tables.g2);
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    if n1 == 0 {
        return Vec::new();
    }
    let (inc1, inc2) = (Incidence::new(g1), Incidence::new(g2));
    let m = tables.model();
    // Each edge touches two vertices, so local edge estimates are halved.
    let costs = padded_cost_matrix(
        n1,
        n2,
        |i, k| {
            let local = edge_set_cost(tables, &inc1.out[i], &inc2.out[k]) + edge_set_cost(tables, &inc1.inc[i], &inc2.inc[k]);
            tables.vertex_sub(i, k) + 0.5 * local
        },
        |i| m.vertex_del + 0.5 * m.edge_del * (inc1.out[i].len() + inc1.inc[i].len()) as f64,
        |k| m.vertex_ins + 0.5 * m.edge_ins * (inc2.out[k].len() + inc2.inc[k].len()) as f64,
    );
    let perm = lsap_min(&costs, n1 + n2);
    perm[..n1].iter().map(|&c| (c < n2).then_some(c)).collect()
}

pub fn solve_bipartite_ub(
    m: &CostModel,
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    _cfg: &SolverConfig,
) -> Result<SolveResult> {
    let start = Instant::now();
    let inst = Instance::new(m, g1, g2)?;
    let mapping = bipartite_mapping(&inst.tables);
    let stats = SolveStats {
        iterations: 1,
        wall_time_secs: start.elapsed().as_secs_f64(),
        ..SolveStats::default()
    };
    inst.finish(&mapping, SolveStatus::Heuristic, stats, Route::Edit)
}
