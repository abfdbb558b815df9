//! Depth-first branch and bound for the exact edit distance.
//!
//! G1 vertices are decided in input order, each either substituted by an
//! unused G2 vertex or deleted. Edge operations are charged as soon as both
//! endpoints are decided. The bound on a node is the cost charged so far plus
//! an optimal vertex-only assignment of the remaining G1 vertices against the
//! unused G2 vertices; the omitted edge costs are non-negative, so the bound
//! never overestimates. The search starts from the bipartite upper bound.

use std::time::Instant;

use crate::assignment::mapping_cmp;
use crate::cost::{CostModel, CostTables};
use crate::error::Result;
use crate::graph::AttributedGraph;

use super::bipartite::{bipartite_mapping, padded_cost_matrix};
use super::lsap::lsap_min;
use super::{Instance, Route, SolveResult, SolveStats, SolveStatus, SolverConfig};

const DEADLINE_CHECK_INTERVAL: u64 = 64;

/// (edge index, other endpoint, this vertex is the edge source)
type Adjacency = Vec<Vec<(usize, usize, bool)>>;

fn adjacency(g: &AttributedGraph) -> Adjacency {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for (e, edge) in g.edges().iter().enumerate() {
        adj[edge.source].push((e, edge.target, true));
        adj[edge.target].push((e, edge.source, false));
    }
    adj
}

struct Search<'a, 'g> {
    tables: &'a CostTables<'g>,
    adj1: Adjacency,
    adj2: Adjacency,
    mapping: Vec<Option<usize>>,
    inverse: Vec<Option<usize>>,
    best_value: f64,
    best_mapping: Vec<Option<usize>>,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
}

impl<'a, 'g> Search<'a, 'g> {
    fn new(tables: &'a CostTables<'g>, deadline: Instant) -> Self {
        let incumbent = bipartite_mapping(tables);
        Search {
            tables,
            adj1: adjacency(tables.g1),
            adj2: adjacency(tables.g2),
            mapping: vec![None; tables.n1()],
            inverse: vec![None; tables.n2()],
            best_value: tables.induced_cost(&incumbent),
            best_mapping: incumbent,
            nodes: 0,
            deadline,
            timed_out: false,
        }
    }

    /// Cost that becomes certain once vertex `i` (all earlier vertices
    /// decided) is mapped to `target`.
    fn step_cost(&self, i: usize, target: Option<usize>) -> f64 {
        let t = self.tables;
        let m = t.model();
        let mut cost = match target {
            Some(k) => t.vertex_sub(i, k),
            None => m.vertex_del,
        };
        for &(e, j, i_is_source) in &self.adj1[i] {
            if j >= i {
                continue;
            }
            let image = target.zip(self.mapping[j]).and_then(|(k, l)| {
                let (s, d) = if i_is_source { (k, l) } else { (l, k) };
                t.g2.edge_between(s, d)
            });
            cost += image.map_or(m.edge_del, |f| t.edge_sub(e, f));
        }
        if let Some(k) = target {
            for &(_, l, k_is_source) in &self.adj2[k] {
                if let Some(j) = self.inverse[l] {
                    let (s, d) = if k_is_source { (i, j) } else { (j, i) };
                    if t.g1.edge_between(s, d).is_none() {
                        cost += m.edge_ins;
                    }
                }
            }
        }
        cost
    }

    /// Vertex-only assignment bound for vertices `from..n1` against the
    /// currently unused G2 vertices.
    fn remainder_bound(&self, from: usize) -> f64 {
        let t = self.tables;
        let m = t.model();
        let rows: Vec<usize> = (from..t.n1()).collect();
        let cols: Vec<usize> = (0..t.n2()).filter(|&k| self.inverse[k].is_none()).collect();
        let n = rows.len() + cols.len();
        if n == 0 {
            return 0.0;
        }
        let costs = padded_cost_matrix(
            rows.len(),
            cols.len(),
            |r, c| t.vertex_sub(rows[r], cols[c]),
            |_| m.vertex_del,
            |_| m.vertex_ins,
        );
        let perm = lsap_min(&costs, n);
        perm.iter().enumerate().map(|(r, &c)| costs[r * n + c]).sum()
    }

    fn slack(&self) -> f64 {
        1e-9 * self.best_value.abs().max(1.0)
    }

    fn offer(&mut self) {
        let value = self.tables.induced_cost(&self.mapping);
        let better = value < self.best_value
            || (value == self.best_value
                && mapping_cmp(&self.mapping, &self.best_mapping, self.tables.n2()).is_lt());
        if better {
            self.best_value = value;
            self.best_mapping.clone_from(&self.mapping);
        }
    }

    fn dfs(&mut self, depth: usize, charged: f64) {
        if self.timed_out {
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(DEADLINE_CHECK_INTERVAL) && Instant::now() >= self.deadline {
            self.timed_out = true;
            return;
        }
        let n2 = self.tables.n2();
        if depth == self.tables.n1() {
            self.offer();
            return;
        }

        let mut children: Vec<(f64, usize)> = (0..n2)
            .filter(|&k| self.inverse[k].is_none())
            .map(|k| (self.step_cost(depth, Some(k)), k))
            .chain([(self.step_cost(depth, None), n2)])
            .collect();
        children.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        for (step, choice) in children {
            let target = (choice < n2).then_some(choice);
            self.mapping[depth] = target;
            if let Some(k) = target {
                self.inverse[k] = Some(depth);
            }
            let bound = charged + step + self.remainder_bound(depth + 1);
            if bound <= self.best_value + self.slack() {
                self.dfs(depth + 1, charged + step);
            }
            if let Some(k) = target {
                self.inverse[k] = None;
            }
            self.mapping[depth] = None;
            if self.timed_out {
                return;
            }
        }
    }
}

pub fn solve_bnb(m: &CostModel, g1: &AttributedGraph, g2: &AttributedGraph, cfg: &SolverConfig) -> Result<SolveResult> {
    let start = Instant::now();
    let inst = Instance::new(m, g1, g2)?;
    let mut search = Search::new(&inst.tables, start + cfg.bnb_time_limit);
    search.dfs(0, 0.0);
    let status = if search.timed_out {
        SolveStatus::Heuristic
    } else {
        SolveStatus::Optimal
    };
    let stats = SolveStats {
        nodes: search.nodes,
        wall_time_secs: start.elapsed().as_secs_f64(),
        ..SolveStats::default()
    };
    inst.finish(&search.best_mapping, status, stats, Route::Edit)
}
