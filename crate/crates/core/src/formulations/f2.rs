//! Substitution-only integer linear program for the edit distance.
//!
//! Variables are `y[i,k]` (vertex `i` of G1 substituted by vertex `k` of G2)
//! and `z[e,f]` (edge `e` substituted by edge `f`; for undirected graphs one
//! variable per orientation). Deletion and insertion variables are
//! eliminated and folded into the constant `gamma`; they can be recovered
//! with [`reconstruct_full_solution`].
//!
//! Constraint families, all of the form `lhs <= rhs`:
//!
//! * `match_g1_i`: `sum_k y[i,k] <= 1`
//! * `match_g2_k`: `sum_i y[i,k] <= 1`
//! * `head_e_k`:   sum of `z` of edge `e` whose head lands on `k`, `<= y[src(e),k]`
//! * `tail_e_l`:   sum of `z` of edge `e` whose tail lands on `l`, `<= y[dst(e),l]`
//! * `orient_e_f`: `z[e,f,straight] + z[e,f,crossed] <= 1` (undirected only)
//!
//! Head and tail rows are only emitted when their sum is non-empty; an empty
//! row `0 <= y` is always satisfied.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::assignment::Assignment;
use crate::cost::{compute_gamma, CostModel};
use crate::error::{Error, Result, ValidationError};
use crate::graph::AttributedGraph;
use crate::similarity::Orientation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Index into the row-major `n1 x n2` vertex variables.
    Y(usize),
    /// Index into [`IlpModelF2::z_vars`].
    Z(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstraintFamily {
    MatchG1,
    MatchG2,
    Head,
    Tail,
    Orientation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub name: String,
    pub family: ConstraintFamily,
    pub terms: Vec<(Var, f64)>,
    pub rhs: f64,
}

impl LinearConstraint {
    fn satisfied(&self, value: impl Fn(Var) -> f64) -> bool {
        let lhs: f64 = self.terms.iter().map(|&(v, c)| c * value(v)).sum();
        lhs <= self.rhs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZVar {
    pub e1: usize,
    pub e2: usize,
    pub orientation: Orientation,
    /// `(i, k)`: the vertex pair required for the head of `e1`.
    pub head: (usize, usize),
    /// `(j, l)`: the vertex pair required for the tail of `e1`.
    pub tail: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ModelCounts {
    pub y_vars: usize,
    pub z_vars: usize,
    pub matching_rows: usize,
    pub topological_rows: usize,
    pub orientation_rows: usize,
}

impl ModelCounts {
    pub fn variables(&self) -> usize {
        self.y_vars + self.z_vars
    }

    pub fn constraints(&self) -> usize {
        self.matching_rows + self.topological_rows + self.orientation_rows
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IlpModelF2 {
    n1: usize,
    n2: usize,
    m1: usize,
    m2: usize,
    directed: bool,
    y_cost: Vec<f64>,
    z_vars: Vec<ZVar>,
    z_cost: Vec<f64>,
    gamma: f64,
    constraints: Vec<LinearConstraint>,
}

/// Deletion and insertion flags recovered from a substitution solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullSolution {
    /// `a_i`: G1 vertex deleted.
    pub vertex_deleted: Vec<bool>,
    /// `g_k`: G2 vertex inserted.
    pub vertex_inserted: Vec<bool>,
    /// `b_ij`: G1 edge deleted.
    pub edge_deleted: Vec<bool>,
    /// `h_kl`: G2 edge inserted.
    pub edge_inserted: Vec<bool>,
}

pub fn build_f2(m: &CostModel, g1: &AttributedGraph, g2: &AttributedGraph) -> Result<IlpModelF2> {
    if g1.is_directed() != g2.is_directed() {
        return Err(ValidationError::DirectednessMismatch.into());
    }
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let directed = g1.is_directed();

    let mut y_cost = Vec::with_capacity(n1 * n2);
    for i in 0..n1 {
        for k in 0..n2 {
            y_cost.push(m.vertex_substitution(g1, i, g2, k) - m.vertex_del - m.vertex_ins);
        }
    }

    let orientations: &[Orientation] = if directed {
        &[Orientation::Straight]
    } else {
        &[Orientation::Straight, Orientation::Crossed]
    };
    let mut z_vars = Vec::new();
    let mut z_cost = Vec::new();
    for (e1, a) in g1.edges().iter().enumerate() {
        for (e2, b) in g2.edges().iter().enumerate() {
            let d = m.edge_substitution(g1, e1, g2, e2) - m.edge_del - m.edge_ins;
            for &orientation in orientations {
                let (k, l) = match orientation {
                    Orientation::Straight => (b.source, b.target),
                    Orientation::Crossed => (b.target, b.source),
                };
                z_vars.push(ZVar {
                    e1,
                    e2,
                    orientation,
                    head: (a.source, k),
                    tail: (a.target, l),
                });
                z_cost.push(d);
            }
        }
    }

    let y = |i: usize, k: usize| Var::Y(i * n2 + k);
    let mut constraints = Vec::new();
    for i in 0..n1 {
        constraints.push(LinearConstraint {
            name: format!("match_g1_{i}"),
            family: ConstraintFamily::MatchG1,
            terms: (0..n2).map(|k| (y(i, k), 1.0)).collect(),
            rhs: 1.0,
        });
    }
    for k in 0..n2 {
        constraints.push(LinearConstraint {
            name: format!("match_g2_{k}"),
            family: ConstraintFamily::MatchG2,
            terms: (0..n1).map(|i| (y(i, k), 1.0)).collect(),
            rhs: 1.0,
        });
    }

    // z variables are laid out edge-major, so each G1 edge owns a contiguous block.
    let per_edge = g2.edge_count() * orientations.len();
    for (e1, a) in g1.edges().iter().enumerate() {
        let block = e1 * per_edge..(e1 + 1) * per_edge;
        for (family, prefix, endpoint) in [
            (ConstraintFamily::Head, "head", a.source),
            (ConstraintFamily::Tail, "tail", a.target),
        ] {
            for v in 0..n2 {
                let mut terms: Vec<(Var, f64)> = block
                    .clone()
                    .filter(|&z| {
                        let zv = &z_vars[z];
                        let landing = if family == ConstraintFamily::Head { zv.head.1 } else { zv.tail.1 };
                        landing == v
                    })
                    .map(|z| (Var::Z(z), 1.0))
                    .collect();
                if terms.is_empty() {
                    continue;
                }
                terms.push((y(endpoint, v), -1.0));
                constraints.push(LinearConstraint {
                    name: format!("{prefix}_{e1}_{v}"),
                    family,
                    terms,
                    rhs: 0.0,
                });
            }
        }
    }
    if !directed {
        for z in (0..z_vars.len()).step_by(2) {
            let zv = &z_vars[z];
            constraints.push(LinearConstraint {
                name: format!("orient_{}_{}", zv.e1, zv.e2),
                family: ConstraintFamily::Orientation,
                terms: vec![(Var::Z(z), 1.0), (Var::Z(z + 1), 1.0)],
                rhs: 1.0,
            });
        }
    }

    Ok(IlpModelF2 {
        n1,
        n2,
        m1: g1.edge_count(),
        m2: g2.edge_count(),
        directed,
        y_cost,
        z_vars,
        z_cost,
        gamma: compute_gamma(m, g1, g2),
        constraints,
    })
}

impl IlpModelF2 {
    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn z_vars(&self) -> &[ZVar] {
        &self.z_vars
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    /// Objective coefficient of `y[i,k]`: `c(i->k) - c(i->eps) - c(eps->k)`.
    pub fn y_cost(&self, i: usize, k: usize) -> f64 {
        self.y_cost[i * self.n2 + k]
    }

    pub fn z_cost(&self, z: usize) -> f64 {
        self.z_cost[z]
    }

    pub fn var_name(&self, v: Var) -> String {
        match v {
            Var::Y(idx) => format!("y_{}_{}", idx / self.n2, idx % self.n2),
            Var::Z(z) => {
                let zv = &self.z_vars[z];
                format!("z_{}_{}_{}_{}", zv.head.0, zv.tail.0, zv.head.1, zv.tail.1)
            }
        }
    }

    pub fn counts(&self) -> ModelCounts {
        let mut c = ModelCounts {
            y_vars: self.y_cost.len(),
            z_vars: self.z_vars.len(),
            ..ModelCounts::default()
        };
        for row in &self.constraints {
            match row.family {
                ConstraintFamily::MatchG1 | ConstraintFamily::MatchG2 => c.matching_rows += 1,
                ConstraintFamily::Head | ConstraintFamily::Tail => c.topological_rows += 1,
                ConstraintFamily::Orientation => c.orientation_rows += 1,
            }
        }
        c
    }

    /// Objective `C'(y, z)` including `gamma`.
    pub fn objective(&self, y: &Assignment, z: &BTreeSet<usize>) -> f64 {
        let mut value = self.gamma;
        for (i, k) in y.pairs() {
            value += self.y_cost(i, k);
        }
        for &zi in z {
            value += self.z_cost[zi];
        }
        value
    }

    /// The `z` selection of the edit path induced by `y`: every edge pair whose
    /// head and tail vertex pairs are both assigned.
    pub fn induced_z(&self, y: &Assignment) -> BTreeSet<usize> {
        self.z_vars
            .iter()
            .enumerate()
            .filter(|(_, zv)| y.image(zv.head.0) == Some(zv.head.1) && y.image(zv.tail.0) == Some(zv.tail.1))
            .map(|(z, _)| z)
            .collect()
    }

    fn in_range(&self, y: &Assignment, z: &BTreeSet<usize>) -> bool {
        y.pairs().all(|(i, k)| i < self.n1 && k < self.n2) && z.iter().all(|&zi| zi < self.z_vars.len())
    }

    fn value_of<'a>(&self, y: &'a Assignment, z: &'a BTreeSet<usize>) -> impl Fn(Var) -> f64 + 'a {
        let n2 = self.n2;
        move |v| match v {
            Var::Y(idx) => f64::from(u8::from(y.image(idx / n2) == Some(idx % n2))),
            Var::Z(zi) => f64::from(u8::from(z.contains(&zi))),
        }
    }

    /// All written constraint rows (matching, grouped topological,
    /// orientation).
    pub fn check_grouped(&self, y: &Assignment, z: &BTreeSet<usize>) -> bool {
        // Rows only see y through indicator values, so a malformed map has to
        // be rejected up front.
        if !self.in_range(y, z) || !y_is_injective(y) {
            return false;
        }
        let value = self.value_of(y, z);
        self.constraints.iter().all(|row| row.satisfied(&value))
    }

    /// The pairwise topological form: each selected `z` requires both its
    /// head and tail vertex pairs.
    pub fn check_pairwise(&self, y: &Assignment, z: &BTreeSet<usize>) -> bool {
        if !self.in_range(y, z) || !y_is_injective(y) {
            return false;
        }
        z.iter().all(|&zi| {
            let zv = &self.z_vars[zi];
            y.image(zv.head.0) == Some(zv.head.1) && y.image(zv.tail.0) == Some(zv.tail.1)
        })
    }
}

fn y_is_injective(y: &Assignment) -> bool {
    let mut targets = BTreeSet::new();
    y.pairs().all(|(i, k)| targets.insert(k) && y.preimage(k) == Some(i))
}

/// True iff `(y, z)` satisfies the matching and topological constraints of the
/// model. Both the grouped and the pairwise topological forms are checked.
pub fn check_f2_feasible(model: &IlpModelF2, y: &Assignment, z: &BTreeSet<usize>) -> bool {
    model.check_grouped(y, z) && model.check_pairwise(y, z)
}

/// Recover deletion/insertion flags from a feasible `(y, z)`.
pub fn reconstruct_full_solution(model: &IlpModelF2, y: &Assignment, z: &BTreeSet<usize>) -> Result<FullSolution> {
    if !check_f2_feasible(model, y, z) {
        return Err(Error::InfeasibleAssignment("(y, z) violates the F2 constraints".into()));
    }
    let mut e1_used = vec![0u32; model.m1];
    let mut e2_used = vec![0u32; model.m2];
    for &zi in z {
        let zv = &model.z_vars[zi];
        e1_used[zv.e1] += 1;
        e2_used[zv.e2] += 1;
    }
    if e1_used.iter().chain(&e2_used).any(|&c| c > 1) {
        return Err(Error::InfeasibleAssignment("an edge is substituted twice".into()));
    }
    Ok(FullSolution {
        vertex_deleted: (0..model.n1).map(|i| y.image(i).is_none()).collect(),
        vertex_inserted: (0..model.n2).map(|k| y.preimage(k).is_none()).collect(),
        edge_deleted: e1_used.iter().map(|&c| c == 0).collect(),
        edge_inserted: e2_used.iter().map(|&c| c == 0).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, Vertex};

    fn graph(n: usize, edges: &[(usize, usize)], directed: bool) -> AttributedGraph {
        let vertices = (0..n)
            .map(|i| Vertex {
                id: i.to_string(),
                attrs: vec![i as f64],
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
    fn single_vertex_counts() {
        let g = graph(1, &[], true);
        let c = build_f2(&CostModel::default(), &g, &g).unwrap().counts();
        assert_eq!(
            c,
            ModelCounts {
                y_vars: 1,
                z_vars: 0,
                matching_rows: 2,
                topological_rows: 0,
                orientation_rows: 0
            }
        );
    }

    #[test]
    fn two_vertex_directed_counts() {
        let g = graph(2, &[(0, 1)], true);
        let c = build_f2(&CostModel::default(), &g, &g).unwrap().counts();
        assert_eq!((c.y_vars, c.z_vars, c.matching_rows, c.topological_rows), (4, 1, 4, 2));
    }

    #[test]
    fn empty_second_graph() {
        let g1 = graph(3, &[(0, 1)], true);
        let g2 = AttributedGraph::empty(true);
        let model = build_f2(&CostModel::default(), &g1, &g2).unwrap();
        assert_eq!(model.counts().variables(), 0);
        assert_eq!(model.gamma(), 4.0);
        assert_eq!(model.objective(&Assignment::new(), &BTreeSet::new()), 4.0);
    }

    #[test]
    fn feasibility_examples() {
        let g = graph(2, &[(0, 1)], true);
        let model = build_f2(&CostModel::default(), &g, &g).unwrap();
        assert!(check_f2_feasible(&model, &Assignment::new(), &BTreeSet::new()));
        // z selects (e0 -> e0) while u0 maps to v1
        let y = Assignment::from_pairs([(0, 1)]);
        assert!(!check_f2_feasible(&model, &y, &BTreeSet::from([0])));
        let id = Assignment::from_pairs([(0, 0), (1, 1)]);
        let z = model.induced_z(&id);
        assert_eq!(z, BTreeSet::from([0]));
        assert!(check_f2_feasible(&model, &id, &z));
    }

    #[test]
    fn infeasible_y_rejected() {
        let g = graph(2, &[], true);
        let model = build_f2(&CostModel::default(), &g, &g).unwrap();
        let y = Assignment::from_pairs([(0, 0), (1, 0)]);
        assert!(!check_f2_feasible(&model, &y, &BTreeSet::new()));
    }

    #[test]
    fn reconstruct_examples() {
        let g = graph(2, &[(0, 1)], false);
        let model = build_f2(&CostModel::default(), &g, &g).unwrap();
        let full = reconstruct_full_solution(&model, &Assignment::new(), &BTreeSet::new()).unwrap();
        assert!(full.vertex_deleted.iter().chain(&full.vertex_inserted).all(|&f| f));
        assert!(full.edge_deleted.iter().chain(&full.edge_inserted).all(|&f| f));

        let id = Assignment::from_pairs([(0, 0), (1, 1)]);
        let full = reconstruct_full_solution(&model, &id, &model.induced_z(&id)).unwrap();
        assert!(full.vertex_deleted.iter().chain(&full.vertex_inserted).all(|&f| !f));
        assert!(full.edge_deleted.iter().chain(&full.edge_inserted).all(|&f| !f));

        let half = Assignment::from_pairs([(1, 0)]);
        let full = reconstruct_full_solution(&model, &half, &BTreeSet::new()).unwrap();
        assert_eq!(full.vertex_deleted, vec![true, false]);
        assert_eq!(full.vertex_inserted, vec![false, true]);

        assert!(reconstruct_full_solution(&model, &Assignment::new(), &BTreeSet::from([0])).is_err());
    }

    #[test]
    fn undirected_orientation_rows() {
        let g = graph(3, &[(0, 1), (1, 2)], false);
        let model = build_f2(&CostModel::default(), &g, &g).unwrap();
        let c = model.counts();
        assert_eq!(c.z_vars, 8);
        assert_eq!(c.orientation_rows, 4);
        // both orientations at once is infeasible
        let both = BTreeSet::from([0, 1]);
        assert!(!check_f2_feasible(&model, &Assignment::from_pairs([(0, 0), (1, 1)]), &both));
    }

    #[test]
    fn objective_coefficients() {
        let g1 = graph(2, &[], true);
        let g2 = graph(2, &[], true);
        let model = build_f2(&CostModel::default(), &g1, &g2).unwrap();
        // |i - k| - 2
        assert_eq!(model.y_cost(0, 0), -2.0);
        assert_eq!(model.y_cost(0, 1), -1.0);
        assert_eq!(model.var_name(Var::Y(3)), "y_1_1");
    }
}
