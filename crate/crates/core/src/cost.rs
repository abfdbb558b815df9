//! Edit-operation costs and the configuration file that describes them.
//!
//! Cost file format (JSON):
//!
//! ```json
//! {
//!   "vertex_sub": { "type": "euclidean", "weight": 1.0, "constant": 0.0 },
//!   "vertex_del": 1.0,
//!   "vertex_ins": 1.0,
//!   "edge_sub":   { "type": "constant", "value": 0.5 },
//!   "edge_del":   1.0,
//!   "edge_ins":   1.0
//! }
//! ```
//!
//! A `euclidean` substitution costs `weight * ||a - b|| + constant`; the
//! shorter attribute vector is padded with zeros when lengths differ.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::edit::{EditOperation, EditPath};
use crate::error::{Error, Result, ValidationError};
use crate::graph::AttributedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SubstitutionCost {
    Euclidean {
        weight: f64,
        #[serde(default)]
        constant: f64,
    },
    Constant {
        value: f64,
    },
}

impl SubstitutionCost {
    pub fn euclidean(weight: f64) -> Self {
        SubstitutionCost::Euclidean { weight, constant: 0.0 }
    }

    pub fn cost(&self, a: &[f64], b: &[f64]) -> f64 {
        match *self {
            SubstitutionCost::Euclidean { weight, constant } => weight * euclidean(a, b) + constant,
            SubstitutionCost::Constant { value } => value,
        }
    }

    /// Whether identical attribute vectors cost zero to substitute.
    pub fn is_metric(&self) -> bool {
        matches!(*self, SubstitutionCost::Euclidean { constant, .. } if constant == 0.0)
    }

    fn validate(&self, name: &'static str) -> Result<(), ValidationError> {
        let ok = match *self {
            SubstitutionCost::Euclidean { weight, constant } => nonneg(weight) && nonneg(constant),
            SubstitutionCost::Constant { value } => nonneg(value),
        };
        ok.then_some(()).ok_or(ValidationError::NegativeCost(name))
    }
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let d = a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0);
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

fn nonneg(x: f64) -> bool {
    x.is_finite() && x >= 0.0
}

/// The six edit-operation cost functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostModel {
    pub vertex_sub: SubstitutionCost,
    pub vertex_del: f64,
    pub vertex_ins: f64,
    pub edge_sub: SubstitutionCost,
    pub edge_del: f64,
    pub edge_ins: f64,
}

impl Default for CostModel {
    /// Euclidean substitutions with unit weight, unit deletions and insertions.
    fn default() -> Self {
        CostModel {
            vertex_sub: SubstitutionCost::euclidean(1.0),
            vertex_del: 1.0,
            vertex_ins: 1.0,
            edge_sub: SubstitutionCost::euclidean(1.0),
            edge_del: 1.0,
            edge_ins: 1.0,
        }
    }
}

impl CostModel {
    pub fn new(
        vertex_sub: SubstitutionCost,
        vertex_del: f64,
        vertex_ins: f64,
        edge_sub: SubstitutionCost,
        edge_del: f64,
        edge_ins: f64,
    ) -> Result<Self, ValidationError> {
        let m = CostModel {
            vertex_sub,
            vertex_del,
            vertex_ins,
            edge_sub,
            edge_del,
            edge_ins,
        };
        m.validate()?;
        Ok(m)
    }

    /// Constant costs everywhere.
    pub fn constant(vertex_sub: f64, vertex_delins: f64, edge_sub: f64, edge_delins: f64) -> Self {
        CostModel {
            vertex_sub: SubstitutionCost::Constant { value: vertex_sub },
            vertex_del: vertex_delins,
            vertex_ins: vertex_delins,
            edge_sub: SubstitutionCost::Constant { value: edge_sub },
            edge_del: edge_delins,
            edge_ins: edge_delins,
        }
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        self.vertex_sub.validate("vertex_sub")?;
        self.edge_sub.validate("edge_sub")?;
        for (name, v) in [
            ("vertex_del", self.vertex_del),
            ("vertex_ins", self.vertex_ins),
            ("edge_del", self.edge_del),
            ("edge_ins", self.edge_ins),
        ] {
            if !nonneg(v) {
                return Err(ValidationError::NegativeCost(name));
            }
        }
        Ok(())
    }

    /// Costs for pure graph matching: deletions and insertions are free.
    pub fn without_deletions(&self) -> Self {
        CostModel {
            vertex_del: 0.0,
            vertex_ins: 0.0,
            edge_del: 0.0,
            edge_ins: 0.0,
            ..*self
        }
    }

    /// Metric substitutions and equal deletion/insertion costs, which makes
    /// the edit distance symmetric.
    pub fn is_symmetric(&self) -> bool {
        self.vertex_del == self.vertex_ins && self.edge_del == self.edge_ins
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: CostModel = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cost serialization is infallible")
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn vertex_substitution(&self, g1: &AttributedGraph, i: usize, g2: &AttributedGraph, k: usize) -> f64 {
        self.vertex_sub.cost(&g1.vertices()[i].attrs, &g2.vertices()[k].attrs)
    }

    pub fn edge_substitution(&self, g1: &AttributedGraph, e: usize, g2: &AttributedGraph, f: usize) -> f64 {
        self.edge_sub.cost(&g1.edges()[e].attrs, &g2.edges()[f].attrs)
    }
}

fn operand(what: &'static str, index: usize, len: usize) -> Result<usize> {
    if index < len {
        Ok(index)
    } else {
        Err(Error::OperandOutOfRange { what, index, len })
    }
}

/// Cost of a single edit operation.
pub fn operation_cost(m: &CostModel, o: &EditOperation, g1: &AttributedGraph, g2: &AttributedGraph) -> Result<f64> {
    let (nv1, nv2, ne1, ne2) = (g1.vertex_count(), g2.vertex_count(), g1.edge_count(), g2.edge_count());
    Ok(match *o {
        EditOperation::VertexSubstitution { from, to } => {
            let i = operand("G1 vertex", from, nv1)?;
            let k = operand("G2 vertex", to, nv2)?;
            m.vertex_substitution(g1, i, g2, k)
        }
        EditOperation::VertexDeletion { from } => {
            operand("G1 vertex", from, nv1)?;
            m.vertex_del
        }
        EditOperation::VertexInsertion { to } => {
            operand("G2 vertex", to, nv2)?;
            m.vertex_ins
        }
        EditOperation::EdgeSubstitution { from, to } => {
            let e = operand("G1 edge", from, ne1)?;
            let f = operand("G2 edge", to, ne2)?;
            m.edge_substitution(g1, e, g2, f)
        }
        EditOperation::EdgeDeletion { from } => {
            operand("G1 edge", from, ne1)?;
            m.edge_del
        }
        EditOperation::EdgeInsertion { to } => {
            operand("G2 edge", to, ne2)?;
            m.edge_ins
        }
    })
}

/// Sums the operation costs of `p` and stores the total in `p.total_cost`.
pub fn edit_path_cost(m: &CostModel, p: &mut EditPath, g1: &AttributedGraph, g2: &AttributedGraph) -> Result<f64> {
    let mut total = 0.0;
    for o in &p.operations {
        total += operation_cost(m, o, g1, g2)?;
    }
    p.total_cost = total;
    Ok(total)
}

/// Cost of deleting all of G1 and inserting all of G2.
pub fn compute_gamma(m: &CostModel, g1: &AttributedGraph, g2: &AttributedGraph) -> f64 {
    g1.vertex_count() as f64 * m.vertex_del
        + g2.vertex_count() as f64 * m.vertex_ins
        + g1.edge_count() as f64 * m.edge_del
        + g2.edge_count() as f64 * m.edge_ins
}

/// Precomputed cost tables for fast evaluation of induced edit paths over a
/// dense mapping (`mapping[i]` is the image of G1 vertex `i`).
#[derive(Debug, Clone)]
pub struct CostTables<'a> {
    pub(crate) g1: &'a AttributedGraph,
    pub(crate) g2: &'a AttributedGraph,
    pub(crate) model: CostModel,
    vertex_sub: Vec<f64>,
    edge_sub: Vec<f64>,
}

impl<'a> CostTables<'a> {
    pub fn new(model: &CostModel, g1: &'a AttributedGraph, g2: &'a AttributedGraph) -> Self {
        let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
        let mut vertex_sub = Vec::with_capacity(n1 * n2);
        for i in 0..n1 {
            for k in 0..n2 {
                vertex_sub.push(model.vertex_substitution(g1, i, g2, k));
            }
        }
        let (m1, m2) = (g1.edge_count(), g2.edge_count());
        let mut edge_sub = Vec::with_capacity(m1 * m2);
        for e in 0..m1 {
            for f in 0..m2 {
                edge_sub.push(model.edge_substitution(g1, e, g2, f));
            }
        }
        CostTables {
            g1,
            g2,
            model: *model,
            vertex_sub,
            edge_sub,
        }
    }

    pub fn n1(&self) -> usize {
        self.g1.vertex_count()
    }

    pub fn n2(&self) -> usize {
        self.g2.vertex_count()
    }

    pub fn model(&self) -> &CostModel {
        &self.model
    }

    #[inline]
    pub fn vertex_sub(&self, i: usize, k: usize) -> f64 {
        self.vertex_sub[i * self.g2.vertex_count() + k]
    }

    #[inline]
    pub fn edge_sub(&self, e: usize, f: usize) -> f64 {
        self.edge_sub[e * self.g2.edge_count() + f]
    }

    /// Cost of the edit path induced by `mapping`. The mapping must be
    /// injective; this is not rechecked.
    pub fn induced_cost(&self, mapping: &[Option<usize>]) -> f64 {
        let m = &self.model;
        let n2 = self.n2();
        let mut inverse = vec![None; n2];
        let mut total = 0.0;
        for (i, image) in mapping.iter().enumerate() {
            match *image {
                Some(k) => {
                    inverse[k] = Some(i);
                    total += self.vertex_sub(i, k);
                }
                None => total += m.vertex_del,
            }
        }
        for pre in &inverse {
            if pre.is_none() {
                total += m.vertex_ins;
            }
        }
        for (e, edge) in self.g1.edges().iter().enumerate() {
            let image = mapping[edge.source]
                .zip(mapping[edge.target])
                .and_then(|(k, l)| self.g2.edge_between(k, l));
            total += match image {
                Some(f) => self.edge_sub(e, f),
                None => m.edge_del,
            };
        }
        for edge in self.g2.edges() {
            let covered = inverse[edge.source]
                .zip(inverse[edge.target])
                .and_then(|(i, j)| self.g1.edge_between(i, j))
                .is_some();
            if !covered {
                total += m.edge_ins;
            }
        }
        total
    }
}
