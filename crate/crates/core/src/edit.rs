//! Edit operations, edit paths, and the path induced by a vertex assignment.

use serde::{Deserialize, Serialize};

use crate::assignment::{require_feasible, Assignment};
use crate::error::{Error, Result};
use crate::graph::AttributedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperationKind {
    VertexSubstitution,
    VertexDeletion,
    VertexInsertion,
    EdgeSubstitution,
    EdgeDeletion,
    EdgeInsertion,
}

/// One edit operation. Vertex operands are vertex indices and edge operands
/// are edge indices of the respective graph; the empty side is implicit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum EditOperation {
    VertexSubstitution { from: usize, to: usize },
    VertexDeletion { from: usize },
    VertexInsertion { to: usize },
    EdgeSubstitution { from: usize, to: usize },
    EdgeDeletion { from: usize },
    EdgeInsertion { to: usize },
}

impl EditOperation {
    pub fn kind(&self) -> OperationKind {
        match self {
            EditOperation::VertexSubstitution { .. } => OperationKind::VertexSubstitution,
            EditOperation::VertexDeletion { .. } => OperationKind::VertexDeletion,
            EditOperation::VertexInsertion { .. } => OperationKind::VertexInsertion,
            EditOperation::EdgeSubstitution { .. } => OperationKind::EdgeSubstitution,
            EditOperation::EdgeDeletion { .. } => OperationKind::EdgeDeletion,
            EditOperation::EdgeInsertion { .. } => OperationKind::EdgeInsertion,
        }
    }

    /// Operand in G1 (`None` for insertions).
    pub fn source(&self) -> Option<usize> {
        match *self {
            EditOperation::VertexSubstitution { from, .. }
            | EditOperation::VertexDeletion { from }
            | EditOperation::EdgeSubstitution { from, .. }
            | EditOperation::EdgeDeletion { from } => Some(from),
            _ => None,
        }
    }

    /// Operand in G2 (`None` for deletions).
    pub fn target(&self) -> Option<usize> {
        match *self {
            EditOperation::VertexSubstitution { to, .. }
            | EditOperation::VertexInsertion { to }
            | EditOperation::EdgeSubstitution { to, .. }
            | EditOperation::EdgeInsertion { to } => Some(to),
            _ => None,
        }
    }

    pub fn is_vertex_op(&self) -> bool {
        matches!(
            self.kind(),
            OperationKind::VertexSubstitution | OperationKind::VertexDeletion | OperationKind::VertexInsertion
        )
    }
}

/// A complete edit path: a finite list of operations touching every vertex
/// and edge of both graphs exactly once.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EditPath {
    pub operations: Vec<EditOperation>,
    pub total_cost: f64,
}

impl EditPath {
    pub fn len(&self) -> usize {
        self.operations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operations.is_empty()
    }

    pub fn count(&self, kind: OperationKind) -> usize {
        self.operations.iter().filter(|o| o.kind() == kind).count()
    }

    /// Checks that every vertex and edge of both graphs is the operand of
    /// exactly one operation.
    pub fn validate(&self, g1: &AttributedGraph, g2: &AttributedGraph) -> Result<()> {
        let mut v1 = vec![0u32; g1.vertex_count()];
        let mut v2 = vec![0u32; g2.vertex_count()];
        let mut e1 = vec![0u32; g1.edge_count()];
        let mut e2 = vec![0u32; g2.edge_count()];
        for op in &self.operations {
            let (left, right) = if op.is_vertex_op() {
                (&mut v1, &mut v2)
            } else {
                (&mut e1, &mut e2)
            };
            if let Some(s) = op.source() {
                bump(left, s, "G1 operand")?;
            }
            if let Some(t) = op.target() {
                bump(right, t, "G2 operand")?;
            }
        }
        for (name, counts) in [("G1 vertex", &v1), ("G2 vertex", &v2), ("G1 edge", &e1), ("G2 edge", &e2)] {
            if let Some(i) = counts.iter().position(|&c| c != 1) {
                return Err(Error::InfeasibleAssignment(format!(
                    "{name} {i} is the operand of {} operations",
                    counts[i]
                )));
            }
        }
        Ok(())
    }
}

fn bump(counts: &mut [u32], index: usize, what: &'static str) -> Result<()> {
    let len = counts.len();
    let slot = counts
        .get_mut(index)
        .ok_or(Error::OperandOutOfRange { what, index, len })?;
    *slot += 1;
    Ok(())
}

/// The unique edit path determined by a vertex assignment: edge operations
/// follow the vertex map.
///
/// A G1 edge whose endpoints are both mapped is substituted when the image
/// edge exists and deleted otherwise; an edge with an unmapped endpoint is
/// deleted with it. Every G2 edge that is not the image of a substituted edge
/// is inserted.
pub fn induce_edit_path(a: &Assignment, g1: &AttributedGraph, g2: &AttributedGraph) -> Result<EditPath> {
    require_feasible(a, g1, g2)?;
    let mut ops = Vec::with_capacity(g1.vertex_count() + g2.vertex_count() + g1.edge_count() + g2.edge_count());

    ops.extend(a.pairs().map(|(from, to)| EditOperation::VertexSubstitution { from, to }));
    ops.extend(
        (0..g1.vertex_count())
            .filter(|&i| a.image(i).is_none())
            .map(|from| EditOperation::VertexDeletion { from }),
    );
    ops.extend(
        (0..g2.vertex_count())
            .filter(|&k| a.preimage(k).is_none())
            .map(|to| EditOperation::VertexInsertion { to }),
    );

    let mut covered = vec![false; g2.edge_count()];
    let mut deletions = Vec::new();
    for (from, e) in g1.edges().iter().enumerate() {
        let image = a
            .image(e.source)
            .zip(a.image(e.target))
            .and_then(|(k, l)| g2.edge_between(k, l));
        match image {
            Some(to) => {
                covered[to] = true;
                ops.push(EditOperation::EdgeSubstitution { from, to });
            }
            None => deletions.push(EditOperation::EdgeDeletion { from }),
        }
    }
    ops.extend(deletions);
    ops.extend(
        covered
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(to, _)| EditOperation::EdgeInsertion { to }),
    );

    Ok(EditPath {
        operations: ops,
        total_cost: 0.0,
    })
}
