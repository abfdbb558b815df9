//! Attributed graphs and their JSON file format.
//!
//! A graph file looks like
//!
//! ```json
//! {
//!   "directed": false,
//!   "vertices": [ { "id": "a", "attrs": [0.0, 1.5] }, { "id": "b", "attrs": [2.0, 0.0] } ],
//!   "edges":    [ { "source": "a", "target": "b", "attrs": [1.0] } ]
//! }
//! ```
//!
//! Edge endpoints refer to vertex ids. `attrs` may be omitted and defaults to
//! the empty vector. Within one graph all vertex attribute vectors share a
//! length, and so do all edge attribute vectors.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationError};

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub id: String,
    pub attrs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub attrs: Vec<f64>,
}

impl Edge {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.source, self.target)
    }
}

/// An immutable, validated attributed graph.
///
/// Invariants: unique vertex ids, endpoints in range, no self-loops, no
/// parallel edges, and undirected edges stored with `source < target`.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributedGraph {
    directed: bool,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    edge_index: HashMap<(usize, usize), usize>,
}

impl AttributedGraph {
    pub fn new(directed: bool, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, ValidationError> {
        let mut seen = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.id.as_str(), i).is_some() {
                return Err(ValidationError::DuplicateVertex(v.id.clone()));
            }
        }
        check_attrs(vertices.iter().map(|v| &v.attrs), "vertex")?;
        check_attrs(edges.iter().map(|e| &e.attrs), "edge")?;

        let n = vertices.len();
        let mut stored = Vec::with_capacity(edges.len());
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (idx, mut e) in edges.into_iter().enumerate() {
            for index in [e.source, e.target] {
                if index >= n {
                    return Err(ValidationError::BadEndpoint {
                        edge: idx,
                        index,
                        vertices: n,
                    });
                }
            }
            if e.source == e.target {
                return Err(ValidationError::SelfLoop {
                    edge: idx,
                    vertex: e.source,
                });
            }
            if !directed && e.source > e.target {
                std::mem::swap(&mut e.source, &mut e.target);
            }
            if edge_index.insert((e.source, e.target), idx).is_some() {
                return Err(ValidationError::ParallelEdge {
                    edge: idx,
                    from: e.source,
                    to: e.target,
                });
            }
            stored.push(e);
        }

        Ok(AttributedGraph {
            directed,
            vertices,
            edges: stored,
            edge_index,
        })
    }

    pub fn empty(directed: bool) -> Self {
        AttributedGraph {
            directed,
            vertices: Vec::new(),
            edges: Vec::new(),
            edge_index: HashMap::new(),
        }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, index: usize) -> Option<&Vertex> {
        self.vertices.get(index)
    }

    pub fn edge(&self, index: usize) -> Option<&Edge> {
        self.edges.get(index)
    }

    /// Index of the edge joining `a` and `b`. Orientation matters only for
    /// directed graphs.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let key = if self.directed || a < b { (a, b) } else { (b, a) };
        self.edge_index.get(&key).copied()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_graph().map_err(Error::from)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphFile::from(self)).expect("graph serialization is infallible")
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }
}

/// Parse a graph file's contents into a validated graph.
pub fn parse_graph(text: &str) -> Result<AttributedGraph> {
    AttributedGraph::from_json(text)
}

fn check_attrs<'a>(mut attrs: impl Iterator<Item = &'a Vec<f64>>, what: &str) -> Result<(), ValidationError> {
    let Some(first) = attrs.next() else {
        return Ok(());
    };
    let expected = first.len();
    if first.iter().any(|x| !x.is_finite()) {
        return Err(ValidationError::NonFiniteAttribute(format!("{what} 0")));
    }
    for (i, a) in attrs.enumerate() {
        if a.len() != expected {
            return Err(ValidationError::AttributeLength {
                what: format!("{what} {}", i + 1),
                expected,
                found: a.len(),
            });
        }
        if a.iter().any(|x| !x.is_finite()) {
            return Err(ValidationError::NonFiniteAttribute(format!("{what} {}", i + 1)));
        }
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    directed: bool,
    vertices: Vec<VertexRecord>,
    #[serde(default)]
    edges: Vec<EdgeRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRecord {
    id: String,
    #[serde(default)]
    attrs: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    source: String,
    target: String,
    #[serde(default)]
    attrs: Vec<f64>,
}

impl GraphFile {
    fn into_graph(self) -> Result<AttributedGraph, ValidationError> {
        let ids: HashMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (idx, e) in self.edges.iter().enumerate() {
            let lookup = |id: &String| {
                ids.get(id.as_str()).copied().ok_or_else(|| ValidationError::UnknownVertex {
                    edge: idx,
                    id: id.clone(),
                })
            };
            edges.push(Edge {
                source: lookup(&e.source)?,
                target: lookup(&e.target)?,
                attrs: e.attrs.clone(),
            });
        }
        let vertices = self
            .vertices
            .into_iter()
            .map(|v| Vertex { id: v.id, attrs: v.attrs })
            .collect();
        AttributedGraph::new(self.directed, vertices, edges)
    }
}

impl From<&AttributedGraph> for GraphFile {
    fn from(g: &AttributedGraph) -> Self {
        GraphFile {
            directed: g.directed,
            vertices: g
                .vertices
                .iter()
                .map(|v| VertexRecord {
                    id: v.id.clone(),
                    attrs: v.attrs.clone(),
                })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    source: g.vertices[e.source].id.clone(),
                    target: g.vertices[e.target].id.clone(),
                    attrs: e.attrs.clone(),
                })
                .collect(),
        }
    }
}
