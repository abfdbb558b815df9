//! Vertex correspondences between two graphs.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;

/// Default bound on the vertex count of either graph for exhaustive search.
pub const DEFAULT_ORACLE_LIMIT: usize = 8;

/// Sparse form of the binary assignment matrix: a partial map from G1 vertex
/// indices to G2 vertex indices together with its inverse.
///
/// [`Assignment::insert`] keeps the map injective. [`Assignment::from_pairs`]
/// accepts arbitrary pairs so that malformed candidates coming from outside
/// can still be represented and rejected by [`check_assignment`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<(usize, usize)>", from = "Vec<(usize, usize)>")]
pub struct Assignment {
    forward: BTreeMap<usize, usize>,
    backward: BTreeMap<usize, usize>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from raw pairs without rejecting conflicts. Later pairs overwrite
    /// earlier ones in each direction independently, so a conflicting input
    /// leaves `forward` and `backward` inconsistent.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut a = Assignment::new();
        for (i, k) in pairs {
            a.forward.insert(i, k);
            a.backward.insert(k, i);
        }
        a
    }

    /// Build from pairs, failing on the first pair that breaks injectivity.
    pub fn try_from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut a = Assignment::new();
        for (i, k) in pairs {
            a.insert(i, k)?;
        }
        Ok(a)
    }

    /// Dense form: entry `i` holds the image of G1 vertex `i`.
    pub fn from_mapping(mapping: &[Option<usize>]) -> Self {
        Self::from_pairs(mapping.iter().enumerate().filter_map(|(i, k)| k.map(|k| (i, k))))
    }

    pub fn insert(&mut self, i: usize, k: usize) -> Result<()> {
        if let Some(&old) = self.forward.get(&i) {
            return Err(Error::InfeasibleAssignment(format!(
                "G1 vertex {i} already mapped to {old}"
            )));
        }
        if let Some(&old) = self.backward.get(&k) {
            return Err(Error::InfeasibleAssignment(format!(
                "G2 vertex {k} already mapped from {old}"
            )));
        }
        self.forward.insert(i, k);
        self.backward.insert(k, i);
        Ok(())
    }

    pub fn image(&self, i: usize) -> Option<usize> {
        self.forward.get(&i).copied()
    }

    pub fn preimage(&self, k: usize) -> Option<usize> {
        self.backward.get(&k).copied()
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// Mapped pairs in increasing G1 order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.forward.iter().map(|(&i, &k)| (i, k))
    }

    pub fn to_mapping(&self, n1: usize) -> Vec<Option<usize>> {
        (0..n1).map(|i| self.image(i)).collect()
    }

    /// Key used for deterministic tie-breaking: one entry per G1 vertex,
    /// the image index or `n2` for a deletion, so deletions sort last.
    pub fn lex_key(&self, n1: usize, n2: usize) -> Vec<usize> {
        mapping_key(&self.to_mapping(n1), n2)
    }

    pub fn lex_cmp(&self, other: &Assignment, n1: usize, n2: usize) -> Ordering {
        self.lex_key(n1, n2).cmp(&other.lex_key(n1, n2))
    }

    fn is_consistent(&self) -> bool {
        self.forward.len() == self.backward.len()
            && self.forward.iter().all(|(i, k)| self.backward.get(k) == Some(i))
    }
}

impl From<Assignment> for Vec<(usize, usize)> {
    fn from(a: Assignment) -> Self {
        a.pairs().collect()
    }
}

impl From<Vec<(usize, usize)>> for Assignment {
    fn from(pairs: Vec<(usize, usize)>) -> Self {
        Assignment::from_pairs(pairs)
    }
}

pub(crate) fn mapping_key(mapping: &[Option<usize>], n2: usize) -> Vec<usize> {
    mapping.iter().map(|k| k.unwrap_or(n2)).collect()
}

pub(crate) fn mapping_cmp(a: &[Option<usize>], b: &[Option<usize>], n2: usize) -> Ordering {
    a.iter()
        .map(|k| k.unwrap_or(n2))
        .cmp(b.iter().map(|k| k.unwrap_or(n2)))
}

/// True iff every mapped index is in range and the map is injective in both
/// directions.
pub fn check_assignment(a: &Assignment, g1: &AttributedGraph, g2: &AttributedGraph) -> bool {
    a.is_consistent()
        && a.forward
            .iter()
            .all(|(&i, &k)| i < g1.vertex_count() && k < g2.vertex_count())
}

/// Fails with [`Error::InfeasibleAssignment`] unless [`check_assignment`] holds.
pub fn require_feasible(a: &Assignment, g1: &AttributedGraph, g2: &AttributedGraph) -> Result<()> {
    if check_assignment(a, g1, g2) {
        Ok(())
    } else {
        Err(Error::InfeasibleAssignment(format!("{:?}", a.forward)))
    }
}

pub fn check_size(n1: usize, n2: usize, limit: usize) -> Result<()> {
    if n1 > limit || n2 > limit {
        Err(Error::SizeLimit { n1, n2, limit })
    } else {
        Ok(())
    }
}

/// Every injective partial map from G1 to G2, including the empty one.
///
/// Output follows lexicographic order of [`Assignment::lex_key`], so the
/// identity-like maps come first and the empty assignment comes last.
pub fn enumerate_assignments(
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    limit: usize,
) -> Result<impl Iterator<Item = Assignment>> {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    check_size(n1, n2, limit)?;
    Ok(MappingEnumerator::new(n1, n2).map(|m| Assignment::from_mapping(&m)))
}

/// Depth-first enumerator over dense mappings. Vertex `i` takes the values
/// `0..n2` (unused ones only) and then `None`.
#[derive(Debug, Clone)]
pub struct MappingEnumerator {
    n2: usize,
    // choice[i] in 0..=n2, n2 meaning "deleted"
    choice: Vec<usize>,
    used: Vec<bool>,
    started: bool,
    done: bool,
    fixed: usize,
}

impl MappingEnumerator {
    pub fn new(n1: usize, n2: usize) -> Self {
        MappingEnumerator {
            n2,
            choice: vec![0; n1],
            used: vec![false; n2],
            started: false,
            done: false,
            fixed: 0,
        }
    }

    /// Enumerate only mappings whose first G1 vertex takes `first`
    /// (`None` = deleted). Used to split the search space into independent
    /// chunks.
    pub fn with_first(n1: usize, n2: usize, first: Option<usize>) -> Self {
        let mut e = Self::new(n1, n2);
        if n1 > 0 {
            let c = first.unwrap_or(n2);
            assert!(c <= n2, "first choice out of range");
            e.choice[0] = c;
            if c < n2 {
                e.used[c] = true;
            }
            e.fixed = 1;
        }
        e
    }

    fn current(&self) -> Vec<Option<usize>> {
        self.choice
            .iter()
            .map(|&c| if c < self.n2 { Some(c) } else { None })
            .collect()
    }

    // Smallest admissible value >= start for position i, or None.
    fn next_value(&self, start: usize) -> Option<usize> {
        (start..self.n2).find(|&k| !self.used[k]).or(if start <= self.n2 { Some(self.n2) } else { None })
    }

    fn set(&mut self, i: usize, c: usize) {
        self.choice[i] = c;
        if c < self.n2 {
            self.used[c] = true;
        }
    }

    fn unset(&mut self, i: usize) {
        let c = self.choice[i];
        if c < self.n2 {
            self.used[c] = false;
        }
    }

    fn fill_from(&mut self, from: usize) {
        for i in from..self.choice.len() {
            let c = self.next_value(0).expect("the deleted choice is always available");
            self.set(i, c);
        }
    }
}

impl Iterator for MappingEnumerator {
    type Item = Vec<Option<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_from(self.fixed);
            return Some(self.current());
        }
        // Advance the deepest position that still has a larger admissible value.
        let mut i = self.choice.len();
        while i > self.fixed {
            i -= 1;
            self.unset(i);
            if let Some(c) = self.next_value(self.choice[i] + 1) {
                self.set(i, c);
                self.fill_from(i + 1);
                return Some(self.current());
            }
        }
        self.done = true;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    fn graph(n: usize) -> AttributedGraph {
        let vertices = (0..n)
            .map(|i| Vertex {
                id: i.to_string(),
                attrs: vec![],
            })
            .collect();
        AttributedGraph::new(true, vertices, vec![]).unwrap()
    }

    #[test]
    fn empty_assignment_is_feasible() {
        assert!(check_assignment(&Assignment::new(), &graph(3), &graph(2)));
        assert!(check_assignment(&Assignment::new(), &graph(0), &graph(0)));
    }

    #[test]
    fn shared_target_is_infeasible() {
        let a = Assignment::from_pairs([(0, 0), (1, 0)]);
        assert!(!check_assignment(&a, &graph(2), &graph(2)));
        assert!(Assignment::try_from_pairs([(0, 0), (1, 0)]).is_err());
    }

    #[test]
    fn shared_source_is_infeasible() {
        let a = Assignment::from_pairs([(0, 0), (0, 1)]);
        assert!(!check_assignment(&a, &graph(2), &graph(2)));
    }

    #[test]
    fn permutation_is_feasible() {
        let a = Assignment::from_pairs([(0, 1), (1, 0)]);
        assert!(check_assignment(&a, &graph(2), &graph(2)));
    }

    #[test]
    fn out_of_range_is_infeasible() {
        let a = Assignment::from_pairs([(0, 2)]);
        assert!(!check_assignment(&a, &graph(2), &graph(2)));
        let a = Assignment::from_pairs([(5, 0)]);
        assert!(!check_assignment(&a, &graph(2), &graph(2)));
    }

    #[test]
    fn enumeration_counts() {
        let count = |n1, n2| enumerate_assignments(&graph(n1), &graph(n2), 8).unwrap().count();
        assert_eq!(count(1, 1), 2);
        assert_eq!(count(2, 2), 7);
        assert_eq!(count(0, 4), 1);
        assert_eq!(count(3, 0), 1);
    }

    #[test]
    fn enumeration_is_lexicographic_and_ends_empty() {
        let all: Vec<_> = MappingEnumerator::new(2, 2).collect();
        let keys: Vec<_> = all.iter().map(|m| mapping_key(m, 2)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(all.first().unwrap(), &vec![Some(0), Some(1)]);
        assert_eq!(all.last().unwrap(), &vec![None, None]);
    }

    #[test]
    fn split_enumeration_covers_everything() {
        let whole: Vec<_> = MappingEnumerator::new(3, 3).collect();
        let mut parts = Vec::new();
        for first in (0..3).map(Some).chain([None]) {
            parts.extend(MappingEnumerator::with_first(3, 3, first));
        }
        assert_eq!(whole, parts);
    }

    #[test]
    fn size_limit_enforced() {
        let err = enumerate_assignments(&graph(9), &graph(2), 8).err().unwrap();
        assert_eq!(err.exit_code(), 4);
    }
}
