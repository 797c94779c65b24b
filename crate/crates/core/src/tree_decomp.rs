//! Rooted tree decompositions with simultaneous width and depth.

use std::fmt;

use crate::bitset::VertexSet;
use crate::error::{invalid, Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::tree::{NodeId, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub tree: RootedTree,
    pub host: Graph,
    pub bags: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    BagCountMismatch { nodes: usize, bags: usize },
    UnknownVertex { node: NodeId, vertex: Vertex },
    /// (T1) no bag holds both endpoints of the edge.
    UncoveredEdge(EdgeId),
    /// (T1) the vertex occurs in no bag.
    UncoveredVertex(Vertex),
    /// (T2) the nodes whose bags contain the vertex are not connected.
    DisconnectedTrace(Vertex),
}

/// Bags and vertices are shown 1-based, as in `.td` files.
impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::BagCountMismatch { nodes, bags } => {
                write!(f, "{nodes} tree nodes but {bags} bags")
            }
            TdViolation::UnknownVertex { node, vertex } => {
                write!(f, "bag {} holds unknown vertex {}", node + 1, vertex + 1)
            }
            TdViolation::UncoveredEdge(e) => write!(f, "T1: edge {e} is not covered by any bag"),
            TdViolation::UncoveredVertex(v) => write!(f, "T1: vertex {} occurs in no bag", v + 1),
            TdViolation::DisconnectedTrace(v) => write!(f, "T2: trace of vertex {} is disconnected", v + 1),
        }
    }
}

impl TreeDecomposition {
    pub fn new(tree: RootedTree, host: Graph, bags: Vec<VertexSet>) -> Self {
        TreeDecomposition { tree, host, bags }
    }

    /// All (T1)/(T2) violations; empty iff the decomposition is valid.
    pub fn validate(&self) -> Vec<TdViolation> {
        let mut out = Vec::new();
        if self.bags.len() != self.tree.len() {
            out.push(TdViolation::BagCountMismatch {
                nodes: self.tree.len(),
                bags: self.bags.len(),
            });
            return out;
        }
        let n = self.host.vertex_count();
        for (t, bag) in self.bags.iter().enumerate() {
            if let Some(v) = bag.iter().find(|&v| v >= n) {
                out.push(TdViolation::UnknownVertex { node: t, vertex: v });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (id, e) in self.host.edges().iter().enumerate() {
            let ends = e.endpoints();
            if !self.bags.iter().any(|b| ends.is_subset(b)) {
                out.push(TdViolation::UncoveredEdge(id));
            }
        }
        for v in 0..n {
            let member: Vec<bool> = self.bags.iter().map(|b| b.contains(v)).collect();
            if !member.iter().any(|&m| m) {
                out.push(TdViolation::UncoveredVertex(v));
            } else if !self.tree.is_connected_subset(&member) {
                out.push(TdViolation::DisconnectedTrace(v));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Largest bag size minus one; `-1` when every bag is empty.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64).max().unwrap_or(0) - 1
    }

    /// Maximum over leaves of the number of distinct vertices on the
    /// root-to-leaf path of bags.
    pub fn depth(&self) -> usize {
        self.tree
            .leaves()
            .into_iter()
            .map(|l| self.path_union(l).len())
            .max()
            .unwrap_or(0)
    }

    pub fn path_union(&self, t: NodeId) -> VertexSet {
        let mut acc = VertexSet::new();
        for s in self.tree.path_from_root(t) {
            acc.union_with(&self.bags[s]);
        }
        acc
    }

    /// Checks that the nodes whose bags meet `u` form a subtree. `u` must be
    /// connected in the host.
    pub fn check_connected_trace(&self, u: &VertexSet) -> Result<bool> {
        if u.is_empty() || !is_connected_in(&self.host, u) {
            return Err(Error::Precondition(
                "vertex set is not connected in the host".into(),
            ));
        }
        let member: Vec<bool> = self.bags.iter().map(|b| b.intersects(u)).collect();
        Ok(self.tree.is_connected_subset(&member))
    }

    /// Greedy tightening: visit (node, vertex) pairs in increasing order and
    /// drop the vertex whenever the result stays valid; repeat to a fixpoint.
    pub fn tighten(&self) -> Result<TreeDecomposition> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(invalid(format!("cannot tighten an invalid decomposition: {}", violations[0])));
        }
        let mut td = self.clone();
        loop {
            let mut changed = false;
            for t in td.tree.nodes() {
                let candidates: Vec<Vertex> = td.bags[t].to_vec();
                for v in candidates {
                    if td.can_drop(t, v) {
                        td.bags[t].remove(v);
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok(td);
            }
        }
    }

    /// Whether removing `v` from bag `t` keeps (T1) and (T2), assuming the
    /// decomposition is currently valid.
    fn can_drop(&self, t: NodeId, v: Vertex) -> bool {
        // T2: t must be a leaf of the trace T_v (or T_v loses nothing else).
        let trace_neighbors = self
            .tree
            .neighbors(t)
            .into_iter()
            .filter(|&s| self.bags[s].contains(v))
            .count();
        if trace_neighbors > 1 {
            return false;
        }
        if trace_neighbors == 0 {
            // t is the only bag with v
            return false;
        }
        for e in self.host.incident(v) {
            let ends = self.host.edge(e).endpoints();
            let covered_elsewhere = self
                .bags
                .iter()
                .enumerate()
                .any(|(s, b)| s != t && ends.is_subset(b));
            if !covered_elsewhere {
                return false;
            }
        }
        true
    }
}

/// Connectivity of the subgraph induced by `u`.
pub fn is_connected_in(g: &Graph, u: &VertexSet) -> bool {
    let Some(start) = u.first() else {
        return true;
    };
    let mut seen = VertexSet::singleton(start);
    let mut stack = vec![start];
    while let Some(a) = stack.pop() {
        for e in g.incident(a) {
            let b = g.edge(e).other(a);
            if u.contains(b) && seen.insert(b) {
                stack.push(b);
            }
        }
    }
    seen == *u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    fn p3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn path_td(bags: Vec<VertexSet>) -> TreeDecomposition {
        let parents = (0..bags.len()).map(|i| i.saturating_sub(1)).collect();
        TreeDecomposition::new(RootedTree::from_parents(parents).unwrap(), p3(), bags)
    }

    #[test]
    fn validate_examples() {
        assert!(path_td(vec![vs(&[0, 1]), vs(&[1, 2])]).is_valid());
        let bad = path_td(vec![vs(&[0, 1]), vs(&[2])]);
        assert_eq!(bad.validate(), vec![TdViolation::UncoveredEdge(1)]);
        // star rooted at the middle node whose bag omits a
        let tree = RootedTree::from_parents(vec![0, 0, 0]).unwrap();
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let td = TreeDecomposition::new(tree, g, vec![vs(&[1]), vs(&[0, 1]), vs(&[0, 2])]);
        assert!(td.validate().contains(&TdViolation::DisconnectedTrace(0)));
    }

    #[test]
    fn width_and_depth() {
        let tree = RootedTree::from_parents(vec![0, 0, 0]).unwrap();
        let td = TreeDecomposition::new(tree, p3(), vec![vs(&[1]), vs(&[0, 1]), vs(&[1, 2])]);
        assert!(td.is_valid());
        assert_eq!(td.width(), 1);
        assert_eq!(td.depth(), 2);

        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let td = TreeDecomposition::new(RootedTree::singleton(), k3, vec![vs(&[0, 1, 2])]);
        assert_eq!((td.width(), td.depth()), (2, 3));

        let td = TreeDecomposition::new(RootedTree::singleton(), Graph::new(1), vec![vs(&[0])]);
        assert_eq!((td.width(), td.depth()), (0, 1));
    }

    #[test]
    fn connected_trace() {
        let td = path_td(vec![vs(&[0, 1]), vs(&[1, 2])]);
        assert!(td.check_connected_trace(&vs(&[0])).unwrap());
        assert!(td.check_connected_trace(&vs(&[0, 1])).unwrap());
        assert!(matches!(
            td.check_connected_trace(&vs(&[0, 2])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn tighten_examples() {
        let tight = path_td(vec![vs(&[0, 1]), vs(&[1, 2])]);
        assert_eq!(tight.tighten().unwrap(), tight);

        let loose = path_td(vec![vs(&[0, 1, 2]), vs(&[1, 2])]);
        let t = loose.tighten().unwrap();
        assert_eq!(t.bags, vec![vs(&[0, 1]), vs(&[1, 2])]);
        assert!(t.is_valid());

        // duplicated bag in the middle of a path
        let dup = path_td(vec![vs(&[0, 1]), vs(&[0, 1]), vs(&[1, 2])]);
        let t = dup.tighten().unwrap();
        assert!(t.is_valid());
        // the root copy is visited first and empties out
        assert_eq!(t.bags, vec![vs(&[]), vs(&[0, 1]), vs(&[1, 2])]);
        assert_eq!(t.tighten().unwrap(), t);
    }
}
