//! Pre-tree decompositions: a rooted tree with bags on nodes and edge-set
//! cones on both directions of every tree edge.
//!
//! Axioms checked by [`PreTreeDecomposition::validate`]:
//!
//! * PT1: the root bag is empty and every host component `C` has a root child
//!   whose cone is `E(C)`.
//! * PT2: the cone pointing into a leaf holds at most one edge.
//! * PT3: the local tuple `π_t` partitions `E(host)` and `β(t) ⊇ δ(π_t)`.
//! * PT4: opposite cones of a tree edge are disjoint.
//!
//! An edge is exact when its two cones cover every host edge; the whole
//! decomposition is exact when every edge is and every bag equals `δ(π_t)`.

use std::fmt;

use crate::bitset::{EdgeSet, VertexSet};
use crate::error::{invalid, Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::game::fmt_vertices;
use crate::partitions::{is_partition, partition_boundary, EdgePartition};
use crate::tree::{NodeId, RootedTree};
use crate::tree_decomp::TreeDecomposition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreTreeDecomposition {
    pub tree: RootedTree,
    pub host: Graph,
    pub bags: Vec<VertexSet>,
    /// `down[t] = γ(parent(t), t)`; unused at the root.
    pub down: Vec<EdgeSet>,
    /// `up[t] = γ(t, parent(t))`; unused at the root.
    pub up: Vec<EdgeSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PtdViolation {
    Shape(String),
    RootBagNotEmpty(VertexSet),
    /// PT1: no root child carries exactly the edges of this component.
    MissingComponent(VertexSet),
    /// PT2: the cone into a leaf has more than one edge.
    LeafConeTooLarge { leaf: NodeId, size: usize },
    /// PT3: the local tuple at the node is not a disjoint cover.
    NotAPartition(NodeId),
    /// PT3: a boundary vertex of `π_t` is missing from the bag.
    BagMissesBoundary { node: NodeId, vertex: Vertex },
    /// PT4: the edge lies in both cones of the tree edge.
    OverlappingCones { parent: NodeId, child: NodeId, edge: EdgeId },
}

impl fmt::Display for PtdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PtdViolation::Shape(s) => write!(f, "shape: {s}"),
            PtdViolation::RootBagNotEmpty(b) => write!(f, "PT1: root bag {} is not empty", fmt_vertices(b)),
            PtdViolation::MissingComponent(c) => {
                write!(f, "PT1: no root child covers exactly the component {}", fmt_vertices(c))
            }
            PtdViolation::LeafConeTooLarge { leaf, size } => {
                write!(f, "PT2: cone into leaf {leaf} has {size} edges")
            }
            PtdViolation::NotAPartition(t) => write!(f, "PT3: π_{t} is not a partition"),
            PtdViolation::BagMissesBoundary { node, vertex } => {
                write!(f, "PT3: bag {node} misses boundary vertex {}", vertex + 1)
            }
            PtdViolation::OverlappingCones {
                parent,
                child,
                edge,
            } => write!(f, "PT4: edge {edge} in both cones of {parent}-{child}"),
        }
    }
}

impl PreTreeDecomposition {
    /// A decomposition with only a root and an empty root bag.
    pub fn trivial(host: Graph) -> Self {
        PreTreeDecomposition {
            tree: RootedTree::singleton(),
            host,
            bags: vec![VertexSet::new()],
            down: vec![EdgeSet::new()],
            up: vec![EdgeSet::new()],
        }
    }

    /// Appends a child of `p` with the given bag and cones (down, up).
    pub fn add_child(&mut self, p: NodeId, bag: VertexSet, down: EdgeSet, up: EdgeSet) -> NodeId {
        let id = self.tree.add_child(p);
        self.bags.push(bag);
        self.down.push(down);
        self.up.push(up);
        id
    }

    /// `γ(s, t)` for adjacent `s`, `t`.
    pub fn cone(&self, s: NodeId, t: NodeId) -> &EdgeSet {
        if self.tree.parent(t) == Some(s) {
            &self.down[t]
        } else if self.tree.parent(s) == Some(t) {
            &self.up[s]
        } else {
            panic!("nodes {s} and {t} are not adjacent")
        }
    }

    /// Blocks of `π_t`: cones toward all neighbours (parent first), or for a
    /// node with a single neighbour `p`, `(γ(t,p), ¬γ(t,p))`.
    pub fn local_blocks(&self, t: NodeId) -> Vec<EdgeSet> {
        let nbrs = self.tree.neighbors(t);
        if nbrs.len() == 1 {
            let c = self.cone(t, nbrs[0]).clone();
            let rest = self.host.complement(&c);
            vec![c, rest]
        } else {
            nbrs.iter().map(|&s| self.cone(t, s).clone()).collect()
        }
    }

    pub fn local_partition(&self, t: NodeId) -> EdgePartition {
        EdgePartition::new_unchecked(self.local_blocks(t))
    }

    /// `δ(π_t)`.
    pub fn local_boundary(&self, t: NodeId) -> VertexSet {
        partition_boundary(&self.host, &self.local_blocks(t))
    }

    /// Every PT1–PT4 violation with a witness; empty iff this is a pre-tree
    /// decomposition.
    pub fn validate(&self) -> Vec<PtdViolation> {
        let n = self.tree.len();
        if self.bags.len() != n || self.down.len() != n || self.up.len() != n {
            return vec![PtdViolation::Shape(format!(
                "{n} nodes but {} bags, {} down cones, {} up cones",
                self.bags.len(),
                self.down.len(),
                self.up.len()
            ))];
        }
        let m = self.host.edge_count();
        let mut out = Vec::new();
        for t in self.tree.nodes() {
            if self.down[t].bound() > m || self.up[t].bound() > m {
                out.push(PtdViolation::Shape(format!("cone at node {t} names an unknown edge")));
            }
            if self.bags[t].bound() > self.host.vertex_count() {
                out.push(PtdViolation::Shape(format!("bag {t} names an unknown vertex")));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let root = self.tree.root();
        if !self.bags[root].is_empty() {
            out.push(PtdViolation::RootBagNotEmpty(self.bags[root].clone()));
        }
        for comp in self.host.connected_components() {
            let mut edges = EdgeSet::new();
            for v in &comp {
                edges.union_with(self.host.incident(v));
            }
            if !self.tree.children(root).iter().any(|&c| self.down[c] == edges) {
                out.push(PtdViolation::MissingComponent(comp));
            }
        }
        for t in self.tree.nodes() {
            if t != root && self.tree.is_leaf(t) && self.down[t].len() > 1 {
                out.push(PtdViolation::LeafConeTooLarge {
                    leaf: t,
                    size: self.down[t].len(),
                });
            }
        }
        if self.tree.degree(root) == 1 {
            let c = self.tree.children(root)[0];
            if self.up[c].len() > 1 {
                out.push(PtdViolation::LeafConeTooLarge {
                    leaf: root,
                    size: self.up[c].len(),
                });
            }
        }
        for t in self.tree.nodes() {
            let blocks = self.local_blocks(t);
            if !is_partition(&self.host, &blocks) {
                out.push(PtdViolation::NotAPartition(t));
                continue;
            }
            let boundary = partition_boundary(&self.host, &blocks);
            if let Some(v) = boundary.difference(&self.bags[t]).first() {
                out.push(PtdViolation::BagMissesBoundary { node: t, vertex: v });
            }
        }
        for (p, c) in self.tree.edges() {
            if let Some(e) = self.down[c].intersection(&self.up[c]).first() {
                out.push(PtdViolation::OverlappingCones {
                    parent: p,
                    child: c,
                    edge: e,
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `γ(s,t) ∪ γ(t,s) = E(host)` for the tree edge `st`.
    pub fn is_exact_edge(&self, s: NodeId, t: NodeId) -> bool {
        let (p, c) = if self.tree.parent(t) == Some(s) { (s, t) } else { (t, s) };
        debug_assert_eq!(self.tree.parent(c), Some(p));
        self.down[c].union(&self.up[c]) == self.host.all_edges()
    }

    /// Every edge exact and every bag equal to `δ(π_t)`.
    pub fn is_exact(&self) -> bool {
        self.tree.edges().iter().all(|&(p, c)| self.is_exact_edge(p, c))
            && self
                .tree
                .nodes()
                .all(|t| self.bags[t] == self.local_boundary(t))
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64).max().unwrap_or(0) - 1
    }

    /// Per-node depth `Σ_{s ∈ P_t \ {r}} |β(s) \ β(p_s)|`, indexed by node.
    pub fn node_depths(&self) -> Vec<usize> {
        node_depths_of(&self.tree, &self.bags)
    }

    /// Maximum of [`Self::node_depths`] over all nodes.
    pub fn depth(&self) -> usize {
        self.node_depths().into_iter().max().unwrap_or(0)
    }

    fn check_upward_closed_exact(&self, subtree: &[NodeId]) -> Result<Vec<bool>> {
        let mut member = vec![false; self.tree.len()];
        for &t in subtree {
            if t >= member.len() {
                return Err(Error::Precondition(format!("unknown node {t}")));
            }
            member[t] = true;
        }
        if !member[self.tree.root()] {
            return Err(Error::Precondition("subtree must contain the root".into()));
        }
        for &t in subtree {
            if let Some(p) = self.tree.parent(t) {
                if !member[p] {
                    return Err(Error::Precondition(format!(
                        "subtree is not upward closed at node {t}"
                    )));
                }
                if !self.is_exact_edge(p, t) {
                    return Err(Error::Precondition(format!("edge {p}-{t} is not exact")));
                }
            }
        }
        Ok(member)
    }

    /// For an exact, root-containing subtree: the cones into its leaves
    /// partition the host edges.
    pub fn check_exact_subtree_partition(&self, subtree: &[NodeId]) -> Result<bool> {
        let member = self.check_upward_closed_exact(subtree)?;
        let leaf_cones: Vec<EdgeSet> = subtree
            .iter()
            .filter(|&&t| {
                t != self.tree.root() && !self.tree.children(t).iter().any(|&c| member[c])
            })
            .map(|&t| self.down[t].clone())
            .collect();
        Ok(is_partition(&self.host, &leaf_cones))
    }

    /// For an exact, root-containing subtree: every vertex's set of nodes
    /// with `v ∈ δ(π_t)` is connected in the subtree, and the telescoping
    /// depth sum over `δ(π_s)` equals the size of the union along each path.
    pub fn check_exact_subtree_depth(&self, subtree: &[NodeId]) -> Result<bool> {
        let member = self.check_upward_closed_exact(subtree)?;
        let boundaries: Vec<VertexSet> =
            self.tree.nodes().map(|t| self.local_boundary(t)).collect();
        for v in 0..self.host.vertex_count() {
            let trace: Vec<bool> = self
                .tree
                .nodes()
                .map(|t| member[t] && boundaries[t].contains(v))
                .collect();
            if !self.tree.is_connected_subset(&trace) {
                return Ok(false);
            }
        }
        for &t in subtree {
            let path = self.tree.path_from_root(t);
            let mut sum = 0;
            let mut union = boundaries[path[0]].clone();
            for w in path.windows(2) {
                sum += boundaries[w[1]].difference(&boundaries[w[0]]).len();
                union.union_with(&boundaries[w[1]]);
            }
            if sum != union.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Along a path of exact edges the forward cones are nested decreasingly.
    pub fn check_exact_path_nesting(&self, path: &[NodeId]) -> Result<bool> {
        for w in path.windows(2) {
            let adjacent =
                self.tree.parent(w[0]) == Some(w[1]) || self.tree.parent(w[1]) == Some(w[0]);
            if !adjacent {
                return Err(Error::Precondition(format!("{} and {} are not adjacent", w[0], w[1])));
            }
            if !self.is_exact_edge(w[0], w[1]) {
                return Err(Error::Precondition(format!("edge {}-{} is not exact", w[0], w[1])));
            }
        }
        Ok(path
            .windows(3)
            .all(|w| self.cone(w[1], w[2]).is_subset(self.cone(w[0], w[1]))))
    }

    /// Turns an exact pre-tree decomposition of `base°` into a tree
    /// decomposition of `base` on the same tree. A leaf whose cone is the loop
    /// of an isolated vertex `v` gets the bag `{v}`; every other bag is kept.
    pub fn to_tree_decomposition(&self, base: &Graph) -> Result<TreeDecomposition> {
        if base.vertex_count() != self.host.vertex_count()
            || base.edges() != &self.host.edges()[..base.edge_count()]
            || !self.host.is_closed()
            || self.host.edge_count() != base.closure().edge_count()
        {
            return Err(invalid("host is not the closure of the given graph"));
        }
        if !self.is_exact() {
            return Err(invalid("pre-tree decomposition is not exact"));
        }
        let mut bags = self.bags.clone();
        for t in self.tree.nodes() {
            if t == self.tree.root() || !self.tree.children(t).is_empty() {
                continue;
            }
            if self.down[t].len() == 1 {
                let e = self.host.edge(self.down[t].first().unwrap());
                if e.is_loop() && base.is_isolated(e.u) {
                    bags[t] = VertexSet::singleton(e.u);
                }
            }
        }
        let td = TreeDecomposition::new(self.tree.clone(), base.clone(), bags);
        let violations = td.validate();
        if let Some(v) = violations.first() {
            return Err(Error::Internal(format!("derived tree decomposition is invalid: {v}")));
        }
        Ok(td)
    }

    /// Builds an exact pre-tree decomposition of `td.host°` from a tree
    /// decomposition: per component a copy of the (tightened) subtree meeting
    /// it, one leaf per vertex loop and per edge, cones accumulated from
    /// descendant leaves and bags reset to `δ(π_t)`.
    pub fn from_tree_decomposition(td: &TreeDecomposition) -> Result<Self> {
        if let Some(v) = td.validate().first() {
            return Err(invalid(format!("invalid tree decomposition: {v}")));
        }
        let td = td.tighten()?;
        let g = &td.host;
        let host = g.closure();
        let all = host.all_edges();
        let loop_id = |v: Vertex| host.edge_id(v, v).expect("closure has every loop");
        let mut ptd = PreTreeDecomposition::trivial(host.clone());
        let root = ptd.tree.root();

        for comp in g.connected_components() {
            if comp.len() == 1 {
                let v = comp.first().unwrap();
                let cone = EdgeSet::singleton(loop_id(v));
                let up = all.difference(&cone);
                ptd.add_child(root, VertexSet::new(), cone, up);
                continue;
            }
            let in_comp: Vec<bool> = td.bags.iter().map(|b| b.intersects(&comp)).collect();
            let top = td
                .tree
                .nodes()
                .find(|&t| in_comp[t] && td.tree.parent(t).is_none_or(|p| !in_comp[p]))
                .ok_or_else(|| Error::Internal("component appears in no bag".into()))?;
            // copy the subtree meeting the component
            let mut copy = vec![usize::MAX; td.tree.len()];
            let mut copied = Vec::new();
            copy[top] = ptd.add_child(root, VertexSet::new(), EdgeSet::new(), EdgeSet::new());
            copied.push(copy[top]);
            for t in td.tree.bfs_order() {
                if t == top || !in_comp[t] {
                    continue;
                }
                let p = td.tree.parent(t).unwrap();
                if copy[p] == usize::MAX {
                    continue;
                }
                copy[t] = ptd.add_child(copy[p], VertexSet::new(), EdgeSet::new(), EdgeSet::new());
                copied.push(copy[t]);
            }
            // ⪯-minimal node holding a vertex set
            let topmost = |s: &VertexSet| {
                td.tree.bfs_order().into_iter().find(|&t| in_comp[t] && s.is_subset(&td.bags[t]))
            };
            for v in &comp {
                let t = topmost(&VertexSet::singleton(v))
                    .ok_or_else(|| Error::Internal(format!("vertex {v} in no bag")))?;
                let cone = EdgeSet::singleton(loop_id(v));
                let up = all.difference(&cone);
                ptd.add_child(copy[t], VertexSet::singleton(v), cone, up);
            }
            for (id, e) in g.edges().iter().enumerate() {
                if e.is_loop() || !comp.contains(e.u) {
                    continue;
                }
                let t = topmost(&e.endpoints())
                    .ok_or_else(|| Error::Internal(format!("edge {id} in no bag")))?;
                let cone = EdgeSet::singleton(id);
                let up = all.difference(&cone);
                ptd.add_child(copy[t], e.endpoints(), cone, up);
            }
            // accumulate cones bottom-up over the copied nodes
            for &c in copied.iter().rev() {
                let mut cone = EdgeSet::new();
                for &k in ptd.tree.children(c) {
                    cone.union_with(&ptd.down[k]);
                }
                ptd.up[c] = all.difference(&cone);
                ptd.down[c] = cone;
            }
            for &c in &copied {
                ptd.bags[c] = ptd.local_boundary(c);
            }
        }
        Ok(ptd)
    }
}

pub(crate) fn node_depths_of(tree: &RootedTree, bags: &[VertexSet]) -> Vec<usize> {
    let mut depth = vec![0; tree.len()];
    for t in tree.bfs_order() {
        if let Some(p) = tree.parent(t) {
            depth[t] = depth[p] + bags[t].difference(&bags[p]).len();
        }
    }
    depth
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(ids: &[usize]) -> EdgeSet {
        ids.iter().copied().collect()
    }

    fn vs(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    /// Hand-built exact decomposition of the closure of a single edge ab:
    /// edges 0=ab 1=aa 2=bb. root - x{a} - {leaf aa, y{a,b}} ; y - {leaf ab, leaf bb}
    fn e1_closure_ptd() -> PreTreeDecomposition {
        let host = Graph::from_edges(2, &[(0, 1)]).unwrap().closure();
        let all = host.all_edges();
        let mut p = PreTreeDecomposition::trivial(host);
        let x = p.add_child(0, vs(&[0]), all.clone(), EdgeSet::new());
        p.add_child(x, vs(&[0]), es(&[1]), es(&[0, 2]));
        let y = p.add_child(x, vs(&[0, 1]), es(&[0, 2]), es(&[1]));
        p.add_child(y, vs(&[0, 1]), es(&[0]), es(&[1, 2]));
        p.add_child(y, vs(&[1]), es(&[2]), es(&[0, 1]));
        p
    }

    #[test]
    fn reference_decomposition_is_exact() {
        let p = e1_closure_ptd();
        assert!(p.validate().is_empty(), "{:?}", p.validate());
        assert!(p.is_exact());
        assert_eq!(p.width(), 1);
        assert_eq!(p.depth(), 2);
        // internal node y: three blocks over {ab, aa, bb}
        let blocks = p.local_blocks(3);
        assert_eq!(blocks, vec![es(&[1]), es(&[0]), es(&[2])]);
        // leaf partition at the aa leaf
        assert_eq!(p.local_blocks(2), vec![es(&[0, 2]), es(&[1])]);
    }

    #[test]
    fn detects_axiom_violations() {
        let mut p = e1_closure_ptd();
        p.bags[0] = vs(&[0]);
        assert!(p.validate().contains(&PtdViolation::RootBagNotEmpty(vs(&[0]))));

        let mut p = e1_closure_ptd();
        p.up[2] = es(&[0, 1]);
        assert!(p
            .validate()
            .iter()
            .any(|v| matches!(v, PtdViolation::OverlappingCones { .. })));

        let mut p = e1_closure_ptd();
        p.down[4] = es(&[0, 1]);
        p.up[4] = es(&[2]);
        assert!(p
            .validate()
            .iter()
            .any(|v| matches!(v, PtdViolation::LeafConeTooLarge { leaf: 4, .. })));
    }

    #[test]
    fn exactness_of_edges() {
        let mut p = e1_closure_ptd();
        assert!(p.is_exact_edge(1, 2));
        p.up[2] = EdgeSet::new();
        assert!(!p.is_exact_edge(1, 2));
        assert!(!p.is_exact());
    }

    #[test]
    fn depth_examples() {
        let host = Graph::new(2);
        let p = PreTreeDecomposition::trivial(host.clone());
        assert_eq!((p.width(), p.depth()), (-1, 0));
        let mut p = PreTreeDecomposition::trivial(host);
        let a = p.add_child(0, vs(&[0]), EdgeSet::new(), EdgeSet::new());
        p.add_child(a, vs(&[0, 1]), EdgeSet::new(), EdgeSet::new());
        assert_eq!(p.depth(), 2);
    }

    #[test]
    fn subtree_observations_on_reference() {
        let p = e1_closure_ptd();
        assert!(p.check_exact_subtree_partition(&[0, 1]).unwrap());
        assert!(p.check_exact_subtree_partition(&[0, 1, 2, 3, 4, 5]).unwrap());
        assert!(p.check_exact_subtree_depth(&[0]).unwrap());
        assert!(p.check_exact_subtree_depth(&[0, 1, 2, 3, 4, 5]).unwrap());
        assert!(p.check_exact_path_nesting(&[0, 1]).unwrap());
        assert!(p.check_exact_path_nesting(&[0, 1, 3, 4]).unwrap());
        assert!(p.check_exact_path_nesting(&[4, 3, 1, 2]).unwrap());
        assert!(p.check_exact_subtree_partition(&[1, 2]).is_err());
    }

    #[test]
    fn to_tree_decomposition_of_reference() {
        let base = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let td = e1_closure_ptd().to_tree_decomposition(&base).unwrap();
        assert!(td.is_valid());
        assert!(td.width() <= 1);
        assert!(td.depth() <= 2);
    }

    #[test]
    fn isolated_vertex_round_trip() {
        let base = Graph::new(1);
        let host = base.closure();
        let mut p = PreTreeDecomposition::trivial(host);
        p.add_child(0, VertexSet::new(), es(&[0]), EdgeSet::new());
        assert!(p.is_valid());
        assert!(p.is_exact());
        let td = p.to_tree_decomposition(&base).unwrap();
        assert_eq!(td.bags[1], vs(&[0]));

        let back = PreTreeDecomposition::from_tree_decomposition(&td).unwrap();
        assert_eq!(back.tree.children(0).len(), 1);
        assert_eq!(back.down[1], es(&[0]));
    }

    #[test]
    fn from_tree_decomposition_of_p3() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let tree = RootedTree::from_parents(vec![0, 0, 0]).unwrap();
        let td = TreeDecomposition::new(tree, g.clone(), vec![vs(&[1]), vs(&[0, 1]), vs(&[1, 2])]);
        let p = PreTreeDecomposition::from_tree_decomposition(&td).unwrap();
        assert!(p.validate().is_empty(), "{:?}", p.validate());
        assert!(p.is_exact());
        assert!(p.width() <= 1);
        assert!(p.depth() <= 2);
        let back = p.to_tree_decomposition(&g).unwrap();
        assert!(back.width() <= td.width());
        assert!(back.depth() <= td.depth());
    }

    #[test]
    fn rejects_non_exact_conversion() {
        let base = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut p = e1_closure_ptd();
        p.up[2] = EdgeSet::new();
        assert!(p.to_tree_decomposition(&base).is_err());
    }
}
