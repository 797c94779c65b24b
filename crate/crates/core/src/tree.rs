//! Rooted trees over dense node ids.

use std::collections::VecDeque;

use crate::error::{invalid, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: NodeId,
    parent: Vec<NodeId>,
    children: Vec<Vec<NodeId>>,
}

impl RootedTree {
    /// A single root node.
    pub fn singleton() -> Self {
        RootedTree {
            root: 0,
            parent: vec![0],
            children: vec![Vec::new()],
        }
    }

    /// Builds a tree from a parent array; the root is its own parent.
    pub fn from_parents(parent: Vec<NodeId>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(invalid("a rooted tree needs at least one node"));
        }
        let roots: Vec<NodeId> = (0..n).filter(|&t| parent[t] == t).collect();
        if roots.len() != 1 {
            return Err(invalid(format!("expected exactly one root, found {}", roots.len())));
        }
        let mut children = vec![Vec::new(); n];
        for (t, &p) in parent.iter().enumerate() {
            if p >= n {
                return Err(invalid(format!("node {t} has unknown parent {p}")));
            }
            if p != t {
                children[p].push(t);
            }
        }
        let tree = RootedTree {
            root: roots[0],
            parent,
            children,
        };
        if tree.bfs_order().len() != n {
            return Err(invalid("parent links contain a cycle"));
        }
        Ok(tree)
    }

    /// Roots an undirected tree given by its edge list.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)], root: NodeId) -> Result<Self> {
        if root >= n {
            return Err(invalid(format!("root {root} out of range")));
        }
        if edges.len() + 1 != n {
            return Err(invalid(format!(
                "a tree on {n} nodes has {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(invalid(format!("bad tree edge ({a},{b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![usize::MAX; n];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if parent[b] == usize::MAX {
                    parent[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if parent.contains(&usize::MAX) {
            return Err(invalid("tree edges do not connect all nodes"));
        }
        Self::from_parents(parent)
    }

    /// Appends a new child of `p` and returns its id.
    pub fn add_child(&mut self, p: NodeId) -> NodeId {
        let id = self.parent.len();
        self.parent.push(p);
        self.children.push(Vec::new());
        self.children[p].push(id);
        id
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.parent.len()
    }

    pub fn parent(&self, t: NodeId) -> Option<NodeId> {
        (t != self.root).then(|| self.parent[t])
    }

    pub fn children(&self, t: NodeId) -> &[NodeId] {
        &self.children[t]
    }

    /// Parent first, then children in id order.
    pub fn neighbors(&self, t: NodeId) -> Vec<NodeId> {
        self.parent(t).into_iter().chain(self.children[t].iter().copied()).collect()
    }

    pub fn degree(&self, t: NodeId) -> usize {
        self.children[t].len() + usize::from(t != self.root)
    }

    /// `L(T)`: nodes with exactly one neighbour. A lone root also counts, so
    /// every tree has at least one leaf.
    pub fn is_leaf(&self, t: NodeId) -> bool {
        self.degree(t) == 1 || self.len() == 1
    }

    pub fn leaves(&self) -> Vec<NodeId> {
        self.nodes().filter(|&t| self.is_leaf(t)).collect()
    }

    /// Non-root tree edges as (parent, child) pairs in child order.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        self.nodes()
            .filter_map(|t| self.parent(t).map(|p| (p, t)))
            .collect()
    }

    /// `P_t`: the nodes from the root down to `t`.
    pub fn path_from_root(&self, t: NodeId) -> Vec<NodeId> {
        let mut path = vec![t];
        let mut cur = t;
        while let Some(p) = self.parent(cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn depth(&self, t: NodeId) -> usize {
        self.path_from_root(t).len() - 1
    }

    /// `a ⪯ b`: `a` lies on the path from the root to `b`.
    pub fn is_ancestor(&self, a: NodeId, b: NodeId) -> bool {
        let mut cur = b;
        loop {
            if cur == a {
                return true;
            }
            match self.parent(cur) {
                Some(p) => cur = p,
                None => return false,
            }
        }
    }

    /// Greatest common ancestor.
    pub fn gca(&self, a: NodeId, b: NodeId) -> NodeId {
        let pa = self.path_from_root(a);
        let pb = self.path_from_root(b);
        let mut last = self.root;
        for (x, y) in pa.iter().zip(pb.iter()) {
            if x != y {
                break;
            }
            last = *x;
        }
        last
    }

    /// The unique path from `a` to `b`, both ends included.
    pub fn path(&self, a: NodeId, b: NodeId) -> Vec<NodeId> {
        let c = self.gca(a, b);
        let mut up = Vec::new();
        let mut cur = a;
        while cur != c {
            up.push(cur);
            cur = self.parent[cur];
        }
        up.push(c);
        let mut down = Vec::new();
        let mut cur = b;
        while cur != c {
            down.push(cur);
            cur = self.parent[cur];
        }
        down.reverse();
        up.extend(down);
        up
    }

    /// Level order starting at the root, ties broken by node id.
    pub fn bfs_order(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.len());
        let mut queue = VecDeque::from([self.root]);
        let mut seen = vec![false; self.len()];
        seen[self.root] = true;
        while let Some(t) = queue.pop_front() {
            order.push(t);
            let mut kids = self.children[t].clone();
            kids.sort_unstable();
            for c in kids {
                if !seen[c] {
                    seen[c] = true;
                    queue.push_back(c);
                }
            }
        }
        order
    }

    /// True if the node set induces a connected subtree (the empty set counts
    /// as connected).
    pub fn is_connected_subset(&self, member: &[bool]) -> bool {
        let tops = self
            .nodes()
            .filter(|&t| member[t] && self.parent(t).is_none_or(|p| !member[p]))
            .count();
        tops <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    //      0
    //    1   2
    //   3 4   5
    fn sample() -> RootedTree {
        RootedTree::from_parents(vec![0, 0, 0, 1, 1, 2]).unwrap()
    }

    #[test]
    fn structure() {
        let t = sample();
        assert_eq!(t.children(1), &[3, 4]);
        assert_eq!(t.neighbors(1), vec![0, 3, 4]);
        assert_eq!(t.leaves(), vec![3, 4, 5]);
        assert_eq!(t.path_from_root(4), vec![0, 1, 4]);
        assert_eq!(t.gca(3, 4), 1);
        assert_eq!(t.gca(3, 5), 0);
        assert_eq!(t.path(3, 5), vec![3, 1, 0, 2, 5]);
        assert!(t.is_ancestor(0, 5) && t.is_ancestor(5, 5) && !t.is_ancestor(1, 5));
        assert_eq!(t.bfs_order(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn from_edges_roots_tree() {
        let t = RootedTree::from_edges(3, &[(0, 1), (1, 2)], 1).unwrap();
        assert_eq!(t.root(), 1);
        assert_eq!(t.children(1), &[0, 2]);
        assert!(RootedTree::from_edges(3, &[(0, 1)], 0).is_err());
        assert!(RootedTree::from_edges(4, &[(0, 1), (1, 0), (2, 3)], 0).is_err());
    }

    #[test]
    fn rejects_cycles_and_multiple_roots() {
        assert!(RootedTree::from_parents(vec![0, 2, 1]).is_err());
        assert!(RootedTree::from_parents(vec![0, 1]).is_err());
    }

    #[test]
    fn connected_subsets() {
        let t = sample();
        assert!(t.is_connected_subset(&[false, true, false, true, true, false]));
        assert!(!t.is_connected_subset(&[false, true, true, false, false, false]));
        assert!(t.is_connected_subset(&[false; 6]));
    }

    #[test]
    fn lone_root_is_leaf() {
        let t = RootedTree::singleton();
        assert_eq!(t.leaves(), vec![0]);
        let t = RootedTree::from_parents(vec![0, 0]).unwrap();
        assert_eq!(t.leaves(), vec![0, 1]);
    }
}
