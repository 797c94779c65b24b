//! Finite graphs with self-loops and the edge-component machinery the game and
//! the decompositions are built on.

use std::collections::HashMap;

use crate::bitset::{EdgeSet, VertexSet};
use crate::error::{invalid, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

/// An undirected edge, stored with `u <= v`. A self-loop has `u == v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn endpoints(&self) -> VertexSet {
        VertexSet::from_iter([self.u, self.v])
    }

    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Simple graph on vertices `0..n`, self-loops allowed, parallel edges rejected.
/// Edge ids are dense and follow insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    index: HashMap<Edge, EdgeId>,
    incident: Vec<EdgeSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            index: HashMap::new(),
            incident: vec![EdgeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<EdgeId> {
        if a >= self.n || b >= self.n {
            return Err(invalid(format!(
                "edge ({a},{b}) has an endpoint outside 0..{}",
                self.n
            )));
        }
        let e = Edge::new(a, b);
        if self.index.contains_key(&e) {
            return Err(invalid(format!("parallel edge ({a},{b})")));
        }
        let id = self.edges.len();
        self.edges.push(e);
        self.index.insert(e, id);
        self.incident[e.u].insert(id);
        self.incident[e.v].insert(id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn edge_id(&self, a: Vertex, b: Vertex) -> Option<EdgeId> {
        self.index.get(&Edge::new(a, b)).copied()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    /// Complement of `x` within `E(G)`.
    pub fn complement(&self, x: &EdgeSet) -> EdgeSet {
        x.complement(self.edges.len())
    }

    /// `G°`: every missing self-loop is appended, in vertex order, after the
    /// original edges, whose ids are kept.
    pub fn closure(&self) -> Graph {
        let mut g = self.clone();
        for v in 0..self.n {
            if g.edge_id(v, v).is_none() {
                g.add_edge(v, v).expect("loop is new and in range");
            }
        }
        g
    }

    /// True if every vertex carries a self-loop.
    pub fn is_closed(&self) -> bool {
        (0..self.n).all(|v| self.edge_id(v, v).is_some())
    }

    /// `E_G(v)`, including the loop at `v` when present.
    pub fn incident_edges(&self, v: Vertex) -> Result<EdgeSet> {
        self.incident
            .get(v)
            .cloned()
            .ok_or_else(|| invalid(format!("unknown vertex {v}")))
    }

    pub(crate) fn incident(&self, v: Vertex) -> &EdgeSet {
        &self.incident[v]
    }

    /// Vertices with no neighbour other than possibly themselves.
    pub fn is_isolated(&self, v: Vertex) -> bool {
        self.incident[v].iter().all(|e| self.edges[e].is_loop())
    }

    /// Vertices touched by at least one edge of `x`.
    pub fn vertices_of(&self, x: &EdgeSet) -> VertexSet {
        let mut out = VertexSet::new();
        for e in x {
            out.insert(self.edges[e].u);
            out.insert(self.edges[e].v);
        }
        out
    }

    /// Vertex sets of the connected components, ordered by their minimum vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_avoiding(&VertexSet::new())
    }

    /// Components of `G - x`, ordered by minimum vertex.
    pub fn components_avoiding(&self, x: &VertexSet) -> Vec<VertexSet> {
        let mut seen = x.clone();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new();
            seen.insert(start);
            stack.push(start);
            while let Some(a) = stack.pop() {
                comp.insert(a);
                for e in &self.incident[a] {
                    let b = self.edges[e].other(a);
                    if !seen.contains(b) {
                        seen.insert(b);
                        stack.push(b);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// `δ(X)`: vertices incident to an edge in `x` and to an edge outside `x`.
    pub fn boundary(&self, x: &EdgeSet) -> VertexSet {
        let mut out = VertexSet::new();
        for v in 0..self.n {
            let inc = &self.incident[v];
            if inc.intersects(x) && !inc.is_subset(x) {
                out.insert(v);
            }
        }
        out
    }

    /// The non-empty edge sets of the parts of `G^X`, canonically ordered by
    /// minimum edge id, together with a flag marking single-edge parts inside
    /// `G[X]`.
    pub fn edge_parts(&self, x: &VertexSet) -> Vec<(EdgeSet, bool)> {
        let ecg = self.edge_component_graph(x);
        ecg.parts
            .into_iter()
            .filter(|p| !p.edges.is_empty())
            .map(|p| {
                let single = matches!(p.kind, PartKind::SingleEdge(_));
                (p.edges, single)
            })
            .collect()
    }

    /// `γ^X_e`: host edges of the part of `G^X` containing `e`.
    pub fn robber_component(&self, x: &VertexSet, e: EdgeId) -> Result<EdgeSet> {
        if e >= self.edges.len() {
            return Err(invalid(format!("unknown edge {e}")));
        }
        let ecg = self.edge_component_graph(x);
        Ok(ecg.parts[ecg.part_of(e)].edges.clone())
    }

    /// Builds `G^X`. Each edge of `G[X]` becomes its own part; every component
    /// `C` of `G - X` becomes a part carrying the edges with an endpoint in `C`.
    pub fn edge_component_graph(&self, x: &VertexSet) -> EdgeComponentGraph {
        let x: VertexSet = x.iter().filter(|&v| v < self.n).collect();
        let mut parts = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if x.contains(e.u) && x.contains(e.v) {
                parts.push(Part {
                    kind: PartKind::SingleEdge(id),
                    vertices: e.endpoints(),
                    edges: EdgeSet::singleton(id),
                });
            }
        }
        for comp in self.components_avoiding(&x) {
            let mut edges = EdgeSet::new();
            let mut vertices = comp.clone();
            for v in &comp {
                for e in &self.incident[v] {
                    edges.insert(e);
                    vertices.insert(self.edges[e].other(v));
                }
            }
            parts.push(Part {
                kind: PartKind::Component(comp),
                vertices,
                edges,
            });
        }
        parts.sort_by_key(|p| match p.edges.first() {
            Some(e) => (0, e),
            None => (1, p.vertices.first().unwrap_or(0)),
        });
        let mut owner = vec![usize::MAX; self.edges.len()];
        for (i, p) in parts.iter().enumerate() {
            for e in &p.edges {
                owner[e] = i;
            }
        }
        EdgeComponentGraph {
            cops: x,
            parts,
            owner,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartKind {
    /// A single edge with both endpoints among the cops.
    SingleEdge(EdgeId),
    /// A component of `G - X`, given by its vertex set.
    Component(VertexSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub kind: PartKind,
    /// Vertices of the part graph (copies of cop vertices included).
    pub vertices: VertexSet,
    /// Host ids of the part's edges; this is `Ψ` restricted to the part.
    pub edges: EdgeSet,
}

/// `G^X` as a list of parts. Every host edge lies in exactly one part.
#[derive(Debug, Clone)]
pub struct EdgeComponentGraph {
    pub cops: VertexSet,
    pub parts: Vec<Part>,
    owner: Vec<usize>,
}

impl EdgeComponentGraph {
    /// Index of the part holding host edge `e`.
    pub fn part_of(&self, e: EdgeId) -> usize {
        self.owner[e]
    }

    /// `Ψ`: the host id of the `local`-th edge of part `part`.
    pub fn psi(&self, part: usize, local: usize) -> Option<EdgeId> {
        self.parts.get(part)?.edges.iter().nth(local)
    }

    /// `Ψ⁻¹`: (part, local index) of host edge `e`.
    pub fn psi_inverse(&self, e: EdgeId) -> Option<(usize, usize)> {
        let part = *self.owner.get(e)?;
        let local = self.parts[part].edges.iter().position(|x| x == e)?;
        Some((part, local))
    }
}
