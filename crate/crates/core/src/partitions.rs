//! Ordered partitions of an edge set, F-extensions and partition width.

use std::fmt;

use crate::bitset::{EdgeSet, VertexSet};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// An ordered tuple of disjoint edge sets covering `E(host)`. Blocks are
/// addressed by index; empty blocks, including repeated ones, are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePartition {
    blocks: Vec<EdgeSet>,
}

impl EdgePartition {
    /// Checks the disjoint-cover property against `g`.
    pub fn new(g: &Graph, blocks: Vec<EdgeSet>) -> Result<Self> {
        if !is_partition(g, &blocks) {
            return Err(invalid("blocks are not a disjoint cover of the edge set"));
        }
        Ok(EdgePartition { blocks })
    }

    pub(crate) fn new_unchecked(blocks: Vec<EdgeSet>) -> Self {
        EdgePartition { blocks }
    }

    pub fn blocks(&self) -> &[EdgeSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `P_{X_i → F}`: block `i` gains `f`, every other block loses it.
    pub fn f_extension(&self, block_index: usize, f: &EdgeSet) -> Result<Self> {
        if block_index >= self.blocks.len() {
            return Err(invalid(format!(
                "block index {block_index} out of range for {} blocks",
                self.blocks.len()
            )));
        }
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(j, b)| {
                if j == block_index {
                    b.union(f)
                } else {
                    b.difference(f)
                }
            })
            .collect();
        Ok(EdgePartition { blocks })
    }

    /// `δ(π)`, the union of the block boundaries.
    pub fn boundary(&self, g: &Graph) -> VertexSet {
        partition_boundary(g, &self.blocks)
    }

    pub fn width(&self, g: &Graph) -> usize {
        self.boundary(g).len()
    }
}

/// Lists of edge-id lists, e.g. `[[0, 1], [], [2]]`.
impl fmt::Display for EdgePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<Vec<usize>> = self.blocks.iter().map(|b| b.iter().collect()).collect();
        write!(f, "{blocks:?}")
    }
}

pub fn is_partition(g: &Graph, blocks: &[EdgeSet]) -> bool {
    let mut seen = EdgeSet::new();
    for b in blocks {
        if b.intersects(&seen) {
            return false;
        }
        seen.union_with(b);
    }
    seen == g.all_edges()
}

/// Vertices whose incident edges meet at least two different blocks. For a
/// disjoint cover this is the union of `δ(X)` over the blocks.
pub fn partition_boundary(g: &Graph, blocks: &[EdgeSet]) -> VertexSet {
    let mut out = VertexSet::new();
    for v in 0..g.vertex_count() {
        let inc = g.incident(v);
        if blocks.iter().any(|b| b.intersects(inc) && !inc.is_subset(b)) {
            out.insert(v);
        }
    }
    out
}

/// Evaluates the submodularity inequality
/// `wid(P) + wid(Q) >= wid(P_{X→¬Y}) + wid(Q_{Y→¬X})`
/// for block `x_index` of `p` and block `y_index` of `q`.
pub fn check_submodularity_instance(
    g: &Graph,
    p: &EdgePartition,
    q: &EdgePartition,
    x_index: usize,
    y_index: usize,
) -> Result<bool> {
    let x = p
        .blocks
        .get(x_index)
        .ok_or_else(|| invalid(format!("x index {x_index} out of range")))?;
    let y = q
        .blocks
        .get(y_index)
        .ok_or_else(|| invalid(format!("y index {y_index} out of range")))?;
    if x.union(y) == g.all_edges() {
        return Err(Error::Precondition(
            "inequality not applicable: X ∪ Y covers every edge".into(),
        ));
    }
    let p_ext = p.f_extension(x_index, &g.complement(y))?;
    let q_ext = q.f_extension(y_index, &g.complement(x))?;
    Ok(p.width(g) + q.width(g) >= p_ext.width(g) + q_ext.width(g))
}
