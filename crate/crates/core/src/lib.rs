//! Bounded-depth treewidth through the q-placement k-cops-and-robber game.
//!
//! Exhaustive game solving on small graphs, strategy trees, the
//! exactification construction that makes strategies monotone, and
//! certified tree decompositions of bounded width and depth.

pub mod bitset;
pub mod corpus;
pub mod error;
pub mod formats;
pub mod game;
pub mod graph;
pub mod partitions;
pub mod monotonize;
pub mod ptd;
pub mod strategy_tree;
pub mod sweep;
pub mod tree;
pub mod tree_decomp;

pub use bitset::{EdgeSet, VertexSet};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, Graph, Vertex};
pub use partitions::EdgePartition;
pub use ptd::PreTreeDecomposition;
pub use tree::{NodeId, RootedTree};
pub use tree_decomp::TreeDecomposition;
