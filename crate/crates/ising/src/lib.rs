//! Graphs, rooted trees and exact ferromagnetic Ising partition functions
//! with complex external fields on the unit circle.

pub mod enumerate;
pub mod graph;
pub mod partition;
pub mod poly;
pub mod transfer;
pub mod tree;

pub use graph::{Graph, Spin};
pub use partition::{partition, pinned_partition, two_vertex_weights, PinnedWeights};
pub use poly::{partition_polynomial_in_lambda, polynomial_zeros, PolyRoot};
pub use transfer::{path_transfer, PathTransfer};
pub use tree::RootedTree;

#[derive(Debug, thiserror::Error)]
pub enum IsingError {
    #[error("graph too large for exact enumeration: {0} free vertices (cap {1})")]
    TooLarge(usize, usize),
    #[error("zero denominator: Z_(T,-r) = 0 at the given parameters")]
    ZeroDenominator,
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("root finding did not converge")]
    NoConvergence,
}
