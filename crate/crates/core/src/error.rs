use thiserror::Error;

use crate::graph::{ArcId, NodeId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arc {arc} has endpoint {node}, but the graph has only {node_count} nodes")]
    NodeOutOfRange {
        arc: ArcId,
        node: NodeId,
        node_count: usize,
    },

    #[error("graph is not strongly connected")]
    NotStronglyConnected,

    #[error("graph is a closed path; every walk is an omnitig")]
    ClosedPath,

    #[error("graph is not compressed: {0}")]
    NotCompressed(String),

    #[error("univocal extension did not terminate within {0} steps")]
    UnboundedExtension(usize),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("brute-force oracle is limited to n <= {max_nodes} and m <= {max_arcs} (got n = {nodes}, m = {arcs})")]
    SizeCap {
        nodes: usize,
        arcs: usize,
        max_nodes: usize,
        max_arcs: usize,
    },

    #[error("cannot build a strongly connected graph with n = {nodes} and m = {arcs}")]
    InfeasibleParameters { nodes: usize, arcs: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
