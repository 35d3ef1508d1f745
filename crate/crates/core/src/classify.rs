//! Join / split / bivalent / biunivocal flags for nodes and arcs.

use crate::graph::{ArcId, Graph, NodeId};

const JOIN: u8 = 1;
const SPLIT: u8 = 2;

/// Degree-based classification of every node and arc of a graph.
///
/// A node is *join* if its in-degree exceeds one and *split* if its out-degree
/// exceeds one. An arc is join if its head is, and split if its tail is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    nodes: Vec<u8>,
    arcs: Vec<u8>,
}

impl Classification {
    pub fn new(graph: &Graph) -> Self {
        let nodes: Vec<u8> = graph
            .nodes()
            .map(|v| {
                let mut flags = 0;
                if graph.in_degree(v) > 1 {
                    flags |= JOIN;
                }
                if graph.out_degree(v) > 1 {
                    flags |= SPLIT;
                }
                flags
            })
            .collect();
        let arcs = graph
            .arcs()
            .map(|a| (nodes[graph.head(a)] & JOIN) | (nodes[graph.tail(a)] & SPLIT))
            .collect();
        Self { nodes, arcs }
    }

    pub fn is_join(&self, v: NodeId) -> bool {
        self.nodes[v] & JOIN != 0
    }

    pub fn is_split(&self, v: NodeId) -> bool {
        self.nodes[v] & SPLIT != 0
    }

    pub fn is_bivalent(&self, v: NodeId) -> bool {
        self.nodes[v] == JOIN | SPLIT
    }

    pub fn is_biunivocal(&self, v: NodeId) -> bool {
        self.nodes[v] == 0
    }

    pub fn is_join_arc(&self, a: ArcId) -> bool {
        self.arcs[a] & JOIN != 0
    }

    pub fn is_split_arc(&self, a: ArcId) -> bool {
        self.arcs[a] & SPLIT != 0
    }

    pub fn is_bivalent_arc(&self, a: ArcId) -> bool {
        self.arcs[a] == JOIN | SPLIT
    }

    pub fn is_biunivocal_arc(&self, a: ArcId) -> bool {
        self.arcs[a] == 0
    }

    pub fn bivalent_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|&v| self.is_bivalent(v))
    }

    pub fn bivalent_arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        (0..self.arcs.len()).filter(|&a| self.is_bivalent_arc(a))
    }

    /// No biunivocal node and no biunivocal arc.
    pub fn is_compressed(&self) -> bool {
        self.nodes.iter().chain(&self.arcs).all(|&f| f != 0)
    }
}

/// Every node has in- and out-degree one and the graph is a single cycle.
pub fn is_closed_path(graph: &Graph) -> bool {
    graph.node_count() > 0
        && graph
            .nodes()
            .all(|v| graph.in_degree(v) == 1 && graph.out_degree(v) == 1)
        && crate::scc::is_strongly_connected(graph)
}
