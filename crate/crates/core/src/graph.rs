//! Directed multigraph with stable arc identifiers.

use crate::error::{Error, Result};

/// Dense node index `0..n`.
pub type NodeId = usize;
/// Dense arc index `0..m`, assigned in insertion order.
pub type ArcId = usize;

/// A directed multigraph. Parallel arcs and self-loops are kept as distinct arcs.
///
/// Adjacency is stored in compressed form; the out-arcs (in-arcs) of a node are
/// listed in increasing arc ID order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    tails: Vec<NodeId>,
    heads: Vec<NodeId>,
    labels: Vec<Option<String>>,
    out_start: Vec<usize>,
    out_list: Vec<ArcId>,
    in_start: Vec<usize>,
    in_list: Vec<ArcId>,
}

impl Graph {
    /// Builds a graph on `node_count` nodes from `(tail, head)` pairs.
    pub fn new<I>(node_count: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Self::with_labels(node_count, arcs.into_iter().map(|(t, h)| (t, h, None)))
    }

    /// Builds a graph whose arcs carry an optional opaque label.
    pub fn with_labels<I>(node_count: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, Option<String>)>,
    {
        let mut tails = Vec::new();
        let mut heads = Vec::new();
        let mut labels = Vec::new();
        for (arc, (tail, head, label)) in arcs.into_iter().enumerate() {
            for node in [tail, head] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange {
                        arc,
                        node,
                        node_count,
                    });
                }
            }
            tails.push(tail);
            heads.push(head);
            labels.push(label);
        }
        let (out_start, out_list) = bucket(node_count, &tails);
        let (in_start, in_list) = bucket(node_count, &heads);
        Ok(Self {
            node_count,
            tails,
            heads,
            labels,
            out_start,
            out_list,
            in_start,
            in_list,
        })
    }

    /// A single node carrying `loops` self-loops.
    pub fn bouquet(loops: usize) -> Self {
        Self::new(1, std::iter::repeat_n((0, 0), loops)).expect("node 0 exists")
    }

    /// The directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Self {
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("endpoints in range")
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.tails.len()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count
    }

    pub fn arcs(&self) -> std::ops::Range<ArcId> {
        0..self.tails.len()
    }

    #[inline]
    pub fn tail(&self, arc: ArcId) -> NodeId {
        self.tails[arc]
    }

    #[inline]
    pub fn head(&self, arc: ArcId) -> NodeId {
        self.heads[arc]
    }

    pub fn label(&self, arc: ArcId) -> Option<&str> {
        self.labels[arc].as_deref()
    }

    #[inline]
    pub fn out_arcs(&self, node: NodeId) -> &[ArcId] {
        &self.out_list[self.out_start[node]..self.out_start[node + 1]]
    }

    #[inline]
    pub fn in_arcs(&self, node: NodeId) -> &[ArcId] {
        &self.in_list[self.in_start[node]..self.in_start[node + 1]]
    }

    #[inline]
    pub fn out_degree(&self, node: NodeId) -> usize {
        self.out_start[node + 1] - self.out_start[node]
    }

    #[inline]
    pub fn in_degree(&self, node: NodeId) -> usize {
        self.in_start[node + 1] - self.in_start[node]
    }

    /// The graph with every arc reversed. Arc IDs are preserved.
    pub fn reversed(&self) -> Self {
        Self::with_labels(
            self.node_count,
            self.arcs()
                .map(|a| (self.heads[a], self.tails[a], self.labels[a].clone())),
        )
        .expect("endpoints already validated")
    }

    /// `(tail, head)` pairs in arc ID order.
    pub fn arc_list(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.arcs().map(|a| (self.tails[a], self.heads[a]))
    }

    /// The subgraph induced by `nodes`, with nodes renumbered in the given order.
    /// Returns the subgraph and, for each of its arcs, the arc ID in `self`.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> (Self, Vec<ArcId>) {
        let mut local = vec![usize::MAX; self.node_count];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = i;
        }
        let mut arcs = Vec::new();
        let mut origin = Vec::new();
        for a in self.arcs() {
            let (t, h) = (local[self.tails[a]], local[self.heads[a]]);
            if t != usize::MAX && h != usize::MAX {
                arcs.push((t, h, self.labels[a].clone()));
                origin.push(a);
            }
        }
        let sub = Self::with_labels(nodes.len(), arcs).expect("local ids in range");
        (sub, origin)
    }
}

fn bucket(node_count: usize, endpoint: &[NodeId]) -> (Vec<usize>, Vec<ArcId>) {
    let mut start = vec![0usize; node_count + 1];
    for &v in endpoint {
        start[v + 1] += 1;
    }
    for v in 0..node_count {
        start[v + 1] += start[v];
    }
    let mut fill = start.clone();
    let mut list = vec![0; endpoint.len()];
    for (arc, &v) in endpoint.iter().enumerate() {
        list[fill[v]] = arc;
        fill[v] += 1;
    }
    (start, list)
}
