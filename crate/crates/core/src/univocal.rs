//! Univocal extension `U(W) = W⁻ W W⁺`.
//!
//! `W⁺` follows the unique out-arc while the current node has out-degree one;
//! `W⁻` follows the unique in-arc backwards while the current node has in-degree
//! one. On a strongly connected graph that is not a closed path both chains end.

use crate::error::{Error, Result};
use crate::graph::{ArcId, Graph, NodeId};
use crate::walk::Walk;

/// Univocal extension of `walk`, capped at `n` steps per side.
pub fn univocal_extension(graph: &Graph, walk: &Walk) -> Result<Walk> {
    walk.validate(graph)?;
    if walk.is_closed() {
        return Ok(walk.clone());
    }
    let (Some(start), Some(end)) = (walk.start(graph), walk.end(graph)) else {
        return Err(Error::InvalidWalk("empty walk without anchor".into()));
    };
    let cap = graph.node_count();
    let mut prefix = Vec::new();
    let mut v = start;
    while graph.in_degree(v) == 1 {
        if prefix.len() >= cap {
            return Err(Error::UnboundedExtension(cap));
        }
        let a = graph.in_arcs(v)[0];
        prefix.push(a);
        v = graph.tail(a);
    }
    prefix.reverse();
    let mut v = end;
    let mut arcs = prefix;
    arcs.extend_from_slice(walk.arcs());
    let mut steps = 0;
    while graph.out_degree(v) == 1 {
        if steps >= cap {
            return Err(Error::UnboundedExtension(cap));
        }
        let a = graph.out_arcs(v)[0];
        arcs.push(a);
        v = graph.head(a);
        steps += 1;
    }
    Ok(Walk::open(arcs))
}

/// Per-node lengths of the backward and forward univocal chains, computed once in `O(n)`.
#[derive(Debug, Clone)]
pub struct ExtensionLengths {
    /// Arcs prepended when a walk starts at the node.
    pub backward: Vec<usize>,
    /// Arcs appended when a walk ends at the node.
    pub forward: Vec<usize>,
}

impl ExtensionLengths {
    pub fn new(graph: &Graph) -> Result<Self> {
        let forward = chain_lengths(graph, |v| {
            (graph.out_degree(v) == 1).then(|| graph.head(graph.out_arcs(v)[0]))
        })?;
        let backward = chain_lengths(graph, |v| {
            (graph.in_degree(v) == 1).then(|| graph.tail(graph.in_arcs(v)[0]))
        })?;
        Ok(Self { backward, forward })
    }

    /// Length of `U(W)` for a non-empty open walk from `start` to `end` with `core_len` arcs.
    pub fn extended_len(&self, start: NodeId, end: NodeId, core_len: usize) -> usize {
        self.backward[start] + core_len + self.forward[end]
    }

    /// Materializes `U(core)` without step caps (lengths are already known to be finite).
    pub fn extend(&self, graph: &Graph, core: &[ArcId]) -> Vec<ArcId> {
        let (Some(&first), Some(&last)) = (core.first(), core.last()) else {
            return Vec::new();
        };
        let start = graph.tail(first);
        let end = graph.head(last);
        let mut arcs = Vec::with_capacity(self.extended_len(start, end, core.len()));
        let mut v = start;
        for _ in 0..self.backward[start] {
            let a = graph.in_arcs(v)[0];
            arcs.push(a);
            v = graph.tail(a);
        }
        arcs.reverse();
        arcs.extend_from_slice(core);
        let mut v = end;
        for _ in 0..self.forward[end] {
            let a = graph.out_arcs(v)[0];
            arcs.push(a);
            v = graph.head(a);
        }
        arcs
    }
}

fn chain_lengths(graph: &Graph, next: impl Fn(NodeId) -> Option<NodeId>) -> Result<Vec<usize>> {
    const UNKNOWN: usize = usize::MAX;
    const ACTIVE: usize = usize::MAX - 1;
    let n = graph.node_count();
    let mut len = vec![UNKNOWN; n];
    let mut chain = Vec::new();
    for root in 0..n {
        let mut v = root;
        let mut base = loop {
            match len[v] {
                UNKNOWN => {}
                ACTIVE => return Err(Error::UnboundedExtension(n)),
                known => break known,
            }
            match next(v) {
                None => {
                    len[v] = 0;
                    break 0;
                }
                Some(w) => {
                    len[v] = ACTIVE;
                    chain.push(v);
                    v = w;
                }
            }
        };
        while let Some(u) = chain.pop() {
            base += 1;
            len[u] = base;
        }
    }
    Ok(len)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bivalent_endpoint_does_not_extend() {
        let g = Graph::bouquet(2);
        let u = univocal_extension(&g, &Walk::open(vec![0])).unwrap();
        assert_eq!(u.arcs(), &[0]);
    }

    #[test]
    fn middle_arc_of_chain_extends_to_branch_nodes() {
        // v0 -> v1 -> v2 -> v3 with v0 split (extra arc 0->3) and v3 join,
        // closed by two parallel arcs 3->0.
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 0), (3, 0)]).unwrap();
        let u = univocal_extension(&g, &Walk::open(vec![1])).unwrap();
        assert_eq!(u.arcs(), &[0, 1, 2]);

        // with a single return arc both chains run on through it
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 0)]).unwrap();
        let u = univocal_extension(&g, &Walk::open(vec![1])).unwrap();
        assert_eq!(u.arcs(), &[4, 0, 1, 2, 4]);
    }

    #[test]
    fn closed_path_is_reported() {
        let g = Graph::cycle(3);
        assert!(matches!(
            univocal_extension(&g, &Walk::open(vec![0])),
            Err(Error::UnboundedExtension(3))
        ));
        assert!(ExtensionLengths::new(&g).is_err());
    }

    #[test]
    fn lengths_agree_with_materialization() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 0)]).unwrap();
        let lengths = ExtensionLengths::new(&g).unwrap();
        for a in g.arcs() {
            let direct = univocal_extension(&g, &Walk::open(vec![a])).unwrap();
            let fast = lengths.extend(&g, &[a]);
            assert_eq!(direct.arcs(), fast.as_slice());
            assert_eq!(
                lengths.extended_len(g.tail(a), g.head(a), 1),
                direct.len()
            );
        }
    }

    #[test]
    fn idempotent() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 0)]).unwrap();
        for a in g.arcs() {
            let once = univocal_extension(&g, &Walk::open(vec![a])).unwrap();
            let twice = univocal_extension(&g, &once).unwrap();
            assert_eq!(once, twice);
        }
    }
}
