//! Walks over a [`Graph`], given as arc sequences.

use crate::error::{Error, Result};
use crate::graph::{ArcId, Graph, NodeId};

/// A walk, open or closed. Empty walks are anchored at a node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    arcs: Vec<ArcId>,
    closed: bool,
    anchor: Option<NodeId>,
}

impl Walk {
    pub fn open(arcs: Vec<ArcId>) -> Self {
        Self {
            arcs,
            closed: false,
            anchor: None,
        }
    }

    pub fn closed(arcs: Vec<ArcId>) -> Self {
        Self {
            arcs,
            closed: true,
            anchor: None,
        }
    }

    /// The empty walk sitting at `node`.
    pub fn empty(node: NodeId) -> Self {
        Self {
            arcs: Vec::new(),
            closed: false,
            anchor: Some(node),
        }
    }

    pub fn arcs(&self) -> &[ArcId] {
        &self.arcs
    }

    pub fn into_arcs(self) -> Vec<ArcId> {
        self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn start(&self, graph: &Graph) -> Option<NodeId> {
        match self.arcs.first() {
            Some(&a) => Some(graph.tail(a)),
            None => self.anchor,
        }
    }

    pub fn end(&self, graph: &Graph) -> Option<NodeId> {
        match self.arcs.last() {
            Some(&a) => Some(graph.head(a)),
            None => self.anchor,
        }
    }

    /// Node sequence `v_0 .. v_l`. A closed walk lists its start node again at the end.
    pub fn nodes(&self, graph: &Graph) -> Vec<NodeId> {
        match self.arcs.first() {
            None => self.anchor.into_iter().collect(),
            Some(&first) => std::iter::once(graph.tail(first))
                .chain(self.arcs.iter().map(|&a| graph.head(a)))
                .collect(),
        }
    }

    /// Checks arc IDs and consecutive endpoints against `graph`.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        check_arcs(graph, &self.arcs)?;
        if self.closed {
            let (&first, &last) = self
                .arcs
                .first()
                .zip(self.arcs.last())
                .ok_or_else(|| Error::InvalidWalk("closed walk without arcs".into()))?;
            if graph.head(last) != graph.tail(first) {
                return Err(Error::InvalidWalk(format!(
                    "closed walk ends at {} but starts at {}",
                    graph.head(last),
                    graph.tail(first)
                )));
            }
        }
        if let (None, Some(v)) = (self.arcs.first(), self.anchor) {
            if v >= graph.node_count() {
                return Err(Error::InvalidWalk(format!("anchor node {v} out of range")));
            }
        }
        Ok(())
    }

    /// Whether `self` occurs as a contiguous arc subsequence of `host`.
    /// Closed hosts are matched circularly.
    pub fn is_subwalk_of(&self, host: &Walk) -> bool {
        if host.closed {
            is_circular_subwalk(&self.arcs, &host.arcs)
        } else {
            is_linear_subwalk(&self.arcs, &host.arcs)
        }
    }

    /// The same arcs in reverse order: a walk of the reversed graph.
    pub fn reversed(&self) -> Self {
        let mut arcs = self.arcs.clone();
        arcs.reverse();
        Self {
            arcs,
            closed: self.closed,
            anchor: self.anchor,
        }
    }
}

/// Validates that `arcs` exist and are consecutive in `graph`.
pub fn check_arcs(graph: &Graph, arcs: &[ArcId]) -> Result<()> {
    if let Some(&bad) = arcs.iter().find(|&&a| a >= graph.arc_count()) {
        return Err(Error::InvalidWalk(format!("arc {bad} does not exist")));
    }
    for (i, pair) in arcs.windows(2).enumerate() {
        if graph.head(pair[0]) != graph.tail(pair[1]) {
            return Err(Error::InvalidWalk(format!(
                "arcs {} and {} at positions {} and {} are not consecutive",
                pair[0],
                pair[1],
                i,
                i + 1
            )));
        }
    }
    Ok(())
}

pub fn is_linear_subwalk(needle: &[ArcId], host: &[ArcId]) -> bool {
    needle.is_empty() || host.windows(needle.len()).any(|w| w == needle)
}

/// Subwalk test where `host` is read as a closed walk: positions wrap modulo its length.
pub fn is_circular_subwalk(needle: &[ArcId], host: &[ArcId]) -> bool {
    if needle.is_empty() {
        return true;
    }
    let len = host.len();
    if len == 0 {
        return false;
    }
    (0..len).any(|start| {
        needle
            .iter()
            .enumerate()
            .all(|(k, &a)| host[(start + k) % len] == a)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subwalk_examples() {
        let (a, b) = (0, 1);
        assert!(Walk::open(vec![a]).is_subwalk_of(&Walk::open(vec![a, b])));
        assert!(Walk::open(vec![b, a]).is_subwalk_of(&Walk::closed(vec![a, b])));
        assert!(!Walk::open(vec![b, a]).is_subwalk_of(&Walk::open(vec![a, b])));
        assert!(!Walk::open(vec![a, a]).is_subwalk_of(&Walk::closed(vec![a, b])));
    }

    #[test]
    fn circular_match_may_wrap_more_than_once() {
        assert!(is_circular_subwalk(&[0, 0, 0], &[0]));
        assert!(is_circular_subwalk(&[1, 0, 1, 0], &[0, 1]));
    }

    #[test]
    fn validation() {
        let g = Graph::new(2, [(0, 1), (1, 0), (0, 0)]).unwrap();
        assert!(Walk::open(vec![0, 1, 2, 0]).validate(&g).is_ok());
        assert!(Walk::closed(vec![0, 1]).validate(&g).is_ok());
        assert!(Walk::closed(vec![0]).validate(&g).is_err());
        assert!(Walk::open(vec![0, 0]).validate(&g).is_err());
        assert!(Walk::open(vec![7]).validate(&g).is_err());
        assert!(Walk::empty(1).validate(&g).is_ok());
        assert!(Walk::empty(2).validate(&g).is_err());
    }

    #[test]
    fn node_sequence() {
        let g = Graph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(Walk::open(vec![1, 2]).nodes(&g), vec![1, 2, 0]);
        assert_eq!(Walk::closed(vec![0, 1, 2]).nodes(&g), vec![0, 1, 2, 0]);
        assert_eq!(Walk::empty(2).nodes(&g), vec![2]);
    }
}
