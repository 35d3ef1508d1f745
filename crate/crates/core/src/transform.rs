//! Graph transformations that produce a compressed, constant-degree graph, and
//! the provenance needed to map its walks back to the input graph.
//!
//! * unitig compression replaces every maximal path with biunivocal interior by one arc;
//! * biunivocal-arc contraction merges the endpoints of every arc whose tail has
//!   out-degree one and whose head has in-degree one;
//! * fan expansion replaces nodes of out-degree (in-degree) `k > 2` by a path of
//!   `k - 1` nodes joined by synthetic arcs.
//!
//! Expanding a walk suppresses fan arcs, splices unitig payloads and re-inserts
//! contracted arcs at the nodes they were merged into.

use std::ops::Range;

use crate::classify::{is_closed_path, Classification};
use crate::error::{Error, Result};
use crate::graph::{ArcId, Graph, NodeId};
use crate::scc::is_strongly_connected;

/// How an arc of a transformed graph came about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcOrigin {
    /// Stands for exactly one source arc.
    Original,
    /// Synthetic arc on a fan path; expands to nothing.
    Fan,
    /// Replaces a path of source arcs.
    Unitig,
}

/// Flat list-of-lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Jagged {
    start: Vec<usize>,
    items: Vec<ArcId>,
}

impl Jagged {
    fn new() -> Self {
        Self {
            start: vec![0],
            items: Vec::new(),
        }
    }

    fn push(&mut self, items: &[ArcId]) {
        self.items.extend_from_slice(items);
        self.start.push(self.items.len());
    }

    fn get(&self, i: usize) -> &[ArcId] {
        &self.items[self.start[i]..self.start[i + 1]]
    }
}

/// A graph derived from a source graph, with per-arc and per-node provenance.
#[derive(Debug, Clone)]
pub struct TransformedGraph {
    pub graph: Graph,
    origin: Vec<ArcOrigin>,
    expansion: Jagged,
    junction: Jagged,
    node_origin: Vec<NodeId>,
    source_nodes: usize,
    source_arcs: usize,
    /// Elementary steps spent building this transformation.
    pub steps: u64,
}

struct Builder {
    arcs: Vec<(NodeId, NodeId)>,
    origin: Vec<ArcOrigin>,
    expansion: Jagged,
    junction: Jagged,
}

impl Builder {
    fn new() -> Self {
        Self {
            arcs: Vec::new(),
            origin: Vec::new(),
            expansion: Jagged::new(),
            junction: Jagged::new(),
        }
    }

    fn push(&mut self, tail: NodeId, head: NodeId, origin: ArcOrigin, expansion: &[ArcId], junction: &[ArcId]) {
        self.arcs.push((tail, head));
        self.origin.push(origin);
        self.expansion.push(expansion);
        self.junction.push(junction);
    }

    fn finish(self, source: &Graph, node_origin: Vec<NodeId>, steps: u64) -> TransformedGraph {
        let graph = Graph::new(node_origin.len(), self.arcs).expect("transformed endpoints in range");
        TransformedGraph {
            graph,
            origin: self.origin,
            expansion: self.expansion,
            junction: self.junction,
            node_origin,
            source_nodes: source.node_count(),
            source_arcs: source.arc_count(),
            steps,
        }
    }
}

impl TransformedGraph {
    /// The trivial transformation.
    pub fn identity(graph: &Graph) -> Self {
        let mut b = Builder::new();
        for a in graph.arcs() {
            b.push(graph.tail(a), graph.head(a), ArcOrigin::Original, &[a], &[]);
        }
        b.finish(graph, graph.nodes().collect(), graph.arc_count() as u64)
    }

    pub fn origin(&self, arc: ArcId) -> ArcOrigin {
        self.origin[arc]
    }

    /// Source arcs this arc stands for (empty for fan arcs).
    pub fn expansion(&self, arc: ArcId) -> &[ArcId] {
        self.expansion.get(arc)
    }

    /// Source arcs re-inserted between this arc and the next non-fan arc of a walk.
    pub fn junction(&self, arc: ArcId) -> &[ArcId] {
        self.junction.get(arc)
    }

    /// Source node a node of the transformed graph descends from.
    pub fn node_origin(&self, node: NodeId) -> NodeId {
        self.node_origin[node]
    }

    pub fn source_node_count(&self) -> usize {
        self.source_nodes
    }

    pub fn source_arc_count(&self) -> usize {
        self.source_arcs
    }

    pub fn fan_arc_count(&self) -> usize {
        self.origin.iter().filter(|&&o| o == ArcOrigin::Fan).count()
    }

    /// True when every arc maps to the same-numbered source arc and nothing was added.
    pub fn is_identity(&self) -> bool {
        self.graph.arc_count() == self.source_arcs
            && self.graph.node_count() == self.source_nodes
            && self.graph.arcs().all(|a| {
                self.origin[a] == ArcOrigin::Original
                    && self.expansion(a) == [a]
                    && self.junction(a).is_empty()
            })
            && self.graph.nodes().all(|v| self.node_origin[v] == v)
    }

    /// Appends the expansion of `arcs` to `out`. `prev` is the last non-fan arc
    /// already expanded, whose junction precedes the next expansion.
    pub fn expand_into(&self, arcs: &[ArcId], out: &mut Vec<ArcId>, prev: &mut Option<ArcId>) {
        for &a in arcs {
            if self.origin[a] == ArcOrigin::Fan {
                continue;
            }
            if let Some(p) = *prev {
                out.extend_from_slice(self.junction(p));
            }
            out.extend_from_slice(self.expansion(a));
            *prev = Some(a);
        }
    }

    /// Expansion of a walk of the transformed graph into a walk of the source graph.
    pub fn expand_walk(&self, arcs: &[ArcId]) -> Result<Vec<ArcId>> {
        crate::walk::check_arcs(&self.graph, arcs)?;
        let mut out = Vec::new();
        self.expand_into(arcs, &mut out, &mut None);
        Ok(out)
    }

    /// Like [`expand_walk`](Self::expand_walk), also returning for every input
    /// position the range its own expansion occupies in the output.
    pub fn expand_with_positions(&self, arcs: &[ArcId]) -> (Vec<ArcId>, Vec<Range<usize>>) {
        let mut out = Vec::new();
        let mut ranges = Vec::with_capacity(arcs.len());
        let mut prev = None;
        for &a in arcs {
            if self.origin[a] == ArcOrigin::Fan {
                ranges.push(out.len()..out.len());
                continue;
            }
            if let Some(p) = prev {
                out.extend_from_slice(self.junction(p));
            }
            let start = out.len();
            out.extend_from_slice(self.expansion(a));
            ranges.push(start..out.len());
            prev = Some(a);
        }
        (out, ranges)
    }

    /// Composes `self` (source -> A) with `next` (A -> B) into source -> B.
    pub fn then(&self, next: &TransformedGraph) -> TransformedGraph {
        assert_eq!(
            next.source_arcs,
            self.graph.arc_count(),
            "composed transformations must chain"
        );
        let mut b = Builder::new();
        let mut exp = Vec::new();
        let mut junc = Vec::new();
        let mut steps = self.steps + next.steps;
        for a in next.graph.arcs() {
            exp.clear();
            junc.clear();
            let all_fan = next
                .expansion(a)
                .iter()
                .all(|&x| self.origin[x] == ArcOrigin::Fan);
            let origin = match next.origin[a] {
                _ if all_fan => ArcOrigin::Fan,
                outer => {
                    let mut prev = None;
                    self.expand_into(next.expansion(a), &mut exp, &mut prev);
                    self.expand_into(next.junction(a), &mut junc, &mut prev);
                    if let Some(p) = prev {
                        junc.extend_from_slice(self.junction(p));
                    }
                    let inner_unitig = next
                        .expansion(a)
                        .iter()
                        .any(|&x| self.origin[x] == ArcOrigin::Unitig);
                    if outer == ArcOrigin::Unitig || inner_unitig || exp.len() != 1 {
                        ArcOrigin::Unitig
                    } else {
                        ArcOrigin::Original
                    }
                }
            };
            steps += (exp.len() + junc.len()) as u64 + 1;
            b.push(next.graph.tail(a), next.graph.head(a), origin, &exp, &junc);
        }
        let node_origin = next
            .node_origin
            .iter()
            .map(|&v| self.node_origin[v])
            .collect();
        let mut tg = b.finish(&Graph::new(0, []).expect("empty"), node_origin, steps);
        tg.source_nodes = self.source_nodes;
        tg.source_arcs = self.source_arcs;
        tg
    }
}

/// Unitig compression. Rejects closed paths, where every node is biunivocal.
pub fn unitig_compress(graph: &Graph) -> Result<TransformedGraph> {
    if is_closed_path(graph) {
        return Err(Error::ClosedPath);
    }
    let class = Classification::new(graph);
    let mut new_id = vec![usize::MAX; graph.node_count()];
    let mut node_origin = Vec::new();
    for v in graph.nodes().filter(|&v| !class.is_biunivocal(v)) {
        new_id[v] = node_origin.len();
        node_origin.push(v);
    }
    let mut b = Builder::new();
    let mut covered = 0usize;
    let mut path = Vec::new();
    for a in graph.arcs() {
        if class.is_biunivocal(graph.tail(a)) {
            continue;
        }
        let tail = new_id[graph.tail(a)];
        let mut v = graph.head(a);
        path.clear();
        path.push(a);
        while class.is_biunivocal(v) {
            let next = graph.out_arcs(v)[0];
            path.push(next);
            v = graph.head(next);
            if path.len() > graph.arc_count() {
                return Err(Error::ClosedPath);
            }
        }
        covered += path.len();
        let origin = if path.len() == 1 {
            ArcOrigin::Original
        } else {
            ArcOrigin::Unitig
        };
        b.push(tail, new_id[v], origin, &path, &[]);
    }
    if covered != graph.arc_count() {
        // some cycle consists of biunivocal nodes only
        return Err(Error::NotStronglyConnected);
    }
    Ok(b.finish(graph, node_origin, covered as u64 + graph.node_count() as u64))
}

/// Contraction of biunivocal arcs. Requires a graph without biunivocal nodes.
pub fn contract_biunivocal_arcs(graph: &Graph) -> Result<TransformedGraph> {
    let class = Classification::new(graph);
    if let Some(v) = graph.nodes().find(|&v| class.is_biunivocal(v)) {
        return Err(Error::NotCompressed(format!("node {v} is biunivocal")));
    }
    // head of a contracted arc -> its tail, which survives
    let mut merged_into = vec![usize::MAX; graph.node_count()];
    for a in graph.arcs().filter(|&a| class.is_biunivocal_arc(a)) {
        merged_into[graph.head(a)] = graph.tail(a);
    }
    let mut new_id = vec![usize::MAX; graph.node_count()];
    let mut node_origin = Vec::new();
    for v in graph.nodes().filter(|&v| merged_into[v] == usize::MAX) {
        new_id[v] = node_origin.len();
        node_origin.push(v);
    }
    let rep = |v: NodeId| {
        if merged_into[v] == usize::MAX {
            new_id[v]
        } else {
            new_id[merged_into[v]]
        }
    };
    let mut b = Builder::new();
    for a in graph.arcs().filter(|&a| !class.is_biunivocal_arc(a)) {
        let h = graph.head(a);
        let junction: &[ArcId] = match graph.out_arcs(h) {
            [only] if class.is_biunivocal_arc(*only) => std::slice::from_ref(only),
            _ => &[],
        };
        b.push(rep(graph.tail(a)), rep(h), ArcOrigin::Original, &[a], junction);
    }
    Ok(b.finish(graph, node_origin, (graph.node_count() + graph.arc_count()) as u64))
}

/// Fan expansion for out-degree, followed by the symmetric expansion for in-degree.
/// Afterwards every node has in- and out-degree at most two.
pub fn constant_degree(graph: &Graph) -> TransformedGraph {
    let out = fan_out(graph);
    let reversed = out.graph.reversed();
    let back = fan_out(&reversed);
    // `back` was built on the reversed graph; flip its arcs back
    let mut b = Builder::new();
    for a in back.graph.arcs() {
        b.push(
            back.graph.head(a),
            back.graph.tail(a),
            back.origin[a],
            back.expansion(a),
            back.junction(a),
        );
    }
    let inward = b.finish(&out.graph, back.node_origin.clone(), back.steps);
    out.then(&inward)
}

fn fan_out(graph: &Graph) -> TransformedGraph {
    let n = graph.node_count();
    let mut tails: Vec<NodeId> = graph.arcs().map(|a| graph.tail(a)).collect();
    let mut node_origin: Vec<NodeId> = graph.nodes().collect();
    let mut fans = Vec::new();
    for v in 0..n {
        let out = graph.out_arcs(v);
        let k = out.len();
        if k <= 2 {
            continue;
        }
        // path v = v_1, v_2, .., v_{k-1}
        let mut path = vec![v];
        for _ in 2..k {
            path.push(node_origin.len());
            node_origin.push(v);
        }
        for (i, &a) in out.iter().enumerate() {
            tails[a] = path[i.min(k - 2)];
        }
        for w in path.windows(2) {
            fans.push((w[0], w[1]));
        }
    }
    let mut b = Builder::new();
    for a in graph.arcs() {
        b.push(tails[a], graph.head(a), ArcOrigin::Original, &[a], &[]);
    }
    for &(t, h) in &fans {
        b.push(t, h, ArcOrigin::Fan, &[], &[]);
    }
    let steps = (graph.arc_count() + fans.len() + n) as u64;
    b.finish(graph, node_origin, steps)
}

/// Options for [`compress_pipeline`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Apply fan expansion so that every degree is at most two.
    pub constant_degree: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            constant_degree: true,
        }
    }
}

/// Unitig compression, then biunivocal-arc contraction, then (optionally) fan
/// expansion. The result is compressed, and of constant degree when requested.
pub fn compress_pipeline(graph: &Graph, options: PipelineOptions) -> Result<TransformedGraph> {
    if !is_strongly_connected(graph) {
        return Err(Error::NotStronglyConnected);
    }
    let unitigs = unitig_compress(graph)?;
    let contracted = contract_biunivocal_arcs(&unitigs.graph)?;
    let mut result = unitigs.then(&contracted);
    if options.constant_degree {
        let fanned = constant_degree(&result.graph);
        result = result.then(&fanned);
    }
    let class = Classification::new(&result.graph);
    if !class.is_compressed() {
        return Err(Error::NotCompressed(
            "transformation left a biunivocal node or arc".into(),
        ));
    }
    if options.constant_degree {
        let g = &result.graph;
        if let Some(v) = g.nodes().find(|&v| g.in_degree(v) > 2 || g.out_degree(v) > 2) {
            return Err(Error::NotCompressed(format!("node {v} has degree above two")));
        }
    }
    Ok(result)
}

/// Removes consecutive duplicates from a list produced in macrotig scan order.
pub fn dedupe_expanded<T: PartialEq>(mut items: Vec<T>) -> Vec<T> {
    items.dedup();
    items
}
