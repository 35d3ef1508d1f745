//! Macronodes, maximal microtigs and maximal macrotigs of a compressed graph.
//!
//! Every function here expects a compressed, strongly connected graph that is
//! not a closed path, and a pair of failure oracles: one over the graph and one
//! over its reversal (same arc IDs), used for the left halves of microtigs.

use std::collections::{HashMap, HashSet};

use crate::classify::Classification;
use crate::error::{Error, Result};
use crate::graph::{ArcId, Graph, NodeId};
use crate::oracle::FailureOracle;
use crate::verify::extends_omnitig;

const NONE: usize = usize::MAX;

/// Partition of the nodes into macronodes, one per bivalent node.
#[derive(Debug, Clone)]
pub struct Macronodes {
    /// Bivalent nodes, ascending.
    pub centers: Vec<NodeId>,
    /// Center of the macronode containing each node.
    pub center_of: Vec<NodeId>,
    /// Tree arc towards the center: the unique in-arc of a split-only node
    /// (`R⁺` side), the unique out-arc of a join-only node (`R⁻` side).
    pub tree_arc: Vec<Option<ArcId>>,
}

impl Macronodes {
    pub fn members(&self, center: NodeId) -> Vec<NodeId> {
        (0..self.center_of.len())
            .filter(|&v| self.center_of[v] == center)
            .collect()
    }

    /// Node lies in `R⁺(center)` (reached from it by a join-free path).
    pub fn in_r_plus(&self, graph: &Graph, v: NodeId) -> bool {
        self.tree_arc[v].is_none_or(|a| graph.head(a) == v)
    }

    /// Node lies in `R⁻(center)` (reaches it by a split-free path).
    pub fn in_r_minus(&self, graph: &Graph, v: NodeId) -> bool {
        self.tree_arc[v].is_none_or(|a| graph.tail(a) == v)
    }
}

/// Macronode partition of a compressed graph.
pub fn compute_macronodes(graph: &Graph, class: &Classification) -> Result<Macronodes> {
    if !class.is_compressed() {
        return Err(Error::NotCompressed(
            "macronodes need a graph without biunivocal nodes or arcs".into(),
        ));
    }
    let n = graph.node_count();
    let mut center_of = vec![NONE; n];
    let mut tree_arc = vec![None; n];
    let centers: Vec<NodeId> = class.bivalent_nodes().collect();
    for &c in &centers {
        center_of[c] = c;
    }
    let mut chain = Vec::new();
    for v in 0..n {
        let mut x = v;
        chain.clear();
        while center_of[x] == NONE {
            if chain.len() > n {
                return Err(Error::NotCompressed(format!(
                    "node {v} reaches no bivalent node"
                )));
            }
            let a = if class.is_split(x) {
                graph.in_arcs(x)[0]
            } else {
                graph.out_arcs(x)[0]
            };
            tree_arc[x] = Some(a);
            chain.push(x);
            x = if class.is_split(x) { graph.tail(a) } else { graph.head(a) };
        }
        let c = center_of[x];
        for &y in &chain {
            center_of[y] = c;
        }
    }
    Ok(Macronodes {
        centers,
        center_of,
        tree_arc,
    })
}

/// Whether a bivalent arc's univocal extension returns to the macronode it left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BivalentKind {
    SelfBivalent,
    CrossBivalent,
}

/// Kind of every bivalent arc (`None` for the others). `U(b)` runs from the
/// center of `t(b)`'s macronode to the center of `h(b)`'s.
pub fn classify_bivalent_arcs(
    graph: &Graph,
    class: &Classification,
    macronodes: &Macronodes,
) -> Vec<Option<BivalentKind>> {
    graph
        .arcs()
        .map(|b| {
            class.is_bivalent_arc(b).then(|| {
                if macronodes.center_of[graph.tail(b)] == macronodes.center_of[graph.head(b)] {
                    BivalentKind::SelfBivalent
                } else {
                    BivalentKind::CrossBivalent
                }
            })
        })
        .collect()
}

/// Out-arcs `e` of `h(walk)` such that `walk e` is an omnitig, where `walk` is
/// an omnitig whose first arc `f` is a join arc. `occurs(x)` tells whether `x`
/// is an arc of `walk`.
///
/// An out-arc `x` whose head reaches `h(f)` in `G ∖ f` starts a forbidden path
/// for every other candidate, unless `x` already occurs in the walk: then that
/// path may end with the very arc it has to avoid, and only an exact search
/// decides.
pub fn omnitig_right_extensions(
    oracle: &FailureOracle<'_>,
    walk: &[ArcId],
    occurs: impl Fn(ArcId) -> bool,
) -> Vec<ArcId> {
    let graph = oracle.graph();
    let f = walk[0];
    let node = graph.head(walk[walk.len() - 1]);
    let mut outside = Vec::new();
    let mut inside = false;
    for &x in graph.out_arcs(node) {
        if oracle.query(graph.head(x), f) {
            if occurs(x) {
                inside = true;
            } else {
                outside.push(x);
            }
        }
    }
    if outside.len() >= 2 || (!inside && !outside.is_empty()) {
        outside.truncate(usize::from(outside.len() == 1));
        return outside;
    }
    let candidates = if outside.is_empty() {
        graph.out_arcs(node).to_vec()
    } else {
        outside
    };
    let mut probe = walk.to_vec();
    candidates
        .into_iter()
        .filter(|&e| {
            probe.push(e);
            let ok = extends_omnitig(graph, &probe);
            probe.pop();
            oracle.record_search((walk.len() * (graph.arc_count() + graph.node_count())) as u64);
            ok
        })
        .collect()
}

/// The unique arc extending the omnitig `walk` to the right, if there is exactly one.
pub fn right_extension(oracle: &FailureOracle<'_>, walk: &[ArcId]) -> Option<ArcId> {
    match omnitig_right_extensions(oracle, walk, |x| walk.contains(&x))[..] {
        [e] => Some(e),
        _ => None,
    }
}

/// `W` such that `f g W` is the maximal right-micro omnitig through the central pair `f g`.
/// `class` may belong to the graph or to its reversal; both have the same bivalent arcs.
pub fn maximal_right_micro_omnitig(
    oracle: &FailureOracle<'_>,
    class: &Classification,
    f: ArcId,
    g: ArcId,
) -> Vec<ArcId> {
    let graph = oracle.graph();
    let mut walk = vec![f, g];
    let mut seen: HashSet<ArcId> = HashSet::from([f, g]);
    while !class.is_bivalent_arc(walk[walk.len() - 1]) && walk.len() < graph.arc_count() + 2 {
        match omnitig_right_extensions(oracle, &walk, |x| seen.contains(&x))[..] {
            [e] => {
                walk.push(e);
                seen.insert(e);
            }
            _ => break,
        }
    }
    walk.split_off(2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Microtig {
    pub arcs: Vec<ArcId>,
    /// Position of the central join arc `f`; `g` sits right after it.
    pub f_index: usize,
    /// Starts with a bivalent arc (rather than stopping for lack of a left extension).
    pub left_bivalent: bool,
    pub right_bivalent: bool,
}

impl Microtig {
    pub fn g_index(&self) -> usize {
        self.f_index + 1
    }

    pub fn central_pair(&self) -> (ArcId, ArcId) {
        (self.arcs[self.f_index], self.arcs[self.f_index + 1])
    }
}

/// All maximal microtigs, scanning bivalent nodes ascending and their in-arcs in list order.
pub fn all_maximal_microtigs(
    forward: &FailureOracle<'_>,
    reverse: &FailureOracle<'_>,
    class: &Classification,
) -> Vec<Microtig> {
    let graph = forward.graph();
    let mut microtigs = Vec::new();
    for u in class.bivalent_nodes() {
        for &f in graph.in_arcs(u) {
            let Some(g) = right_extension(forward, &[f]) else {
                continue;
            };
            // in the reversal g is the join arc and f the split arc
            let left = maximal_right_micro_omnitig(reverse, class, g, f);
            let right = maximal_right_micro_omnitig(forward, class, f, g);
            let mut arcs: Vec<ArcId> = left.iter().rev().copied().collect();
            let f_index = arcs.len();
            arcs.push(f);
            arcs.push(g);
            arcs.extend_from_slice(&right);
            let left_bivalent = class.is_bivalent_arc(arcs[0]);
            let right_bivalent = class.is_bivalent_arc(arcs[arcs.len() - 1]);
            microtigs.push(Microtig {
                arcs,
                f_index,
                left_bivalent,
                right_bivalent,
            });
        }
    }
    microtigs
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Macrotig {
    pub arcs: Vec<ArcId>,
    /// Indices of the merged microtigs, in walk order.
    pub microtigs: Vec<usize>,
    /// Positions of the internal cross-bivalent arcs the microtigs were merged on.
    pub internal_bivalent_positions: Vec<usize>,
    pub join_positions: Vec<usize>,
    pub split_positions: Vec<usize>,
}

/// Maximal macrotigs together with the microtigs they were built from.
#[derive(Debug, Clone)]
pub struct MacrotigSet {
    pub microtigs: Vec<Microtig>,
    pub macrotigs: Vec<Macrotig>,
    pub bivalent_kind: Vec<Option<BivalentKind>>,
    /// Merges that had to be skipped because a cross-bivalent arc started or
    /// ended two microtigs, plus microtig cycles that had to be cut. Zero on
    /// every input the theory covers.
    pub anomalies: usize,
}

/// Merges maximal microtigs on shared cross-bivalent boundary arcs into maximal macrotigs.
pub fn all_maximal_macrotigs(
    forward: &FailureOracle<'_>,
    reverse: &FailureOracle<'_>,
    class: &Classification,
    macronodes: &Macronodes,
) -> MacrotigSet {
    let graph = forward.graph();
    let microtigs = all_maximal_microtigs(forward, reverse, class);
    let bivalent_kind = classify_bivalent_arcs(graph, class, macronodes);
    let is_cross = |a: ArcId| bivalent_kind[a] == Some(BivalentKind::CrossBivalent);

    let mut anomalies = 0;
    let mut starts_with: HashMap<ArcId, usize> = HashMap::new();
    let mut ends_with: HashMap<ArcId, usize> = HashMap::new();
    for (i, m) in microtigs.iter().enumerate() {
        let (first, last) = (m.arcs[0], m.arcs[m.arcs.len() - 1]);
        if is_cross(first) && starts_with.insert(first, i).is_some() {
            anomalies += 1;
        }
        if is_cross(last) && ends_with.insert(last, i).is_some() {
            anomalies += 1;
        }
    }
    let k = microtigs.len();
    let mut next = vec![NONE; k];
    let mut has_prev = vec![false; k];
    for (&b, &i) in &ends_with {
        if let Some(&j) = starts_with.get(&b) {
            next[i] = j;
            has_prev[j] = true;
        }
    }

    let mut used = vec![false; k];
    let mut macrotigs = Vec::new();
    let heads: Vec<usize> = (0..k).filter(|&i| !has_prev[i]).collect();
    let mut emit = |start: usize, used: &mut Vec<bool>, cut: bool| {
        let mut arcs = microtigs[start].arcs.clone();
        let mut parts = vec![start];
        let mut internal = Vec::new();
        used[start] = true;
        let mut i = start;
        while next[i] != NONE && !used[next[i]] {
            i = next[i];
            used[i] = true;
            internal.push(arcs.len() - 1);
            arcs.extend_from_slice(&microtigs[i].arcs[1..]);
            parts.push(i);
        }
        let cycle = next[i] != NONE && cut;
        let join_positions = (0..arcs.len()).filter(|&p| class.is_join_arc(arcs[p])).collect();
        let split_positions = (0..arcs.len()).filter(|&p| class.is_split_arc(arcs[p])).collect();
        macrotigs.push(Macrotig {
            arcs,
            microtigs: parts,
            internal_bivalent_positions: internal,
            join_positions,
            split_positions,
        });
        cycle
    };
    for start in heads {
        emit(start, &mut used, false);
    }
    for start in 0..k {
        if !used[start] && emit(start, &mut used, true) {
            anomalies += 1;
        }
    }

    MacrotigSet {
        microtigs,
        macrotigs,
        bivalent_kind,
        anomalies,
    }
}
