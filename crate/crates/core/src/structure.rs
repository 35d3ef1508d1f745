//! Structural invariants of microtigs, macrotigs and maximal omnitigs, checked
//! directly. Used by the test suites; every check reports violations as text.

use std::collections::{BTreeMap, HashMap};

use crate::classify::Classification;
use crate::graph::{ArcId, Graph, NodeId};
use crate::tigs::{BivalentKind, MacrotigSet};
use crate::verify::{is_omnitig, MAX_BRUTE_NODES};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructureReport {
    pub checks: usize,
    pub violations: Vec<String>,
}

impl StructureReport {
    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(message());
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the microtigs and macrotigs of a compressed graph. The
/// Y-intersection check uses the exhaustive omnitig test and is skipped on
/// graphs with more than [`MAX_BRUTE_NODES`] nodes.
pub fn check_tigs(graph: &Graph, class: &Classification, set: &MacrotigSet) -> StructureReport {
    let mut report = StructureReport::default();
    x_intersection(graph, set, &mut report);
    if graph.node_count() <= MAX_BRUTE_NODES {
        y_intersection(graph, class, set, &mut report);
    }
    occurrence_bounds(set, &mut report);
    precedence_is_acyclic(class, set, &mut report);
    report
}

/// Two distinct central pairs at a bivalent node force in- and out-degree two
/// and share neither arc.
fn x_intersection(graph: &Graph, set: &MacrotigSet, report: &mut StructureReport) {
    let mut pairs: BTreeMap<NodeId, Vec<(ArcId, ArcId)>> = BTreeMap::new();
    for m in &set.microtigs {
        let (f, g) = m.central_pair();
        let at = pairs.entry(graph.head(f)).or_default();
        if !at.contains(&(f, g)) {
            at.push((f, g));
        }
    }
    for (v, at) in pairs {
        if at.len() < 2 {
            continue;
        }
        report.check(
            at.len() == 2 && graph.in_degree(v) == 2 && graph.out_degree(v) == 2,
            || format!("node {v}: central pairs {at:?} with d- = {}, d+ = {}", graph.in_degree(v), graph.out_degree(v)),
        );
        for (i, a) in at.iter().enumerate() {
            for b in &at[i + 1..] {
                report.check(a.0 != b.0 && a.1 != b.1, || format!("node {v}: central pairs {a:?} and {b:?} share an arc"));
            }
        }
    }
}

/// For every prefix `f W g` of a right part with `W` join-free and `g` a split
/// arc, no sibling `g'` of `g` makes `f W g'` an omnitig; symmetrically on the left.
fn y_intersection(graph: &Graph, class: &Classification, set: &MacrotigSet, report: &mut StructureReport) {
    let reversed = graph.reversed();
    let reversed_class = Classification::new(&reversed);
    for m in &set.microtigs {
        let right = &m.arcs[m.f_index..];
        y_intersection_side(graph, class, right, report);
        let left: Vec<ArcId> = m.arcs[..=m.g_index()].iter().rev().copied().collect();
        y_intersection_side(&reversed, &reversed_class, &left, report);
    }
}

fn y_intersection_side(graph: &Graph, class: &Classification, walk: &[ArcId], report: &mut StructureReport) {
    for p in 1..walk.len() {
        if p > 1 && class.is_join_arc(walk[p - 1]) {
            break;
        }
        let g = walk[p];
        if !class.is_split_arc(g) {
            continue;
        }
        let mut candidate = walk[..=p].to_vec();
        for &sibling in graph.out_arcs(graph.tail(g)) {
            if sibling == g {
                continue;
            }
            candidate[p] = sibling;
            report.check(!is_omnitig(graph, &candidate), || {
                format!("{:?} and {candidate:?} are both omnitigs", &walk[..=p])
            });
        }
    }
}

/// A self-bivalent arc appears only as the first or last arc of a macrotig;
/// any other arc appears at most once.
fn occurrence_bounds(set: &MacrotigSet, report: &mut StructureReport) {
    for (id, m) in set.macrotigs.iter().enumerate() {
        let mut positions: HashMap<ArcId, Vec<usize>> = HashMap::new();
        for (p, &a) in m.arcs.iter().enumerate() {
            positions.entry(a).or_default().push(p);
        }
        let last = m.arcs.len() - 1;
        for (a, ps) in positions {
            let ok = if set.bivalent_kind[a] == Some(BivalentKind::SelfBivalent) {
                ps.iter().all(|&p| p == 0 || p == last)
            } else {
                ps.len() == 1
            };
            report.check(ok, || format!("macrotig {id}: arc {a} at positions {ps:?}"));
        }
    }
}

/// `g ≺ g'` for consecutive non-self-bivalent split arcs along a macrotig; the
/// relation has no cycle.
fn precedence_is_acyclic(class: &Classification, set: &MacrotigSet, report: &mut StructureReport) {
    let mut succ: HashMap<ArcId, Vec<ArcId>> = HashMap::new();
    let mut indegree: HashMap<ArcId, usize> = HashMap::new();
    for m in &set.macrotigs {
        let splits: Vec<ArcId> = m
            .arcs
            .iter()
            .copied()
            .filter(|&a| class.is_split_arc(a) && set.bivalent_kind[a] != Some(BivalentKind::SelfBivalent))
            .collect();
        for w in splits.windows(2) {
            if w[0] != w[1] {
                succ.entry(w[0]).or_default().push(w[1]);
                *indegree.entry(w[1]).or_default() += 1;
                indegree.entry(w[0]).or_default();
            }
        }
    }
    let total = indegree.len();
    let mut ready: Vec<ArcId> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&a, _)| a).collect();
    let mut seen = 0;
    while let Some(a) = ready.pop() {
        seen += 1;
        for &b in succ.get(&a).into_iter().flatten() {
            let d = indegree.get_mut(&b).expect("registered");
            *d -= 1;
            if *d == 0 {
                ready.push(b);
            }
        }
    }
    report.check(seen == total, || format!("precedence relation has a cycle among {} split arcs", total - seen));
}

/// No omnitig traverses a join or split arc twice, nor contains a bivalent node
/// twice as an internal node.
pub fn check_omnitig_walks(graph: &Graph, walks: &[Vec<ArcId>]) -> StructureReport {
    let class = Classification::new(graph);
    let mut report = StructureReport::default();
    for w in walks {
        let mut count: HashMap<ArcId, usize> = HashMap::new();
        for &a in w {
            *count.entry(a).or_default() += 1;
        }
        for (&a, &c) in &count {
            if class.is_join_arc(a) || class.is_split_arc(a) {
                report.check(c == 1, || format!("{w:?} traverses join/split arc {a} {c} times"));
            }
        }
        let mut internal: HashMap<NodeId, usize> = HashMap::new();
        for &a in &w[..w.len().saturating_sub(1)] {
            let v = graph.head(a);
            if class.is_bivalent(v) {
                *internal.entry(v).or_default() += 1;
            }
        }
        for (&v, &c) in &internal {
            report.check(c == 1, || format!("{w:?} has bivalent node {v} internally {c} times"));
        }
    }
    report
}
