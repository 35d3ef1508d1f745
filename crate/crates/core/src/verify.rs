//! Ground-truth machinery: the forbidden-path omnitig checker, brute-force
//! maximal omnitigs, closed arc-covering walk sampling and random strongly
//! connected graphs.
//!
//! The checker decides whether a walk `e_0 .. e_l` is an omnitig: for all
//! `1 <= i <= j <= l` there must be no non-empty path (possibly closed) from
//! `t(e_j)` to `h(e_{i-1})` whose first arc is not `e_j` and whose last arc is
//! not `e_{i-1}`. A path `a -> b` of two or more arcs leaves `a` to some
//! `u ∉ {a, b}` and enters `b` from some `v ∉ {a, b}`, with `u` reaching `v` in
//! `G - {a, b}`; that reduces the search to one BFS per index pair.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::is_closed_path;
use crate::error::{Error, Result};
use crate::graph::{ArcId, Graph, NodeId};
use crate::oracle::{build_oracle, Backend};
use crate::scc::is_strongly_connected;
use crate::walk::{check_arcs, Walk};

/// Node cap for the brute-force enumeration.
pub const MAX_BRUTE_NODES: usize = 12;
/// Arc cap for the brute-force enumeration.
pub const MAX_BRUTE_ARCS: usize = 25;

/// Certificate that a walk is not an omnitig.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenPathWitness {
    pub i: usize,
    pub j: usize,
    /// Path from `t(e_j)` to `h(e_{i-1})`.
    pub path: Walk,
}

/// `Ok(())` if `walk` is an omnitig, else the witness with the smallest `(i, j)`
/// and, for it, a shortest forbidden path.
pub fn check_omnitig(graph: &Graph, walk: &[ArcId]) -> Result<(), ForbiddenPathWitness> {
    check_pairs(graph, walk, 1..=walk.len().saturating_sub(1), |_| true)
}

pub fn is_omnitig(graph: &Graph, walk: &[ArcId]) -> bool {
    check_omnitig(graph, walk).is_ok()
}

/// Whether `walk` is an omnitig, given that `walk` without its last arc is one:
/// only forbidden paths starting at the last arc are searched.
pub fn extends_omnitig(graph: &Graph, walk: &[ArcId]) -> bool {
    let j = walk.len().saturating_sub(1);
    j == 0 || check_pairs(graph, walk, 1..=j, |jj| jj == j).is_ok()
}

fn check_pairs(
    graph: &Graph,
    walk: &[ArcId],
    i_range: std::ops::RangeInclusive<usize>,
    keep_j: impl Fn(usize) -> bool,
) -> Result<(), ForbiddenPathWitness> {
    let last = walk.len().saturating_sub(1);
    let mut search = PathSearch::new(graph);
    for i in i_range {
        for j in (i..=last).filter(|&j| keep_j(j)) {
            let (x, y) = (walk[j], walk[i - 1]);
            if let Some(path) = search.forbidden_path(graph.tail(x), graph.head(y), x, y) {
                return Err(ForbiddenPathWitness {
                    i,
                    j,
                    path: Walk::open(path),
                });
            }
        }
    }
    Ok(())
}

/// Scratch space for repeated forbidden-path searches.
struct PathSearch<'g> {
    graph: &'g Graph,
    via: Vec<ArcId>,
    seen: Vec<bool>,
    exit: Vec<Option<ArcId>>,
}

impl<'g> PathSearch<'g> {
    fn new(graph: &'g Graph) -> Self {
        let n = graph.node_count();
        Self {
            graph,
            via: vec![usize::MAX; n],
            seen: vec![false; n],
            exit: vec![None; n],
        }
    }

    /// Shortest non-empty path (closed allowed when `a == b`) from `a` to `b`
    /// with first arc `!= first_not` and last arc `!= last_not`.
    fn forbidden_path(&mut self, a: NodeId, b: NodeId, first_not: ArcId, last_not: ArcId) -> Option<Vec<ArcId>> {
        let g = self.graph;
        if let Some(&direct) = g
            .out_arcs(a)
            .iter()
            .find(|&&e| g.head(e) == b && e != first_not && e != last_not)
        {
            return Some(vec![direct]);
        }
        let outside = |v: NodeId| v != a && v != b;
        self.seen.iter_mut().for_each(|s| *s = false);
        self.exit.iter_mut().for_each(|s| *s = None);
        for &e in g.in_arcs(b) {
            let v = g.tail(e);
            if e != last_not && outside(v) && self.exit[v].is_none() {
                self.exit[v] = Some(e);
            }
        }
        let mut queue = VecDeque::new();
        for &e in g.out_arcs(a) {
            let u = g.head(e);
            if e != first_not && outside(u) && !self.seen[u] {
                self.seen[u] = true;
                self.via[u] = e;
                queue.push_back(u);
            }
        }
        while let Some(v) = queue.pop_front() {
            if let Some(last) = self.exit[v] {
                let mut path = vec![last];
                let mut x = v;
                loop {
                    let e = self.via[x];
                    path.push(e);
                    if g.tail(e) == a {
                        break;
                    }
                    x = g.tail(e);
                }
                path.reverse();
                return Some(path);
            }
            for &e in g.out_arcs(v) {
                let u = g.head(e);
                if outside(u) && !self.seen[u] {
                    self.seen[u] = true;
                    self.via[u] = e;
                    queue.push_back(u);
                }
            }
        }
        None
    }
}

fn check_brute_preconditions(graph: &Graph) -> Result<()> {
    if graph.node_count() > MAX_BRUTE_NODES || graph.arc_count() > MAX_BRUTE_ARCS {
        return Err(Error::SizeCap {
            nodes: graph.node_count(),
            arcs: graph.arc_count(),
            max_nodes: MAX_BRUTE_NODES,
            max_arcs: MAX_BRUTE_ARCS,
        });
    }
    if !is_strongly_connected(graph) {
        return Err(Error::NotStronglyConnected);
    }
    if is_closed_path(graph) {
        return Err(Error::ClosedPath);
    }
    Ok(())
}

/// All omnitigs, grown by right extension from every arc (prefixes of omnitigs are omnitigs).
fn all_omnitigs(graph: &Graph) -> Result<HashSet<Vec<ArcId>>> {
    const MAX_OMNITIGS: usize = 1_000_000;
    // join and split arcs occur at most once; between them run biunivocal chains of at most n arcs
    let cap = graph.arc_count() + (graph.arc_count() + 1) * graph.node_count();
    let mut found = HashSet::new();
    let mut stack: Vec<Vec<ArcId>> = graph.arcs().map(|a| vec![a]).collect();
    while let Some(w) = stack.pop() {
        if w.len() > cap {
            return Err(Error::UnboundedExtension(cap));
        }
        let end = graph.head(*w.last().expect("non-empty"));
        for &e in graph.out_arcs(end) {
            let mut next = w.clone();
            next.push(e);
            if extends_omnitig(graph, &next) {
                stack.push(next);
            }
        }
        found.insert(w);
        if found.len() > MAX_OMNITIGS {
            return Err(Error::UnboundedExtension(MAX_OMNITIGS));
        }
    }
    Ok(found)
}

/// Exhaustive maximal omnitigs of a small strongly connected graph that is not a closed path.
pub fn brute_force_maximal_omnitigs(graph: &Graph) -> Result<BTreeSet<Vec<ArcId>>> {
    check_brute_preconditions(graph)?;
    let all = all_omnitigs(graph)?;
    let mut maximal = BTreeSet::new();
    let mut probe = Vec::new();
    'walks: for w in &all {
        let end = graph.head(*w.last().expect("non-empty"));
        for &e in graph.out_arcs(end) {
            probe.clear();
            probe.extend_from_slice(w);
            probe.push(e);
            if all.contains(&probe) {
                continue 'walks;
            }
        }
        let start = graph.tail(w[0]);
        for &e in graph.in_arcs(start) {
            probe.clear();
            probe.push(e);
            probe.extend_from_slice(w);
            if all.contains(&probe) {
                continue 'walks;
            }
        }
        maximal.insert(w.clone());
    }
    Ok(maximal)
}

/// No single-arc extension of `walk` on either side is an omnitig.
pub fn is_maximal_omnitig(graph: &Graph, walk: &[ArcId]) -> bool {
    if walk.is_empty() || !is_omnitig(graph, walk) {
        return false;
    }
    let end = graph.head(walk[walk.len() - 1]);
    let start = graph.tail(walk[0]);
    let mut probe = walk.to_vec();
    for &e in graph.out_arcs(end) {
        probe.push(e);
        if is_omnitig(graph, &probe) {
            return false;
        }
        probe.pop();
    }
    for &e in graph.in_arcs(start) {
        let mut probe = vec![e];
        probe.extend_from_slice(walk);
        if is_omnitig(graph, &probe) {
            return false;
        }
    }
    true
}

/// Closed walk covering every arc: visits uncovered arcs in a seeded random
/// order along shortest connecting paths, then returns to the start.
pub fn sample_closed_arc_covering_walk(graph: &Graph, seed: u64) -> Result<Walk> {
    if !is_strongly_connected(graph) {
        return Err(Error::NotStronglyConnected);
    }
    if graph.arc_count() == 0 {
        return Ok(Walk::empty(0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<ArcId> = graph.arcs().collect();
    order.shuffle(&mut rng);
    let start = graph.tail(order[0]);
    let mut covered = vec![false; graph.arc_count()];
    let mut arcs = Vec::new();
    let mut at = start;
    for &target in &order {
        if covered[target] {
            continue;
        }
        for a in shortest_path(graph, at, graph.tail(target)) {
            covered[a] = true;
            arcs.push(a);
        }
        covered[target] = true;
        arcs.push(target);
        at = graph.head(target);
    }
    debug_assert!(covered.iter().all(|&c| c));
    arcs.extend(shortest_path(graph, at, start));
    let walk = Walk::closed(arcs);
    walk.validate(graph)?;
    Ok(walk)
}

/// Arcs of a BFS shortest path (empty when `from == to`). Callers guarantee reachability.
fn shortest_path(graph: &Graph, from: NodeId, to: NodeId) -> Vec<ArcId> {
    if from == to {
        return Vec::new();
    }
    let mut via = vec![usize::MAX; graph.node_count()];
    let mut seen = vec![false; graph.node_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &a in graph.out_arcs(v) {
            let u = graph.head(a);
            if !seen[u] {
                seen[u] = true;
                via[u] = a;
                if u == to {
                    let mut path = Vec::new();
                    let mut x = to;
                    while x != from {
                        path.push(via[x]);
                        x = graph.tail(via[x]);
                    }
                    path.reverse();
                    return path;
                }
                queue.push_back(u);
            }
        }
    }
    unreachable!("graph is strongly connected")
}

/// Random strongly connected multigraph: a cycle through a random permutation
/// of the nodes plus `m - n` uniform extra arcs (parallels and self-loops
/// allowed), listed in random order.
pub fn random_scc_graph(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if n == 0 || m < n {
        return Err(Error::InfeasibleParameters { nodes: n, arcs: m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<NodeId> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut arcs: Vec<(NodeId, NodeId)> = (0..n).map(|i| (perm[i], perm[(i + 1) % n])).collect();
    for _ in n..m {
        arcs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    arcs.shuffle(&mut rng);
    Graph::new(n, arcs)
}

/// Seeded corpus of small strongly connected graphs that are not closed paths,
/// with `n <= 12` and `m <= 25`.
pub fn random_corpus(count: usize, seed: u64) -> Vec<(u64, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = Vec::with_capacity(count);
    while corpus.len() < count {
        let n = rng.gen_range(1..=MAX_BRUTE_NODES);
        let m = rng.gen_range(n..=MAX_BRUTE_ARCS);
        let graph_seed = rng.gen();
        let g = random_scc_graph(n, m, graph_seed).expect("m >= n >= 1");
        if !is_closed_path(&g) {
            corpus.push((graph_seed, g));
        }
    }
    corpus
}

/// A failure-oracle query on which the backends disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleDisagreement {
    pub w: NodeId,
    pub f: ArcId,
    /// Answers in the order of [`Backend::ALL`].
    pub answers: [bool; 3],
}

/// Asks every backend `queries` uniformly random `(w, f)` questions on a
/// strongly connected graph and returns the queries they disagree on.
pub fn backend_disagreements(graph: &Graph, queries: usize, seed: u64) -> Result<Vec<OracleDisagreement>> {
    let oracles = Backend::ALL.map(|b| build_oracle(graph, b));
    let [a, b, c] = oracles;
    let oracles = [a?, b?, c?];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..queries {
        let w = rng.gen_range(0..graph.node_count());
        let f = rng.gen_range(0..graph.arc_count());
        let answers = [0, 1, 2].map(|i| oracles[i].query(w, f));
        if answers[0] != answers[1] || answers[0] != answers[2] {
            out.push(OracleDisagreement { w, f, answers });
        }
    }
    Ok(out)
}

/// Validates `walk` against `graph`, then checks that it is an omnitig.
pub fn check_walk_is_omnitig(graph: &Graph, walk: &[ArcId]) -> Result<bool> {
    check_arcs(graph, walk)?;
    Ok(is_omnitig(graph, walk))
}
