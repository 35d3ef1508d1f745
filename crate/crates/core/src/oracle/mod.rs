//! Single-arc failure reachability: does `w` reach `h(f)` in `G ∖ f`?
//!
//! Three backends answer the same query:
//!
//! * `bfs` searches `G ∖ f` afresh for every query;
//! * `scc-cache` computes the SCC partition of `G ∖ f` once per arc `f` and
//!   memoizes it. On a strongly connected graph `h(f)` reaches every node in
//!   `G ∖ f` (a path leaving `h(f)` never needs `f`), so the query is a
//!   same-component test;
//! * `fast` preprocesses in near-linear time and answers in `O(1)` from the
//!   dominator tree of `G` rooted at node 0, the dominator tree of the reverse
//!   graph, and the loop nesting forest of a DFS of `G`.
//!
//! For `fast`, with root `s` and `f = (x, y)`: if every path from `s` to `y`
//! uses `f`, the nodes reaching `y` without `f` are exactly `loop(y)`. Otherwise
//! `s` reaches `y` without `f`, and `w` fails only when every path from `w` to
//! `s` uses `f`, which happens iff `f` is a bridge of the reverse flow graph and
//! `x` dominates `w` there.

mod dominators;
mod loops;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{ArcId, Graph, NodeId};
use crate::scc::{components_without, is_strongly_connected};
pub(crate) use dominators::TreeOrder;
use dominators::{immediate_dominators, Dfs};
use loops::loop_nesting_forest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Backend {
    Bfs,
    #[default]
    SccCache,
    Fast,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Bfs, Backend::SccCache, Backend::Fast];
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Bfs => "bfs",
            Backend::SccCache => "scc-cache",
            Backend::Fast => "fast",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bfs" => Ok(Backend::Bfs),
            "scc-cache" => Ok(Backend::SccCache),
            "fast" => Ok(Backend::Fast),
            other => Err(Error::Input(format!(
                "unknown backend '{other}' (expected bfs, scc-cache or fast)"
            ))),
        }
    }
}

enum State {
    Bfs,
    SccCache(Vec<OnceLock<Vec<u32>>>),
    Fast(Box<FastState>),
}

struct FastState {
    /// `f = (x, y)` is a bridge of the flow graph `(G, 0)`.
    forward_bridge: Vec<bool>,
    /// Reversed `f` is a bridge of `(G^R, 0)`.
    reverse_bridge: Vec<bool>,
    loops: TreeOrder,
    reverse_dominators: TreeOrder,
}

/// Failure-reachability oracle over a strongly connected graph.
pub struct FailureOracle<'g> {
    graph: &'g Graph,
    backend: Backend,
    state: State,
    queries: AtomicU64,
    steps: AtomicU64,
    traversals: AtomicU64,
    preprocessing_steps: u64,
}

impl fmt::Debug for FailureOracle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FailureOracle")
            .field("backend", &self.backend)
            .field("nodes", &self.graph.node_count())
            .field("arcs", &self.graph.arc_count())
            .finish()
    }
}

/// Builds an oracle; rejects graphs that are not strongly connected.
pub fn build_oracle(graph: &Graph, backend: Backend) -> Result<FailureOracle<'_>> {
    if !is_strongly_connected(graph) {
        return Err(Error::NotStronglyConnected);
    }
    let (state, preprocessing_steps) = match backend {
        Backend::Bfs => (State::Bfs, 0),
        Backend::SccCache => (
            State::SccCache((0..graph.arc_count()).map(|_| OnceLock::new()).collect()),
            0,
        ),
        Backend::Fast => {
            let (fast, steps) = FastState::new(graph);
            (State::Fast(Box::new(fast)), steps)
        }
    };
    Ok(FailureOracle {
        graph,
        backend,
        state,
        queries: AtomicU64::new(0),
        steps: AtomicU64::new(0),
        traversals: AtomicU64::new(0),
        preprocessing_steps,
    })
}

impl<'g> FailureOracle<'g> {
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// Whether `w` reaches `h(f)` in the graph without arc `f`.
    pub fn query(&self, w: NodeId, f: ArcId) -> bool {
        self.queries.fetch_add(1, Ordering::Relaxed);
        let target = self.graph.head(f);
        if w == target {
            return true;
        }
        match &self.state {
            State::Bfs => self.bfs(w, f),
            State::SccCache(memo) => {
                let comp = memo[f].get_or_init(|| {
                    let c = components_without(self.graph, f);
                    self.traversals.fetch_add(1, Ordering::Relaxed);
                    self.steps.fetch_add(c.steps, Ordering::Relaxed);
                    c.component.into_iter().map(|x| x as u32).collect()
                });
                comp[w] == comp[target]
            }
            State::Fast(fast) => {
                if fast.forward_bridge[f] {
                    fast.loops.is_ancestor(target, w)
                } else if fast.reverse_bridge[f] {
                    !fast.reverse_dominators.is_ancestor(self.graph.tail(f), w)
                } else {
                    true
                }
            }
        }
    }

    fn bfs(&self, w: NodeId, f: ArcId) -> bool {
        let target = self.graph.head(f);
        let mut seen = vec![false; self.graph.node_count()];
        let mut queue = VecDeque::from([w]);
        seen[w] = true;
        let mut steps = 0u64;
        let mut found = false;
        'search: while let Some(v) = queue.pop_front() {
            for &a in self.graph.out_arcs(v) {
                steps += 1;
                if a == f {
                    continue;
                }
                let u = self.graph.head(a);
                if u == target {
                    found = true;
                    break 'search;
                }
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        self.traversals.fetch_add(1, Ordering::Relaxed);
        self.steps.fetch_add(steps, Ordering::Relaxed);
        found
    }

    /// Accounts for a search run outside the oracle on its behalf.
    pub(crate) fn record_search(&self, steps: u64) {
        self.traversals.fetch_add(1, Ordering::Relaxed);
        self.steps.fetch_add(steps, Ordering::Relaxed);
    }

    pub fn query_count(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// Full graph traversals run so far (BFS searches or SCC computations).
    pub fn traversal_count(&self) -> u64 {
        self.traversals.load(Ordering::Relaxed)
    }

    /// Arcs examined by traversals so far.
    pub fn traversal_steps(&self) -> u64 {
        self.steps.load(Ordering::Relaxed)
    }

    pub fn preprocessing_steps(&self) -> u64 {
        self.preprocessing_steps
    }
}

impl FastState {
    fn new(graph: &Graph) -> (Self, u64) {
        let root = 0;
        let dfs = Dfs::new(graph, root);
        let (forward_bridge, s1) = bridges(graph, &dfs, root);
        let (parent, s2) = loop_nesting_forest(graph, &dfs);
        let loops = TreeOrder::new(&parent);

        let reversed = graph.reversed();
        let rdfs = Dfs::new(&reversed, root);
        let (reverse_bridge, s3) = bridges(&reversed, &rdfs, root);
        let (ridom, s4) = immediate_dominators(&reversed, &rdfs);
        let reverse_dominators = TreeOrder::new(&ridom);
        (
            Self {
                forward_bridge,
                reverse_bridge,
                loops,
                reverse_dominators,
            },
            s1 + s2 + s3 + s4,
        )
    }
}

/// Arcs `(a, b)` of the flow graph `(graph, root)` that lie on every path from
/// the root to `b`: `idom(b) = a` and every other arc into `b` comes from a node
/// that `b` dominates.
fn bridges(graph: &Graph, dfs: &Dfs, root: NodeId) -> (Vec<bool>, u64) {
    let (idom, steps) = immediate_dominators(graph, dfs);
    let dom = TreeOrder::new(&idom);
    // arcs into b from nodes b does not dominate
    let mut outside = vec![0usize; graph.node_count()];
    for a in graph.arcs() {
        let (z, b) = (graph.tail(a), graph.head(a));
        if !dom.is_ancestor(b, z) {
            outside[b] += 1;
        }
    }
    let bridge = graph
        .arcs()
        .map(|a| {
            let (x, y) = (graph.tail(a), graph.head(a));
            y != root && idom[y] == x && outside[y] == 1
        })
        .collect();
    (bridge, steps + 2 * graph.arc_count() as u64)
}
