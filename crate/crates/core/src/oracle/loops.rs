// Loop nesting forest of a DFS, by union-find collapsing.
//
// loop(h) is the set of DFS descendants of h that reach h along a path made of
// descendants of h. parent[v] is the innermost header whose loop contains v.
//
// An arc (y, z) can only matter for headers that are ancestors of both ends, so
// it is activated at their nearest common DFS ancestor and then waits on the
// set currently holding z until that set joins a loop body. Every arc is
// consumed once, irreducible entries into collapsed inner loops included.

use super::dominators::Dfs;
use crate::graph::{ArcId, Graph, NodeId};

const NONE: usize = usize::MAX;

pub(crate) fn loop_nesting_forest(graph: &Graph, dfs: &Dfs) -> (Vec<NodeId>, u64) {
    let n = graph.node_count();
    let (bucket, mut steps) = activation_buckets(graph, dfs);
    let mut parent = vec![NONE; n];
    let mut uf: Vec<NodeId> = (0..n).collect();
    let mut pending: Vec<Vec<ArcId>> = vec![Vec::new(); n];
    let mut in_body = vec![false; n];
    let mut body = Vec::new();
    let mut work = Vec::new();

    for &h in dfs.order.iter().rev() {
        for &a in &bucket[h] {
            let r = find(&mut uf, graph.head(a));
            pending[r].push(a);
        }
        work.push(h);
        while let Some(x) = work.pop() {
            for a in std::mem::take(&mut pending[x]) {
                steps += 1;
                let r = find(&mut uf, graph.tail(a));
                if r != h && !in_body[r] {
                    in_body[r] = true;
                    body.push(r);
                    work.push(r);
                }
            }
        }
        for &x in &body {
            in_body[x] = false;
            parent[x] = h;
            uf[x] = h;
        }
        body.clear();
    }
    (parent, steps + dfs.steps)
}

/// Arcs grouped by the nearest common DFS ancestor of their endpoints. Cross
/// arcs are answered offline: when `y` is visited, every finished subtree has
/// been linked to its parent, so the root of `z`'s set is the ancestor sought.
fn activation_buckets(graph: &Graph, dfs: &Dfs) -> (Vec<Vec<ArcId>>, u64) {
    let n = graph.node_count();
    let mut bucket: Vec<Vec<ArcId>> = vec![Vec::new(); n];
    let mut link: Vec<NodeId> = (0..n).collect();
    let mut stack: Vec<NodeId> = Vec::new();
    let mut steps = 0u64;
    for &y in &dfs.order {
        while let Some(&u) = stack.last() {
            if dfs.is_ancestor(u, y) {
                break;
            }
            stack.pop();
            link[u] = dfs.parent[u];
        }
        stack.push(y);
        for &a in graph.out_arcs(y) {
            steps += 1;
            let z = graph.head(a);
            if dfs.pre[z] == NONE {
                continue;
            }
            let nca = if dfs.is_ancestor(y, z) {
                y
            } else if dfs.is_ancestor(z, y) {
                z
            } else {
                find(&mut link, z)
            };
            bucket[nca].push(a);
        }
    }
    (bucket, steps)
}

fn find(uf: &mut [NodeId], v: NodeId) -> NodeId {
    let mut root = v;
    while uf[root] != root {
        root = uf[root];
    }
    let mut x = v;
    while uf[x] != root {
        let next = uf[x];
        uf[x] = root;
        x = next;
    }
    root
}
