// Lengauer-Tarjan dominators (simple version, path compression only)

use crate::graph::{Graph, NodeId};

const NONE: usize = usize::MAX;

/// Preorder of an iterative DFS from `root` over out-arcs, with tree parents.
pub(crate) struct Dfs {
    /// Nodes in preorder.
    pub order: Vec<NodeId>,
    /// Preorder number per node, `NONE` if unreachable.
    pub pre: Vec<usize>,
    /// One past the largest preorder number in each node's subtree.
    pub last: Vec<usize>,
    pub parent: Vec<NodeId>,
    pub steps: u64,
}

impl Dfs {
    pub fn new(graph: &Graph, root: NodeId) -> Self {
        let n = graph.node_count();
        let mut pre = vec![NONE; n];
        let mut last = vec![0; n];
        let mut parent = vec![NONE; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![(root, 0usize)];
        pre[root] = 0;
        order.push(root);
        let mut steps = 0u64;
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            let out = graph.out_arcs(v);
            if *pos < out.len() {
                let w = graph.head(out[*pos]);
                *pos += 1;
                steps += 1;
                if pre[w] == NONE {
                    pre[w] = order.len();
                    order.push(w);
                    parent[w] = v;
                    stack.push((w, 0));
                }
            } else {
                last[v] = order.len();
                stack.pop();
            }
        }
        Self {
            order,
            pre,
            last,
            parent,
            steps,
        }
    }

    /// `a` is a DFS-tree ancestor of `d` (or equal).
    pub fn is_ancestor(&self, a: NodeId, d: NodeId) -> bool {
        self.pre[a] <= self.pre[d] && self.pre[d] < self.last[a]
    }
}

/// Immediate dominators of the flow graph `(graph, root)`. `idom[root]` and
/// unreachable nodes are `usize::MAX`.
pub(crate) fn immediate_dominators(graph: &Graph, dfs: &Dfs) -> (Vec<NodeId>, u64) {
    let n = graph.node_count();
    let count = dfs.order.len();
    let mut steps = 0u64;
    // everything below is indexed by preorder number
    let mut semi: Vec<usize> = (0..count).collect();
    let mut idom = vec![NONE; count];
    let mut ancestor = vec![NONE; count];
    let mut label: Vec<usize> = (0..count).collect();
    let mut bucket: Vec<Vec<usize>> = vec![Vec::new(); count];
    let mut path = Vec::new();

    for w in (1..count).rev() {
        let node = dfs.order[w];
        for &a in graph.in_arcs(node) {
            steps += 1;
            let v = dfs.pre[graph.tail(a)];
            if v == NONE {
                continue;
            }
            let u = eval(v, &mut ancestor, &mut label, &semi, &mut path);
            if semi[u] < semi[w] {
                semi[w] = semi[u];
            }
        }
        bucket[semi[w]].push(w);
        let p = dfs.pre[dfs.parent[node]];
        ancestor[w] = p;
        for v in std::mem::take(&mut bucket[p]) {
            steps += 1;
            let u = eval(v, &mut ancestor, &mut label, &semi, &mut path);
            idom[v] = if semi[u] < semi[v] { u } else { p };
        }
    }
    for w in 1..count {
        if idom[w] != semi[w] {
            idom[w] = idom[idom[w]];
        }
    }

    let mut result = vec![NONE; n];
    for w in 1..count {
        result[dfs.order[w]] = dfs.order[idom[w]];
    }
    (result, steps + dfs.steps)
}

fn eval(
    v: usize,
    ancestor: &mut [usize],
    label: &mut [usize],
    semi: &[usize],
    path: &mut Vec<usize>,
) -> usize {
    if ancestor[v] == NONE {
        return v;
    }
    // collect the chain up to the node just below the forest root, then compress top-down
    path.clear();
    let mut x = v;
    while ancestor[ancestor[x]] != NONE {
        path.push(x);
        x = ancestor[x];
    }
    while let Some(y) = path.pop() {
        let a = ancestor[y];
        if semi[label[a]] < semi[label[y]] {
            label[y] = label[a];
        }
        ancestor[y] = ancestor[a];
    }
    label[v]
}

/// Pre/post numbering of a forest given by parent pointers, for O(1) ancestor tests.
#[derive(Debug, Clone)]
pub(crate) struct TreeOrder {
    pre: Vec<u32>,
    post: Vec<u32>,
}

impl TreeOrder {
    pub fn new(parent: &[NodeId]) -> Self {
        let n = parent.len();
        let mut child_start = vec![0usize; n + 1];
        for &p in parent.iter().filter(|&&p| p != NONE) {
            child_start[p + 1] += 1;
        }
        for i in 0..n {
            child_start[i + 1] += child_start[i];
        }
        let mut fill = child_start.clone();
        let mut children = vec![0; child_start[n]];
        for (v, &p) in parent.iter().enumerate() {
            if p != NONE {
                children[fill[p]] = v;
                fill[p] += 1;
            }
        }
        let mut pre = vec![0u32; n];
        let mut post = vec![0u32; n];
        let (mut tick_pre, mut tick_post) = (0u32, 0u32);
        let mut stack = Vec::new();
        for root in (0..n).filter(|&v| parent[v] == NONE) {
            pre[root] = tick_pre;
            tick_pre += 1;
            stack.push((root, child_start[root]));
            while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
                if *pos < child_start[v + 1] {
                    let c = children[*pos];
                    *pos += 1;
                    pre[c] = tick_pre;
                    tick_pre += 1;
                    stack.push((c, child_start[c]));
                } else {
                    post[v] = tick_post;
                    tick_post += 1;
                    stack.pop();
                }
            }
        }
        Self { pre, post }
    }

    /// `a` is an ancestor of `d` or equal to it.
    pub fn is_ancestor(&self, a: NodeId, d: NodeId) -> bool {
        self.pre[a] <= self.pre[d] && self.post[d] <= self.post[a]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idoms(n: usize, arcs: &[(usize, usize)]) -> Vec<usize> {
        let g = Graph::new(n, arcs.iter().copied()).unwrap();
        let dfs = Dfs::new(&g, 0);
        immediate_dominators(&g, &dfs).0
    }

    #[test]
    fn diamond() {
        // 0 -> 1, 0 -> 2, 1 -> 3, 2 -> 3, 3 -> 0
        let d = idoms(4, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 0)]);
        assert_eq!(d, vec![NONE, 0, 0, 0]);
    }

    #[test]
    fn classic_example() {
        // Lengauer and Tarjan's example graph, R=0 A=1 B=2 C=3 D=4 E=5 F=6 G=7 H=8 I=9 J=10 K=11 L=12
        let arcs = [
            (0, 1), (0, 2), (0, 3), (1, 4), (2, 1), (2, 4), (2, 5), (3, 6), (3, 7),
            (4, 12), (5, 8), (6, 9), (7, 9), (7, 10), (8, 5), (8, 11), (9, 11),
            (10, 9), (11, 9), (11, 0), (12, 8),
        ];
        let d = idoms(13, &arcs);
        let expected = [NONE, 0, 0, 0, 0, 0, 3, 3, 0, 0, 7, 0, 4];
        assert_eq!(d, expected);
    }

    #[test]
    fn tree_order_ancestors() {
        // 0 -> {1, 2}, 1 -> 3; 4 is a separate root
        let parent = [NONE, 0, 0, 1, NONE];
        let t = TreeOrder::new(&parent);
        assert!(t.is_ancestor(0, 3));
        assert!(t.is_ancestor(3, 3));
        assert!(!t.is_ancestor(2, 3));
        assert!(!t.is_ancestor(0, 4));
    }
}
