//! Strongly connected components (iterative Tarjan).

use crate::graph::{ArcId, Graph, NodeId};

const UNVISITED: usize = usize::MAX;

/// SCC partition of a graph, optionally with one arc removed.
#[derive(Debug, Clone)]
pub struct Components {
    /// Component ID per node, numbered in order of completion (reverse topological).
    pub component: Vec<usize>,
    pub count: usize,
    /// Arcs examined while computing the partition.
    pub steps: u64,
}

impl Components {
    pub fn members(&self) -> Vec<Vec<NodeId>> {
        let mut members = vec![Vec::new(); self.count];
        for (v, &c) in self.component.iter().enumerate() {
            members[c].push(v);
        }
        members
    }
}

pub fn strongly_connected_components(graph: &Graph) -> Components {
    tarjan(graph, None)
}

/// Components of `graph` with `removed` deleted.
pub fn components_without(graph: &Graph, removed: ArcId) -> Components {
    tarjan(graph, Some(removed))
}

pub fn is_strongly_connected(graph: &Graph) -> bool {
    graph.node_count() > 0 && tarjan(graph, None).count == 1
}

fn tarjan(graph: &Graph, removed: Option<ArcId>) -> Components {
    let n = graph.node_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut component = vec![UNVISITED; n];
    let mut stack: Vec<NodeId> = Vec::new();
    // (node, position in its out-arc list)
    let mut call: Vec<(NodeId, usize)> = Vec::new();
    let mut next_index = 0;
    let mut count = 0;
    let mut steps = 0u64;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, 0));

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let out = graph.out_arcs(v);
            if *pos < out.len() {
                let arc = out[*pos];
                *pos += 1;
                steps += 1;
                if Some(arc) == removed {
                    continue;
                }
                let w = graph.head(arc);
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }

    Components {
        component,
        count,
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bouquet_and_cycle() {
        assert!(is_strongly_connected(&Graph::bouquet(3)));
        assert!(is_strongly_connected(&Graph::cycle(2)));
        assert!(!is_strongly_connected(&Graph::new(0, []).unwrap()));
    }

    #[test]
    fn two_cycles_one_bridge() {
        let g = Graph::new(4, [(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)]).unwrap();
        let c = strongly_connected_components(&g);
        assert_eq!(c.count, 2);
        assert_eq!(c.component[0], c.component[1]);
        assert_eq!(c.component[2], c.component[3]);
        assert_ne!(c.component[0], c.component[2]);
        assert!(!is_strongly_connected(&g));
    }

    #[test]
    fn removal_splits_cycle() {
        let g = Graph::cycle(3);
        assert_eq!(components_without(&g, 1).count, 3);
        // a parallel arc keeps it connected
        let g = Graph::new(3, [(0, 1), (1, 2), (2, 0), (1, 2)]).unwrap();
        assert_eq!(components_without(&g, 1).count, 1);
    }

    #[test]
    fn deep_path_does_not_overflow() {
        let g = Graph::cycle(200_000);
        assert!(is_strongly_connected(&g));
    }
}
