use std::collections::VecDeque;

use crate::codes::LinearCode;

/// Length of the shortest cycle of the Tanner graph, `None` when acyclic.
///
/// Breadth-first search from every node; a non-tree edge met while
/// exploring from a root closes a cycle of length `d(u) + d(v) + 1`, and the
/// minimum over all roots is the girth.
pub fn girth(code: &LinearCode) -> Option<usize> {
    let n = code.n();
    let r = code.r();
    // nodes 0..n are variables, n..n+r checks
    let neighbors = |v: usize| -> &[usize] {
        if v < n {
            &code.var_neighbors()[v]
        } else {
            &code.check_neighbors()[v - n]
        }
    };
    let offset = |v: usize, u: usize| if v < n { u + n } else { u };

    let total = n + r;
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut queue = VecDeque::new();
    for root in 0..total {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            if 2 * dist[v] >= best {
                break;
            }
            for &raw in neighbors(v) {
                let u = offset(v, raw);
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    parent[u] = v;
                    queue.push_back(u);
                } else if parent[v] != u {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}
