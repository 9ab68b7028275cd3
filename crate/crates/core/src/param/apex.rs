//! Polynomial algorithm when deleting one vertex `x` leaves a bipartite
//! graph. Every triangle then passes through `x`, so a solution is `x`
//! plus neighbors of `x` that have a neighbor in `N(x)`, trimmed until each
//! has `r` such neighbors.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{club_violation, Graph, Vertex, VertexSet};
use crate::param::Solution;

/// BFS two-coloring of `G − skip`.
pub fn is_bipartite_without(g: &Graph, skip: Option<Vertex>) -> bool {
    let mut color = vec![u8::MAX; g.n()];
    for s in g.vertices() {
        if Some(s) == skip || color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if Some(w) == skip {
                    continue;
                }
                if color[w] == u8::MAX {
                    color[w] = color[u] ^ 1;
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Lowest `x` with `G − x` bipartite.
pub fn find_apex(g: &Graph) -> Option<Vertex> {
    g.vertices().find(|&x| is_bipartite_without(g, Some(x)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApexResult {
    pub solution: Solution,
    /// Elementary steps (adjacency entries scanned), for scaling checks.
    pub ops: u64,
}

pub fn solve_apex(g: &Graph, x: Vertex, r: usize) -> Result<ApexResult> {
    g.check_vertex(x)?;
    if !is_bipartite_without(g, Some(x)) {
        return Err(Error::Contract(format!("removing {x} does not leave a bipartite graph")));
    }
    let mut ops = 0u64;
    let mut in_nx = vec![false; g.n()];
    for &u in g.neighbors(x) {
        in_nx[u] = true;
    }
    // deg[u] = neighbors of u inside the current D = triangles of u in G[D + x].
    let mut alive = vec![false; g.n()];
    let mut deg = vec![0usize; g.n()];
    for &u in g.neighbors(x) {
        for &w in g.neighbors(u) {
            ops += 1;
            if in_nx[w] {
                deg[u] += 1;
            }
        }
        alive[u] = deg[u] > 0;
    }
    let mut x_triangles: usize = g.neighbors(x).iter().filter(|&&u| alive[u]).map(|&u| deg[u]).sum::<usize>() / 2;

    let mut queue: VecDeque<Vertex> = g.neighbors(x).iter().copied().filter(|&u| alive[u] && deg[u] < r).collect();
    let mut queued = vec![false; g.n()];
    for &u in &queue {
        queued[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        alive[u] = false;
        for &w in g.neighbors(u) {
            ops += 1;
            if alive[w] && w != x {
                deg[w] -= 1;
                x_triangles -= 1;
                if deg[w] < r && !queued[w] {
                    queued[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    if x_triangles < r {
        return Ok(ApexResult {
            solution: Solution::none(g.n()),
            ops,
        });
    }
    let mut set = VertexSet::empty(g.n());
    set.insert(x);
    for &u in g.neighbors(x) {
        if alive[u] {
            set.insert(u);
        }
    }
    if club_violation(g, &set, r, 2).is_some() {
        return Err(Error::Internal("apex candidate failed verification".into()));
    }
    Ok(ApexResult {
        solution: Solution {
            best_size: set.len(),
            witness: set,
        },
        ops,
    })
}
