//! Exact search parameterized by the vertex cover number: guess the part
//! `Y` of a minimum cover inside the solution, then only whole classes of
//! vertices with the same neighborhood in `Y` need to be considered.

use crate::error::{Error, Result};
use crate::graph::{club_violation, edges_among_sorted, twin_classes, Graph, Vertex, VertexSet};
use crate::param::{best_over, Solution};

pub const MAX_BUDGET: usize = 25;
pub const DEFAULT_CAP: usize = 10;

/// A vertex cover with at most `budget` vertices, found by branching on the
/// endpoints of the lowest uncovered edge.
pub fn vertex_cover_exact(g: &Graph, budget: usize) -> Result<Option<VertexSet>> {
    if budget > MAX_BUDGET {
        return Err(Error::ParameterTooLarge {
            name: "vertex cover budget",
            value: budget,
            cap: MAX_BUDGET,
        });
    }
    let mut cover = VertexSet::empty(g.n());
    Ok(branch(g, budget, &mut cover).then_some(cover))
}

fn branch(g: &Graph, budget: usize, cover: &mut VertexSet) -> bool {
    let uncovered = g.edges().find(|&(u, v)| !cover.contains(u) && !cover.contains(v));
    let Some((u, v)) = uncovered else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for pick in [u, v] {
        cover.insert(pick);
        if branch(g, budget - 1, cover) {
            return true;
        }
        cover.remove(pick);
    }
    false
}

/// Smallest cover of size at most `cap`, if any.
pub fn min_vertex_cover(g: &Graph, cap: usize) -> Result<Option<VertexSet>> {
    for budget in 0..=cap.min(MAX_BUDGET) {
        if let Some(c) = vertex_cover_exact(g, budget)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Maximum vertex r-triangle s-club using a minimum vertex cover of size
/// at most `cap`.
pub fn solve_vc(g: &Graph, r: usize, s: usize, cap: usize) -> Result<Solution> {
    let x = min_vertex_cover(g, cap)?.ok_or(Error::ParameterTooLarge {
        name: "vertex cover",
        value: cap + 1,
        cap,
    })?;
    solve_with_cover(g, &x, r, s)
}

/// Same as [`solve_vc`] with a caller-supplied cover.
pub fn solve_with_cover(g: &Graph, x: &VertexSet, r: usize, s: usize) -> Result<Solution> {
    g.check_set(x)?;
    if let Some((u, v)) = g.edges().find(|&(u, v)| !x.contains(u) && !x.contains(v)) {
        return Err(Error::Contract(format!("edge {{{u}, {v}}} is not covered")));
    }
    if x.len() > 30 {
        return Err(Error::ParameterTooLarge {
            name: "vertex cover",
            value: x.len(),
            cap: 30,
        });
    }
    let cover = x.to_vec();
    let outside = g.all_vertices().difference(x);
    let guesses: Vec<u64> = (0..1u64 << cover.len()).collect();
    Ok(best_over(guesses, g.n(), |mask| {
        let mut y = VertexSet::empty(g.n());
        for (i, &v) in cover.iter().enumerate() {
            if mask >> i & 1 == 1 {
                y.insert(v);
            }
        }
        solve_guess(g, &y, &outside, r, s)
    }))
}

fn solve_guess(g: &Graph, y: &VertexSet, outside: &VertexSet, r: usize, s: usize) -> Solution {
    let mut best = Solution::none(g.n());
    // A vertex outside the cover has all its neighbors in Y, so it needs r
    // edges inside its class key to be in r triangles.
    let classes: Vec<Vec<Vertex>> = twin_classes(g, outside, y)
        .expect("disjoint by construction")
        .into_iter()
        .filter(|c| {
            let key: Vec<Vertex> = g.neighbors(c[0]).iter().copied().filter(|&w| y.contains(w)).collect();
            edges_among_sorted(g, &key) >= r
        })
        .collect();
    if classes.len() > 24 {
        // 2^24 subsets is beyond desk scale; such guesses come from covers far
        // above any sensible cap.
        return best;
    }
    let mut candidate = y.clone();
    for pick in 0u32..1 << classes.len() {
        candidate.clear_to(y.iter());
        for (i, class) in classes.iter().enumerate() {
            if pick >> i & 1 == 1 {
                for &v in class {
                    candidate.insert(v);
                }
            }
        }
        if candidate.len() >= 3 && candidate.len() >= best.best_size && club_violation(g, &candidate, r, s).is_none() {
            best.offer(&candidate);
        }
    }
    best
}
