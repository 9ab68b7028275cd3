//! XP algorithm in the h-index for s = 2.
//!
//! With `X` the `k` vertices of largest degree, every other vertex has
//! degree at most `k`. Guess `Y = S ∩ X`, group `V ∖ X` by neighborhood in
//! `Y`, and guess which groups meet the solution. A present group whose
//! members are guaranteed to be within distance two of everything else via
//! `Y` is taken whole and trimmed by triangle peeling; for the remaining
//! present groups the solution's part is guessed inside a small ball around
//! its smallest member.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{club_violation, peel_protected, twin_classes, Graph, Vertex, VertexSet};
use crate::param::{best_over, Solution};

pub const DEFAULT_CAP: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HIndexDecomposition {
    pub k: usize,
    /// The `k` vertices of largest degree, ties to the lower id.
    pub x: Vec<Vertex>,
}

pub fn h_index(g: &Graph) -> HIndexDecomposition {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let k = order
        .iter()
        .enumerate()
        .take_while(|&(i, &v)| g.degree(v) > i)
        .count();
    let mut x = order[..k].to_vec();
    x.sort_unstable();
    HIndexDecomposition { k, x }
}

/// Maximum vertex r-triangle 2-club; refuses graphs with h-index above `cap`.
pub fn solve_hindex(g: &Graph, r: usize, cap: usize) -> Result<Solution> {
    let h = h_index(g);
    if h.k > cap {
        return Err(Error::ParameterTooLarge {
            name: "h-index",
            value: h.k,
            cap,
        });
    }
    let x = VertexSet::from_vertices(g.n(), h.x.iter().copied())?;
    let outside = g.all_vertices().difference(&x);
    let guesses: Vec<u64> = (0..1u64 << h.k).collect();
    Ok(best_over(guesses, g.n(), |mask| {
        let mut y = VertexSet::empty(g.n());
        for (i, &v) in h.x.iter().enumerate() {
            if mask >> i & 1 == 1 {
                y.insert(v);
            }
        }
        solve_guess(g, &x, &y, &outside, r)
    }))
}

struct Class {
    members: Vec<Vertex>,
    key: VertexSet,
}

fn solve_guess(g: &Graph, x: &VertexSet, y: &VertexSet, outside: &VertexSet, r: usize) -> Solution {
    let mut best = Solution::none(g.n());
    let classes: Vec<Class> = twin_classes(g, outside, y)
        .expect("disjoint by construction")
        .into_iter()
        .map(|members| {
            let key = VertexSet::from_vertices(g.n(), g.neighbors(members[0]).iter().copied().filter(|&w| y.contains(w)))
                .expect("in range");
            Class { members, key }
        })
        .collect();
    let q = classes.len();
    if q > 24 {
        return best;
    }
    if q == 0 {
        if y.len() >= 3 && club_violation(g, y, r, 2).is_none() {
            best.offer(y);
        }
        return best;
    }

    for present in 0u32..1 << q {
        let chosen: Vec<usize> = (0..q).filter(|&i| present >> i & 1 == 1).collect();
        let mut whole = VertexSet::empty(g.n());
        let mut guessed: Vec<Vec<Vec<Vertex>>> = Vec::new();
        for &i in &chosen {
            let c = &classes[i];
            let conflict = chosen.iter().any(|&j| j != i && classes[j].key.is_disjoint(&c.key));
            let covers_y = y
                .iter()
                .all(|t| c.key.contains(t) || c.key.iter().any(|u| g.has_edge(t, u)));
            if !c.key.is_empty() && !conflict && covers_y {
                for &v in &c.members {
                    whole.insert(v);
                }
            } else {
                let radius = if c.key.is_empty() {
                    2
                } else if conflict {
                    4
                } else {
                    usize::MAX
                };
                guessed.push(parts_of_class(g, x, &c.members, radius));
            }
        }
        if guessed.iter().any(Vec::is_empty) {
            continue;
        }
        // Odometer over one guessed part per uncertain class.
        let mut pick = vec![0usize; guessed.len()];
        loop {
            let mut fixed = y.clone();
            for (slot, &p) in guessed.iter().zip(&pick) {
                for &v in &slot[p] {
                    fixed.insert(v);
                }
            }
            let start = fixed.union(&whole);
            let kept = peel_protected(g, &start, &fixed, r);
            if kept.len() >= 3.max(best.best_size) && club_violation(g, &kept, r, 2).is_none() {
                best.offer(&kept);
            }
            let mut i = 0;
            while i < pick.len() {
                pick[i] += 1;
                if pick[i] < guessed[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                break;
            }
        }
    }
    best
}

/// All subsets of `members` whose smallest element `m` is such that every
/// element lies within `radius` of `m` in `G − X`.
fn parts_of_class(g: &Graph, x: &VertexSet, members: &[Vertex], radius: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for (i, &rep) in members.iter().enumerate() {
        let ball = ball_outside(g, x, rep, radius);
        let pool: Vec<Vertex> = members[i + 1..].iter().copied().filter(|v| ball.contains(*v)).collect();
        if pool.len() > 20 {
            continue;
        }
        for mask in 0u32..1 << pool.len() {
            let mut part = vec![rep];
            part.extend((0..pool.len()).filter(|&j| mask >> j & 1 == 1).map(|j| pool[j]));
            out.push(part);
        }
    }
    out
}

fn ball_outside(g: &Graph, x: &VertexSet, center: Vertex, radius: usize) -> VertexSet {
    let mut seen = VertexSet::empty(g.n());
    seen.insert(center);
    let mut queue = VecDeque::from([(center, 0usize)]);
    while let Some((u, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        for &w in g.neighbors(u) {
            if !x.contains(w) && !seen.contains(w) {
                seen.insert(w);
                queue.push_back((w, d + 1));
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::oracle::max_club_bruteforce;
    use crate::testkit::gen_gnp;

    #[test]
    fn h_index_examples() {
        assert_eq!(h_index(&star(5)).k, 1);
        assert_eq!(h_index(&star(5)).x, vec![0]);
        assert_eq!(h_index(&complete(4)).k, 3);
        let p4 = h_index(&path(4));
        assert_eq!(p4.k, 2);
        assert_eq!(p4.x, vec![1, 2]);
        assert_eq!(h_index(&Graph::empty(3)).k, 0);
    }

    #[test]
    fn h_index_is_monotone_under_deletion() {
        for seed in 0..40 {
            let g = gen_gnp(12, 0.4, seed);
            let k = h_index(&g).k;
            assert!(k <= g.max_degree());
            for v in g.vertices() {
                let rest = crate::graph::induced_subgraph(&g, &g.all_vertices().difference(&set(12, &[v]))).unwrap();
                assert!(h_index(&rest.graph).k <= k);
            }
        }
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_hindex(&complete(4), 3, 3).unwrap().best_size, 4);
        assert_eq!(solve_hindex(&cycle(5), 1, 3).unwrap().best_size, 0);
        assert_eq!(solve_hindex(&bowtie(), 1, 3).unwrap().best_size, 5);
        assert!(matches!(solve_hindex(&complete(6), 1, 3), Err(Error::ParameterTooLarge { .. })));
    }

    #[test]
    fn matches_oracle_on_sparse_graphs() {
        let mut checked = 0;
        for seed in 0..400 {
            let g = gen_gnp(10, 0.25, seed);
            if h_index(&g).k > 3 {
                continue;
            }
            checked += 1;
            for r in 1..3 {
                let h = solve_hindex(&g, r, 3).unwrap();
                let oracle = max_club_bruteforce(&g, r, 2, 20).unwrap();
                assert_eq!(h.best_size, oracle.best_size, "seed {seed} r {r}");
            }
        }
        assert!(checked > 50);
    }
}
