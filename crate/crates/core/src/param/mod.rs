//! Algorithms for structurally restricted inputs: small vertex cover, small
//! h-index, and graphs that become bipartite after deleting one vertex.
//! Also the Clique reduction used to rule out polynomial kernels in the
//! vertex cover number.

pub mod apex;
pub mod hindex;
pub mod reduction;
pub mod vertex_cover;

use crate::graph::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub best_size: usize,
    /// Empty when `best_size == 0`.
    pub witness: VertexSet,
}

impl Solution {
    pub(crate) fn none(n: usize) -> Self {
        Solution {
            best_size: 0,
            witness: VertexSet::empty(n),
        }
    }

    /// Keeps the larger witness, the lexicographically smaller on ties.
    pub(crate) fn offer(&mut self, candidate: &VertexSet) {
        let size = candidate.len();
        if size > self.best_size || (size == self.best_size && size > 0 && *candidate < self.witness) {
            self.best_size = size;
            self.witness = candidate.clone();
        }
    }

    pub(crate) fn merge(mut self, other: Solution) -> Solution {
        if other.best_size > 0 {
            self.offer(&other.witness);
        }
        self
    }
}

/// Runs `f` over `items` (in parallel when enabled) and folds the results.
pub(crate) fn best_over<T, F>(items: Vec<T>, n: usize, f: F) -> Solution
where
    T: Send,
    F: Fn(T) -> Solution + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let parts: Vec<Solution> = items.into_par_iter().map(f).collect();
        parts.into_iter().fold(Solution::none(n), Solution::merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).fold(Solution::none(n), Solution::merge)
    }
}
