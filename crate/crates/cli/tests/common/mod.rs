//! Independent reference implementations on `u64` vertex masks. Nothing
//! here calls into the solver library except to read graph adjacency.

#![allow(dead_code)]

pub mod golden;

use triclub::Graph;

pub struct Masks {
    pub n: usize,
    pub adj: Vec<u64>,
}

impl Masks {
    pub fn new(g: &Graph) -> Self {
        assert!(g.n() <= 64);
        let adj = (0..g.n())
            .map(|u| (0..g.n()).filter(|&v| g.has_edge(u, v)).fold(0u64, |m, v| m | 1 << v))
            .collect();
        Masks { n: g.n(), adj }
    }

    /// Triangles through `v` inside `s`: edges among its neighbours in `s`.
    pub fn triangles(&self, s: u64, v: usize) -> usize {
        let nb = self.adj[v] & s;
        bits(nb).map(|a| (self.adj[a] & nb).count_ones() as usize).sum::<usize>() / 2
    }

    /// Distance-`≤ bound` reachability inside `s` by repeated neighbourhood
    /// expansion.
    pub fn within(&self, s: u64, from: usize, bound: usize) -> u64 {
        let mut reach = 1u64 << from;
        for _ in 0..bound {
            let mut next = reach;
            for u in bits(reach) {
                next |= self.adj[u] & s;
            }
            reach = next;
        }
        reach
    }

    pub fn passes(&self, s: u64, r: usize, bound: usize) -> bool {
        s != 0 && bits(s).all(|v| self.triangles(s, v) >= r && self.within(s, v, bound) & s == s)
    }

    /// Repeatedly drops members with fewer than `r` triangles.
    pub fn peel(&self, mut s: u64, r: usize) -> u64 {
        loop {
            let low = bits(s).find(|&v| self.triangles(s, v) < r);
            match low {
                Some(v) => s &= !(1u64 << v),
                None => return s,
            }
        }
    }

    pub fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Every passing subset of the peeled vertex set.
    pub fn all_passing(&self, r: usize, bound: usize) -> Vec<u64> {
        let core: Vec<usize> = bits(self.peel(self.full(), r)).collect();
        assert!(core.len() <= 24, "reference enumeration too large");
        let mut out = Vec::new();
        for pick in 1u64..1 << core.len() {
            let s = bits(pick).fold(0u64, |m, i| m | 1 << core[i]);
            if self.passes(s, r, bound) {
                out.push(s);
            }
        }
        out
    }

    pub fn best(&self, r: usize, bound: usize) -> usize {
        self.all_passing(r, bound).iter().map(|s| s.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn has_clique(&self, k: usize) -> bool {
        fn grow(m: &Masks, cand: u64, need: usize) -> bool {
            if need == 0 {
                return true;
            }
            bits(cand).any(|v| grow(m, cand & m.adj[v] & !((1u64 << (v + 1)) - 1), need - 1))
        }
        grow(self, self.full(), k)
    }
}

pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub fn mask_of(vs: impl IntoIterator<Item = usize>) -> u64 {
    vs.into_iter().fold(0u64, |m, v| m | 1 << v)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fitted_exponent(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}
