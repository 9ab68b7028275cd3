//! Seeded instance generators with checkable structural certificates.
//!
//! Randomness comes from xoshiro256** seeded through SplitMix64, so the
//! same seed gives the same graph on every platform. A Bernoulli(p) trial
//! draws one 64-bit word `x` and succeeds iff `(x >> 11) · 2⁻⁵³ < p`.

use std::collections::BTreeMap;

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::graph::{Graph, Vertex};
use crate::treedecomp::{validate, TreeDecomposition};

pub type Rng = Xoshiro256StarStar;

pub fn rng(seed: u64) -> Rng {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Uniform double in `[0, 1)` from the top 53 bits of one draw.
pub fn unit(rng: &mut Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn bernoulli(rng: &mut Rng, p: f64) -> bool {
    unit(rng) < p
}

/// `x mod bound` of one draw; the modulo bias is accepted for portability.
pub fn below(rng: &mut Rng, bound: usize) -> usize {
    (rng.next_u64() % bound as u64) as usize
}

/// Fisher–Yates from the back, `j = below(i + 1)`.
pub fn shuffle<T>(rng: &mut Rng, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = below(rng, i + 1);
        items.swap(i, j);
    }
}

#[derive(Clone, Debug)]
pub struct GeneratedInstance {
    pub graph: Graph,
    pub decomposition: Option<TreeDecomposition>,
    /// Keys: `width`, `fes`, `apex`.
    pub certificates: BTreeMap<String, usize>,
    pub seed: u64,
}

impl GeneratedInstance {
    fn new(graph: Graph, decomposition: Option<TreeDecomposition>, seed: u64) -> Self {
        let mut certificates = BTreeMap::new();
        certificates.insert("fes".to_string(), graph.m() + graph.components() - graph.n());
        if let Some(td) = &decomposition {
            certificates.insert("width".to_string(), td.width());
        }
        GeneratedInstance {
            graph,
            decomposition,
            certificates,
            seed,
        }
    }

    /// Re-checks every certificate against the graph.
    pub fn verify(&self) -> Result<(), String> {
        let g = &self.graph;
        for (name, &value) in &self.certificates {
            match name.as_str() {
                "fes" => {
                    if value != g.m() + g.components() - g.n() {
                        return Err(format!("fes certificate {value} is wrong"));
                    }
                }
                "width" => {
                    let td = self.decomposition.as_ref().ok_or("width certificate without decomposition")?;
                    validate(td, g).map_err(|v| v.to_string())?;
                    if td.width() != value {
                        return Err(format!("width certificate {value} != {}", td.width()));
                    }
                }
                "apex" => {
                    if value >= g.n() || !crate::param::apex::is_bipartite_without(g, Some(value)) {
                        return Err(format!("apex certificate {value} is wrong"));
                    }
                }
                other => return Err(format!("unknown certificate {other}")),
            }
        }
        Ok(())
    }
}

/// Erdős–Rényi graph: pairs `(u, v)`, `u < v`, visited in lexicographic
/// order, one trial each.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if bernoulli(&mut rng, p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are in range")
}

/// Random partial w-tree with its natural width-w decomposition.
///
/// Starts from a (w+1)-clique; every further vertex picks a random existing
/// bag, keeps w of its vertices and becomes adjacent to them. Every edge
/// except each vertex's first attachment edge survives with probability
/// `edge_keep`. Labels are shuffled at the end with [`shuffle`].
pub fn gen_bounded_treewidth(n: usize, w: usize, edge_keep: f64, seed: u64) -> GeneratedInstance {
    assert!(w < n, "need at least w + 1 vertices");
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    let mut bags: Vec<Vec<Vertex>> = vec![(0..=w).collect()];
    let mut tree = Vec::new();
    for v in 1..=w {
        for u in 0..v {
            if u == 0 || bernoulli(&mut rng, edge_keep) {
                edges.push((u, v));
            }
        }
    }
    for v in w + 1..n {
        let host = below(&mut rng, bags.len());
        let mut clique = bags[host].clone();
        let drop = below(&mut rng, clique.len());
        clique.remove(drop);
        for (i, &u) in clique.iter().enumerate() {
            if i == 0 || bernoulli(&mut rng, edge_keep) {
                edges.push((u, v));
            }
        }
        clique.push(v);
        bags.push(clique);
        tree.push((host, bags.len() - 1));
    }
    let mut label: Vec<Vertex> = (0..n).collect();
    shuffle(&mut rng, &mut label);
    let graph = Graph::from_edges(n, edges.iter().map(|&(u, v)| (label[u], label[v]))).expect("in range");
    let bags = bags.into_iter().map(|b| b.into_iter().map(|v| label[v]).collect()).collect();
    GeneratedInstance::new(graph, Some(TreeDecomposition::new(bags, tree)), seed)
}

/// Random bipartite graph on `n_left + n_right` vertices plus an apex (the
/// last id) joined to each other vertex with probability `apex_degree_p`.
pub fn gen_apex_bipartite(n_left: usize, n_right: usize, p: f64, apex_degree_p: f64, seed: u64) -> GeneratedInstance {
    let mut rng = rng(seed);
    let apex = n_left + n_right;
    let mut edges = Vec::new();
    for u in 0..n_left {
        for v in n_left..apex {
            if bernoulli(&mut rng, p) {
                edges.push((u, v));
            }
        }
    }
    for u in 0..apex {
        if bernoulli(&mut rng, apex_degree_p) {
            edges.push((u, apex));
        }
    }
    let graph = Graph::from_edges(apex + 1, edges).expect("in range");
    let mut inst = GeneratedInstance::new(graph, None, seed);
    inst.certificates.insert("apex".to_string(), apex);
    inst
}
