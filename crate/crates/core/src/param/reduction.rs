//! Reduction from Clique (with a vertex cover `X` of the input) to the
//! r = 1, s = 2 problem whose output has a vertex cover of size
//! `|E(G[X])|`.
//!
//! Layout of the output ids: the groups `Y_1, …, Y_|X|` of `n` vertices
//! each, then one vertex `e_ij` per edge of `G[X]`, then `V ∖ X`.

use crate::error::{Error, Result};
use crate::graph::{Graph, ProblemInstance, Vertex, VertexSet};

#[derive(Clone, Debug)]
pub struct Reduction {
    pub instance: ProblemInstance,
    /// Output ids of the edge vertices; they form a vertex cover.
    pub edge_vertices: VertexSet,
    /// Output ids of the groups, one range per cover vertex.
    pub groups: Vec<std::ops::Range<Vertex>>,
}

pub fn clique_to_vt1_reduction(g: &Graph, x: &VertexSet, ell: usize) -> Result<Reduction> {
    g.check_set(x)?;
    if ell < 5 {
        return Err(Error::Contract(format!("clique size {ell} is below 5")));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| !x.contains(u) && !x.contains(v)) {
        return Err(Error::Contract(format!("edge {{{u}, {v}}} is not covered")));
    }
    let n = g.n();
    let cover = x.to_vec();
    let k = cover.len();
    let mut cover_edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if g.has_edge(cover[i], cover[j]) {
                cover_edges.push((i, j));
            }
        }
    }
    let e_base = k * n;
    let z_base = e_base + cover_edges.len();
    let rest: Vec<Vertex> = g.vertices().filter(|&v| !x.contains(v)).collect();
    let total = z_base + rest.len();

    let mut edges = Vec::new();
    for (a, &(i, j)) in cover_edges.iter().enumerate() {
        let e = e_base + a;
        for b in a + 1..cover_edges.len() {
            edges.push((e, e_base + b));
        }
        for t in 0..n {
            edges.push((e, i * n + t));
            edges.push((e, j * n + t));
        }
        for (c, &u) in rest.iter().enumerate() {
            if g.has_edge(u, cover[i]) && g.has_edge(u, cover[j]) {
                edges.push((e, z_base + c));
            }
        }
    }
    let graph = Graph::from_edges(total, edges)?;
    let ell_prime = (ell - 1) * n + cover_edges.len() + 1;
    Ok(Reduction {
        instance: ProblemInstance::new(graph, 1, 2, ell_prime)?,
        edge_vertices: VertexSet::from_vertices(total, e_base..z_base)?,
        groups: (0..k).map(|i| i * n..(i + 1) * n).collect(),
    })
}
