//! Linear kernel in the feedback edge number: at most `3·fes` vertices and
//! `4·fes − 1` edges, for any diameter bound `s`.

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, peel_low_triangle_vertices, Graph, ProblemInstance, Vertex, VertexSet};

/// A spanning forest and the edges left out of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeedbackEdgeDecomposition {
    pub forest_edges: Vec<(Vertex, Vertex)>,
    /// Non-forest edges `(u, v)` with `u < v`, in DFS discovery order.
    pub feedback_edges: Vec<(Vertex, Vertex)>,
    /// Endpoints of the feedback edges.
    pub endpoint_set: VertexSet,
}

impl FeedbackEdgeDecomposition {
    pub fn fes(&self) -> usize {
        self.feedback_edges.len()
    }
}

/// Depth-first spanning forest, roots taken in increasing id order and
/// neighbors explored in increasing order.
pub fn feedback_edge_decomposition(g: &Graph) -> FeedbackEdgeDecomposition {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut disc = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut forest_edges = Vec::new();
    let mut stack: Vec<(Vertex, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = order.len();
        order.push(root);
        stack.push((root, 0));
        while let Some(top) = stack.last_mut() {
            let (u, i) = *top;
            if i == g.degree(u) {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let w = g.neighbors(u)[i];
            if disc[w] == usize::MAX {
                disc[w] = order.len();
                order.push(w);
                parent[w] = u;
                forest_edges.push((u.min(w), u.max(w)));
                stack.push((w, 0));
            }
        }
    }
    let mut feedback_edges = Vec::new();
    let mut endpoint_set = VertexSet::empty(n);
    for &u in &order {
        for &w in g.neighbors(u) {
            if disc[w] < disc[u] && parent[u] != w {
                feedback_edges.push((u.min(w), u.max(w)));
                endpoint_set.insert(u);
                endpoint_set.insert(w);
            }
        }
    }
    FeedbackEdgeDecomposition {
        forest_edges,
        feedback_edges,
        endpoint_set,
    }
}

/// The vertex outside the endpoint set that closes a triangle with the
/// feedback edge `e`, if any. Such a vertex is necessarily the middle of the
/// forest path between the endpoints, hence unique; finding two means the
/// decomposition is not a spanning forest.
pub fn satisfied_vertex(g: &Graph, fed: &FeedbackEdgeDecomposition, e: (Vertex, Vertex)) -> Result<Option<Vertex>> {
    let (u, v) = (e.0.min(e.1), e.0.max(e.1));
    if !fed.feedback_edges.contains(&(u, v)) {
        return Err(Error::Contract(format!("{{{u}, {v}}} is not a feedback edge")));
    }
    let mut found = None;
    for &w in g.neighbors(u) {
        if w != v && !fed.endpoint_set.contains(w) && g.has_edge(w, v) {
            if let Some(prev) = found {
                return Err(Error::Internal(format!(
                    "feedback edge {{{u}, {v}}} satisfies both {prev} and {w}"
                )));
            }
            found = Some(w);
        }
    }
    Ok(found)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelCase {
    /// `r` exceeds the feedback edge number: every solution lies inside the
    /// endpoint set.
    RExceedsFes,
    Main,
}

#[derive(Clone, Debug)]
pub struct KernelResult {
    pub instance: ProblemInstance,
    /// `kept_vertices[kernel id] = original id`; empty for the trivial no-instance.
    pub kept_vertices: Vec<Vertex>,
    /// The kernel is the fixed diamond no-instance with `r = 3`, `ell = 4`.
    pub trivial_no: bool,
    pub case_taken: KernelCase,
    /// Feedback edge number after removing triangle-free vertices.
    pub fes: usize,
}

/// The canonical no-instance: a diamond cannot host a set where every vertex
/// lies in three triangles.
pub fn trivial_no_instance(s: usize) -> ProblemInstance {
    let diamond = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).expect("static graph");
    ProblemInstance::new(diamond, 3, s, 4).expect("static parameters")
}

pub fn kernelize(inst: &ProblemInstance) -> Result<KernelResult> {
    let core = peel_low_triangle_vertices(&inst.graph, 1);
    let peeled = induced_subgraph(&inst.graph, &core)?;
    let g = &peeled.graph;
    let fed = feedback_edge_decomposition(g);
    let fes = fed.fes();

    if inst.r > fes {
        if inst.ell > fed.endpoint_set.len() {
            return Ok(KernelResult {
                instance: trivial_no_instance(inst.s),
                kept_vertices: Vec::new(),
                trivial_no: true,
                case_taken: KernelCase::RExceedsFes,
                fes,
            });
        }
        return restrict(inst, &peeled.to_original, g, &fed.endpoint_set, KernelCase::RExceedsFes, fes);
    }

    let mut keep = fed.endpoint_set.clone();
    for &e in &fed.feedback_edges {
        if let Some(w) = satisfied_vertex(g, &fed, e)? {
            keep.insert(w);
        }
    }
    restrict(inst, &peeled.to_original, g, &keep, KernelCase::Main, fes)
}

fn restrict(
    inst: &ProblemInstance,
    to_original: &[Vertex],
    g: &Graph,
    keep: &VertexSet,
    case_taken: KernelCase,
    fes: usize,
) -> Result<KernelResult> {
    let sub = induced_subgraph(g, keep)?;
    let kept_vertices = sub.to_original.iter().map(|&v| to_original[v]).collect();
    Ok(KernelResult {
        instance: ProblemInstance::new(sub.graph, inst.r, inst.s, inst.ell)?,
        kept_vertices,
        trivial_no: false,
        case_taken,
        fes,
    })
}
