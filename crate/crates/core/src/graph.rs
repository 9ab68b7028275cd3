//! Simple undirected graphs over dense vertex ids, vertex sets, and the
//! primitives every solver shares: induced subgraphs, distances inside a
//! vertex set, triangle counts, solution verification and triangle peeling.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Immutable simple graph with strictly increasing adjacency lists.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph on `0..n`. Duplicate edges collapse; self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(Error::InvalidVertex { vertex: u, n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m2 = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        Ok(Graph { adj, m: m2 / 2 })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|&v| v >= self.n()) {
            Some(v) => Err(Error::InvalidVertex {
                vertex: v,
                n: self.n(),
            }),
            None => Ok(()),
        }
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// A set of vertex ids backed by a fixed-width bit vector.
///
/// Equality, hashing and ordering only look at the members; the order is
/// lexicographic on the ascending member lists, which is what "smallest
/// witness" means throughout the crate.
#[derive(Clone, Default)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        VertexSet { bits }
    }

    /// Collects `vertices` into a set over `0..universe`.
    pub fn from_vertices<I>(universe: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut set = VertexSet::empty(universe);
        for v in vertices {
            if v >= universe {
                return Err(Error::InvalidVertex { vertex: v, n: universe });
            }
            set.bits.insert(v);
        }
        Ok(set)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Inserts `v`, growing the universe if needed.
    pub fn insert(&mut self, v: Vertex) {
        if v >= self.bits.len() {
            self.bits.grow(v + 1);
        }
        self.bits.insert(v);
    }

    /// Replaces the members with `vertices`, keeping the universe.
    pub(crate) fn clear_to<I: IntoIterator<Item = Vertex>>(&mut self, vertices: I) {
        self.bits.clear();
        for v in vertices {
            self.insert(v);
        }
    }

    pub fn remove(&mut self, v: Vertex) {
        if v < self.bits.len() {
            self.bits.set(v, false);
        }
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.grow(other.universe());
        bits.union_with(&other.bits);
        VertexSet { bits }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for v in other.iter() {
            out.remove(v);
        }
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        bits.grow(self.universe());
        VertexSet { bits }
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.iter().eq(other.iter())
    }
}

impl Eq for VertexSet {}

impl Hash for VertexSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for v in self.iter() {
            v.hash(state);
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// One query: find a set of at least `ell` vertices whose induced subgraph
/// has diameter at most `s` and in which every member lies in `r` triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    pub graph: Graph,
    pub r: usize,
    pub s: usize,
    pub ell: usize,
}

impl ProblemInstance {
    /// `ell` may exceed the vertex count; such instances are simply no-instances.
    pub fn new(graph: Graph, r: usize, s: usize, ell: usize) -> Result<Self> {
        if r < 1 {
            return Err(Error::InvalidInstance("r must be at least 1".into()));
        }
        if s < 2 {
            return Err(Error::InvalidInstance("s must be at least 2".into()));
        }
        if ell < 1 {
            return Err(Error::InvalidInstance("ell must be at least 1".into()));
        }
        Ok(ProblemInstance { graph, r, s, ell })
    }
}

/// Induced subgraph together with the ids of its vertices in the host graph.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `to_original[new] = old`, increasing.
    pub to_original: Vec<Vertex>,
}

impl InducedSubgraph {
    pub fn to_local(&self, old: Vertex) -> Option<Vertex> {
        self.to_original.binary_search(&old).ok()
    }

    /// Maps a set of local ids back to host ids.
    pub fn lift(&self, local: &VertexSet, host_n: usize) -> VertexSet {
        let mut out = VertexSet::empty(host_n);
        for v in local.iter() {
            out.insert(self.to_original[v]);
        }
        out
    }
}

pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<InducedSubgraph> {
    g.check_set(s)?;
    let to_original = s.to_vec();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in to_original.iter().enumerate() {
        local[v] = i;
    }
    let mut adj = Vec::with_capacity(to_original.len());
    let mut m2 = 0;
    for &v in &to_original {
        let list: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .filter(|&&w| local[w] != usize::MAX)
            .map(|&w| local[w])
            .collect();
        m2 += list.len();
        adj.push(list);
    }
    Ok(InducedSubgraph {
        graph: Graph { adj, m: m2 / 2 },
        to_original,
    })
}

/// BFS distance; `None` stands for infinity.
pub fn distance(g: &Graph, u: Vertex, v: Vertex) -> Result<Option<usize>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Ok(Some(0));
    }
    let dist = bfs_within(g, u, &|_| true, usize::MAX);
    Ok(dist[v])
}

/// Distances from `source` in the subgraph induced by `member`, explored to
/// depth `limit`.
fn bfs_within(
    g: &Graph,
    source: Vertex,
    member: &dyn Fn(Vertex) -> bool,
    limit: usize,
) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap_or(0);
        if du >= limit {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w].is_none() && member(w) {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Diameter of `G[s]`; `None` when the induced subgraph is disconnected.
pub fn diameter_within(g: &Graph, s: &VertexSet) -> Result<Option<usize>> {
    g.check_set(s)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let member = |v: Vertex| s.contains(v);
    let mut best = 0;
    for u in s.iter() {
        let dist = bfs_within(g, u, &member, usize::MAX);
        for v in s.iter() {
            match dist[v] {
                Some(d) => best = best.max(d),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(best))
}

/// Exact triangle counts of every member of `s` inside `G[s]`.
pub fn triangle_counts(g: &Graph, s: &VertexSet) -> Result<std::collections::BTreeMap<Vertex, usize>> {
    g.check_set(s)?;
    let dense = triangle_counts_dense(g, s);
    Ok(s.iter().map(|v| (v, dense[v])).collect())
}

/// Triangle counts indexed by vertex id; zero for non-members.
pub(crate) fn triangle_counts_dense(g: &Graph, s: &VertexSet) -> Vec<usize> {
    let mut counts = vec![0; g.n()];
    let mut local: Vec<Vertex> = Vec::new();
    for v in s.iter() {
        local.clear();
        local.extend(g.neighbors(v).iter().copied().filter(|&w| s.contains(w)));
        counts[v] = edges_among_sorted(g, &local);
    }
    counts
}

/// Number of edges of `g` with both endpoints in the sorted list `set`.
pub(crate) fn edges_among_sorted(g: &Graph, set: &[Vertex]) -> usize {
    let mut total = 0;
    for (i, &x) in set.iter().enumerate() {
        total += sorted_intersection_count(g.neighbors(x), &set[i + 1..]);
    }
    total
}

pub(crate) fn sorted_intersection_count(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Outcome of checking a candidate set against an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    TooSmall { size: usize, ell: usize },
    DiameterViolated(Vertex, Vertex),
    TriangleViolated(Vertex),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

pub fn verify_solution(inst: &ProblemInstance, s: &VertexSet) -> Result<Verdict> {
    inst.graph.check_set(s)?;
    if s.len() < inst.ell {
        return Ok(Verdict::TooSmall {
            size: s.len(),
            ell: inst.ell,
        });
    }
    Ok(club_violation(&inst.graph, s, inst.r, inst.s).unwrap_or(Verdict::Ok))
}

/// The first violation of the r-triangle s-club conditions, ignoring size.
/// Triangle violations are reported before distance violations, lowest id
/// (or lexicographically smallest pair) first.
pub fn club_violation(g: &Graph, s: &VertexSet, r: usize, s_bound: usize) -> Option<Verdict> {
    let counts = triangle_counts_dense(g, s);
    if let Some(v) = s.iter().find(|&v| counts[v] < r) {
        return Some(Verdict::TriangleViolated(v));
    }
    distance_violation(g, s, s_bound).map(|(u, v)| Verdict::DiameterViolated(u, v))
}

/// Lexicographically smallest pair `u < v` of `s` at distance above `bound`
/// in `G[s]`.
pub(crate) fn distance_violation(g: &Graph, s: &VertexSet, bound: usize) -> Option<(Vertex, Vertex)> {
    let member = |v: Vertex| s.contains(v);
    for u in s.iter() {
        let dist = bfs_within(g, u, &member, bound);
        if let Some(v) = s.iter().find(|&v| v > u && dist[v].is_none()) {
            return Some((u, v));
        }
    }
    None
}

/// Repeatedly deletes vertices lying in fewer than `r` triangles of the
/// current induced subgraph. The result is the unique largest subset in
/// which every vertex has at least `r` triangles.
pub fn peel_low_triangle_vertices(g: &Graph, r: usize) -> VertexSet {
    peel_within(g, &g.all_vertices(), r)
}

/// [`peel_low_triangle_vertices`] restricted to `start`.
pub fn peel_within(g: &Graph, start: &VertexSet, r: usize) -> VertexSet {
    peel_protected(g, start, &VertexSet::empty(g.n()), r)
}

/// Peels `start` but never deletes members of `protected`; their counts are
/// still updated so callers can inspect them afterwards.
pub(crate) fn peel_protected(g: &Graph, start: &VertexSet, protected: &VertexSet, r: usize) -> VertexSet {
    let mut alive = start.clone();
    let mut counts = triangle_counts_dense(g, &alive);
    let mut queued = vec![false; g.n()];
    let mut queue = VecDeque::new();
    for v in alive.iter() {
        if counts[v] < r && !protected.contains(v) {
            queued[v] = true;
            queue.push_back(v);
        }
    }
    let mut nbrs = Vec::new();
    while let Some(v) = queue.pop_front() {
        alive.remove(v);
        nbrs.clear();
        nbrs.extend(g.neighbors(v).iter().copied().filter(|&w| alive.contains(w)));
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if g.has_edge(x, y) {
                    for z in [x, y] {
                        counts[z] -= 1;
                        if counts[z] < r && !queued[z] && !protected.contains(z) {
                            queued[z] = true;
                            queue.push_back(z);
                        }
                    }
                }
            }
        }
    }
    alive
}

/// Partitions `candidates` by their neighborhood inside `anchor`. Classes
/// come out ordered by smallest member, members ascending.
pub fn twin_classes(g: &Graph, candidates: &VertexSet, anchor: &VertexSet) -> Result<Vec<Vec<Vertex>>> {
    g.check_set(candidates)?;
    g.check_set(anchor)?;
    if let Some(v) = candidates.iter().find(|&v| anchor.contains(v)) {
        return Err(Error::Contract(format!(
            "vertex {v} is both a candidate and an anchor"
        )));
    }
    let mut index: HashMap<Vec<Vertex>, usize> = HashMap::new();
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for v in candidates.iter() {
        let key: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| anchor.contains(w))
            .collect();
        let slot = *index.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(v);
    }
    Ok(classes)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn from_edges_normalizes() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (2, 1), (0, 1)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::InvalidVertex { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn induced_subgraph_examples() {
        let k3 = induced_subgraph(&complete(4), &set(4, &[0, 1, 2])).unwrap();
        assert_eq!(k3.graph, complete(3));
        assert_eq!(k3.to_original, vec![0, 1, 2]);

        let empty = induced_subgraph(&cycle(5), &VertexSet::empty(5)).unwrap();
        assert_eq!(empty.graph.n(), 0);

        let sub = induced_subgraph(&cycle(5), &set(5, &[0, 1, 3])).unwrap();
        assert_eq!(sub.graph.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(sub.to_local(3), Some(2));
        assert_eq!(sub.to_local(2), None);

        let out_of_range = VertexSet::from_vertices(9, [8]).unwrap();
        assert!(induced_subgraph(&cycle(5), &out_of_range).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&cycle(4), 0, 2).unwrap(), Some(2));
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(distance(&two_triangles, 0, 4).unwrap(), None);
        assert_eq!(distance(&complete(4), 0, 1).unwrap(), Some(1));
        assert_eq!(distance(&complete(4), 2, 2).unwrap(), Some(0));
        assert!(distance(&complete(4), 0, 4).is_err());
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter_within(&cycle(5), &set(5, &[3])).unwrap(), Some(0));
        assert_eq!(diameter_within(&bowtie(), &bowtie().all_vertices()).unwrap(), Some(2));
        assert_eq!(diameter_within(&cycle(5), &cycle(5).all_vertices()).unwrap(), Some(2));
        assert_eq!(diameter_within(&cycle(5), &set(5, &[0, 2])).unwrap(), None);
        assert_eq!(diameter_within(&cycle(5), &VertexSet::empty(5)), Err(Error::EmptySet));
    }

    #[test]
    fn triangle_count_examples() {
        let k4 = complete(4);
        assert!(triangle_counts(&k4, &k4.all_vertices()).unwrap().values().all(|&c| c == 3));
        let d = diamond();
        let counts: Vec<_> = triangle_counts(&d, &d.all_vertices()).unwrap().into_iter().collect();
        assert_eq!(counts, vec![(0, 2), (1, 2), (2, 1), (3, 1)]);
        let c5 = cycle(5);
        assert!(triangle_counts(&c5, &c5.all_vertices()).unwrap().values().all(|&c| c == 0));
    }

    #[test]
    fn verify_examples() {
        let k4 = ProblemInstance::new(complete(4), 3, 2, 4).unwrap();
        assert_eq!(verify_solution(&k4, &k4.graph.all_vertices()).unwrap(), Verdict::Ok);
        let d = ProblemInstance::new(diamond(), 3, 2, 4).unwrap();
        assert_eq!(
            verify_solution(&d, &d.graph.all_vertices()).unwrap(),
            Verdict::TriangleViolated(0)
        );
        let c5 = ProblemInstance::new(cycle(5), 1, 2, 3).unwrap();
        assert_eq!(
            verify_solution(&c5, &c5.graph.all_vertices()).unwrap(),
            Verdict::TriangleViolated(0)
        );
        let small = ProblemInstance::new(complete(4), 1, 2, 4).unwrap();
        assert_eq!(
            verify_solution(&small, &set(4, &[0, 1, 2])).unwrap(),
            Verdict::TooSmall { size: 3, ell: 4 }
        );
        // P5 closed into triangles at both ends but too long for a 2-club.
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap();
        let inst = ProblemInstance::new(g, 1, 2, 1).unwrap();
        assert_eq!(
            verify_solution(&inst, &inst.graph.all_vertices()).unwrap(),
            Verdict::DiameterViolated(0, 4)
        );
    }

    #[test]
    fn instance_rejects_bad_parameters() {
        assert!(ProblemInstance::new(complete(3), 0, 2, 1).is_err());
        assert!(ProblemInstance::new(complete(3), 1, 1, 1).is_err());
        assert!(ProblemInstance::new(complete(3), 1, 2, 0).is_err());
    }

    #[test]
    fn peel_examples() {
        assert_eq!(peel_low_triangle_vertices(&complete(4), 3).len(), 4);
        assert!(peel_low_triangle_vertices(&cycle(5), 1).is_empty());
        assert!(peel_low_triangle_vertices(&bowtie(), 2).is_empty());
        assert_eq!(peel_low_triangle_vertices(&bowtie(), 1).len(), 5);
    }

    #[test]
    fn twin_class_examples() {
        let star = star(4);
        let classes = twin_classes(&star, &set(5, &[1, 2, 3, 4]), &set(5, &[0])).unwrap();
        assert_eq!(classes, vec![vec![1, 2, 3, 4]]);

        let p3 = path(3);
        let classes = twin_classes(&p3, &set(3, &[0, 2]), &set(3, &[1])).unwrap();
        assert_eq!(classes, vec![vec![0, 2]]);

        let c4 = cycle(4);
        let classes = twin_classes(&c4, &set(4, &[1, 2, 3]), &set(4, &[0])).unwrap();
        assert_eq!(classes, vec![vec![1, 3], vec![2]]);

        assert!(twin_classes(&c4, &set(4, &[0, 1]), &set(4, &[0])).is_err());
    }

    #[test]
    fn vertex_set_order_is_lexicographic() {
        let a = set(5, &[0, 3]);
        let b = set(5, &[0, 4]);
        let c = set(5, &[1]);
        assert!(a < b && b < c);
        assert_eq!(set(5, &[1, 2]), set(9, &[1, 2]));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
                let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&e, _)| e);
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    fn brute_triangles(g: &Graph, s: &VertexSet, v: Vertex) -> usize {
        let members = s.to_vec();
        let mut c = 0;
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                if x != v && y != v && g.has_edge(v, x) && g.has_edge(v, y) && g.has_edge(x, y) {
                    c += 1;
                }
            }
        }
        c
    }

    proptest! {
        #[test]
        fn graph_invariants(g in arb_graph(12)) {
            let mut total = 0;
            for v in g.vertices() {
                let list = g.neighbors(v);
                prop_assert!(list.windows(2).all(|w| w[0] < w[1]));
                prop_assert!(!list.contains(&v));
                for &w in list {
                    prop_assert!(g.neighbors(w).contains(&v));
                }
                total += list.len();
            }
            prop_assert_eq!(total, 2 * g.m());
        }

        #[test]
        fn triangle_counts_match_enumeration(g in arb_graph(12), mask in any::<u16>()) {
            let s = VertexSet::from_vertices(g.n(), g.vertices().filter(|&v| mask >> v & 1 == 1)).unwrap();
            let counts = triangle_counts(&g, &s).unwrap();
            for (v, c) in counts {
                prop_assert_eq!(c, brute_triangles(&g, &s, v));
            }
        }

        #[test]
        fn peeling_is_order_independent(g in arb_graph(12), r in 1usize..4, seed in any::<u64>()) {
            let fixpoint = peel_low_triangle_vertices(&g, r);
            // Remove one random low vertex at a time, recomputing counts from scratch.
            let mut alive = g.all_vertices();
            let mut state = seed | 1;
            loop {
                let counts = triangle_counts_dense(&g, &alive);
                let low: Vec<_> = alive.iter().filter(|&v| counts[v] < r).collect();
                if low.is_empty() {
                    break;
                }
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                alive.remove(low[(state % low.len() as u64) as usize]);
            }
            prop_assert_eq!(alive, fixpoint);
        }

        #[test]
        fn passing_sets_have_at_least_three_vertices(g in arb_graph(8), mask in any::<u8>(), r in 1usize..3) {
            let s = VertexSet::from_vertices(g.n(), g.vertices().filter(|&v| mask >> v & 1 == 1)).unwrap();
            if !s.is_empty() && club_violation(&g, &s, r, 2).is_none() {
                prop_assert!(s.len() >= 3);
            }
        }
    }
}
