//! Dynamic program over a nice tree decomposition for the largest 2-club in
//! which every vertex lies in at least `r` triangles.
//!
//! A state at node `t` is a tuple `(A, f, 𝒜)`: the part `A` of the bag that
//! belongs to the partial solution `S_t`, the triangle count of each member
//! of `A` inside `G[S_t]` capped at `r`, and the family of traces `N(x) ∩ A`
//! left by the already-forgotten members `x` of `S_t`. The table maps each
//! realizable tuple to the largest `|S_t|` realizing it.
//!
//! Tuples are stored relative to the node's bag: bit `i` of a mask stands
//! for the `i`-th smallest bag vertex.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, peel_low_triangle_vertices, Graph, Vertex, VertexSet};
use crate::treedecomp::{nice_rooted_at, validate, NiceTreeDecomposition, NodeKind, TreeDecomposition};

pub const MAX_BAG: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DpTuple {
    pub a: u32,
    /// Indexed by bag position; zero outside `a`.
    pub f: Vec<u16>,
    /// Sorted, duplicate-free subsets of `a`.
    pub fam: Vec<u32>,
}

impl DpTuple {
    pub fn members(&self, bag: &[Vertex]) -> Vec<Vertex> {
        bits(self.a).map(|i| bag[i]).collect()
    }

    pub fn family(&self, bag: &[Vertex]) -> Vec<Vec<Vertex>> {
        self.fam.iter().map(|&b| bits(b).map(|i| bag[i]).collect()).collect()
    }
}

fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Opens a zero bit at `pos`.
fn expand(mask: u32, pos: usize) -> u32 {
    let low = mask & ((1u32 << pos) - 1);
    let high = ((mask as u64 >> pos) << (pos + 1)) as u32;
    low | high
}

/// Deletes bit `pos`.
fn contract(mask: u32, pos: usize) -> u32 {
    let low = mask & ((1u32 << pos) - 1);
    let high = ((mask as u64 >> (pos + 1)) << pos) as u32;
    low | high
}

/// A bag with adjacency masks among its vertices.
struct Bag<'b> {
    verts: &'b [Vertex],
    adj: Vec<u32>,
}

impl<'b> Bag<'b> {
    fn new(g: &Graph, verts: &'b [Vertex]) -> Self {
        let adj = verts
            .iter()
            .map(|&u| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|&(_, &w)| g.has_edge(u, w))
                    .fold(0u32, |m, (i, _)| m | 1 << i)
            })
            .collect();
        Bag { verts, adj }
    }

    fn pos(&self, v: Vertex) -> Option<usize> {
        self.verts.binary_search(&v).ok()
    }

    /// Triangles of `G[a]` through both `u` and `v`.
    fn r_a(&self, a: u32, u: usize, v: usize) -> usize {
        if self.adj[u] >> v & 1 == 0 {
            0
        } else {
            (self.adj[u] & self.adj[v] & a).count_ones() as usize
        }
    }

    /// Edges of `G[a]` inside `N(v)`.
    fn edges_in_neighborhood(&self, a: u32, v: usize) -> usize {
        let nv = self.adj[v] & a;
        bits(nv).map(|q| (self.adj[q] & nv).count_ones() as usize).sum::<usize>() / 2
    }
}

fn cap(x: usize, r: usize) -> u16 {
    x.min(r) as u16
}

fn well_formed(t: &DpTuple, len: usize) -> bool {
    let full = if len == 32 { u32::MAX } else { (1u32 << len) - 1 };
    t.f.len() == len
        && t.a & !full == 0
        && t.f.iter().enumerate().all(|(i, &x)| t.a >> i & 1 == 1 || x == 0)
        && t.fam.windows(2).all(|w| w[0] < w[1])
        && t.fam.iter().all(|&b| b & !t.a == 0)
}

fn to_mask(g: &Graph, a: &VertexSet, pts: &[Vertex]) -> Result<Vec<Vertex>> {
    g.check_set(a)?;
    for &p in pts {
        g.check_vertex(p)?;
        if !a.contains(p) {
            return Err(Error::Contract(format!("vertex {p} is not in A")));
        }
    }
    Ok(a.to_vec())
}

/// Number of triangles of `G[a]` containing both `u` and `v`.
pub fn r_a(g: &Graph, a: &VertexSet, u: Vertex, v: Vertex) -> Result<usize> {
    let members = to_mask(g, a, &[u, v])?;
    if !g.has_edge(u, v) {
        return Ok(0);
    }
    Ok(members.iter().filter(|&&w| g.has_edge(u, w) && g.has_edge(v, w)).count())
}

/// Number of edges of `G[a]` with both endpoints adjacent to `v`.
pub fn edges_in_neighborhood(g: &Graph, a: &VertexSet, v: Vertex) -> Result<usize> {
    let members = to_mask(g, a, &[v])?;
    let nv: Vec<Vertex> = members.into_iter().filter(|&w| g.has_edge(v, w)).collect();
    Ok(crate::graph::edges_among_sorted(g, &nv))
}

/// Parent tuple at an introduce-`v` node, `v` in the parent's `A`.
fn introduce_in(bag: &Bag, r: usize, child: &DpTuple, pv: usize) -> DpTuple {
    let a = expand(child.a, pv) | 1 << pv;
    let mut f = child.f.clone();
    f.insert(pv, 0);
    for q in bits(a) {
        f[q] = if q == pv {
            cap(bag.edges_in_neighborhood(a, pv), r)
        } else {
            cap(f[q] as usize + bag.r_a(a, q, pv), r)
        };
    }
    DpTuple {
        a,
        f,
        fam: child.fam.iter().map(|&b| expand(b, pv)).collect(),
    }
}

fn introduce_out(child: &DpTuple, pv: usize) -> DpTuple {
    let mut f = child.f.clone();
    f.insert(pv, 0);
    DpTuple {
        a: expand(child.a, pv),
        f,
        fam: child.fam.iter().map(|&b| expand(b, pv)).collect(),
    }
}

fn introduce_ok(bag: &Bag, r: usize, parent: &DpTuple, child: &DpTuple, pv: usize) -> bool {
    parent.a >> pv & 1 == 1
        && contract(parent.a, pv) == child.a
        && *parent == introduce_in(bag, r, child, pv)
        && parent.fam.iter().all(|&b| b & bag.adj[pv] != 0)
}

/// Parent tuple at a forget-`v` node when `v` was in the child's `A`, or
/// `None` when `v` cannot be forgotten: it lacks triangles or is too far
/// from some remaining member.
fn forget_in(bag: &Bag, r: usize, child: &DpTuple, pv: usize) -> Option<DpTuple> {
    if child.f[pv] as usize != r {
        return None;
    }
    let a = child.a & !(1 << pv);
    let vb = 1u32 << pv;
    for x in bits(a) {
        let xb = 1u32 << x;
        let near = bag.adj[pv] & xb != 0
            || bag.adj[pv] & bag.adj[x] & child.a != 0
            || child.fam.iter().any(|&b| b & (xb | vb) == xb | vb);
        if !near {
            return None;
        }
    }
    let mut fam: Vec<u32> = child.fam.iter().map(|&b| contract(b & !vb, pv)).collect();
    fam.push(contract(bag.adj[pv] & a, pv));
    fam.sort_unstable();
    fam.dedup();
    let mut f = child.f.clone();
    f.remove(pv);
    Some(DpTuple {
        a: contract(a, pv),
        f,
        fam,
    })
}

fn forget_out(child: &DpTuple, pv: usize) -> DpTuple {
    let mut f = child.f.clone();
    f.remove(pv);
    DpTuple {
        a: contract(child.a, pv),
        f,
        fam: child.fam.iter().map(|&b| contract(b, pv)).collect(),
    }
}

/// Parent tuple at a join node, or `None` when some forgotten vertex of one
/// side would be more than two steps from a forgotten vertex of the other.
fn join_pair(bag: &Bag, r: usize, left: &DpTuple, right: &DpTuple) -> Option<DpTuple> {
    if left.a != right.a {
        return None;
    }
    if left.fam.iter().any(|&p| right.fam.iter().any(|&q| p & q == 0)) {
        return None;
    }
    let a = left.a;
    let mut f = vec![0u16; left.f.len()];
    for q in bits(a) {
        let shared = bag.edges_in_neighborhood(a, q).min(r);
        f[q] = cap((left.f[q] as usize + right.f[q] as usize).saturating_sub(shared), r);
    }
    let mut fam = left.fam.clone();
    fam.extend_from_slice(&right.fam);
    fam.sort_unstable();
    fam.dedup();
    Some(DpTuple { a, f, fam })
}

/// Introduce compatibility of `parent` (over `parent_bag`, containing `v`
/// in its `A`) with `child` (over `parent_bag ∖ {v}`).
pub fn introduce_compatible(
    g: &Graph,
    r: usize,
    parent_bag: &[Vertex],
    parent: &DpTuple,
    child: &DpTuple,
    v: Vertex,
) -> bool {
    let bag = Bag::new(g, parent_bag);
    match bag.pos(v) {
        Some(pv) => {
            well_formed(parent, parent_bag.len())
                && well_formed(child, parent_bag.len() - 1)
                && introduce_ok(&bag, r, parent, child, pv)
        }
        None => false,
    }
}

/// Forget compatibility of `parent` (over `child_bag ∖ {v}`) with `child`
/// (over `child_bag`, containing `v` in its `A`).
///
/// Besides `f′(v) = r`, agreement of `f` and the distance condition, the
/// parent family must be exactly the child family with `v` removed from
/// every member, plus `N(v) ∩ A`.
pub fn forget_compatible(
    g: &Graph,
    r: usize,
    child_bag: &[Vertex],
    parent: &DpTuple,
    child: &DpTuple,
    v: Vertex,
) -> bool {
    let bag = Bag::new(g, child_bag);
    let Some(pv) = bag.pos(v) else {
        return false;
    };
    well_formed(parent, child_bag.len() - 1)
        && well_formed(child, child_bag.len())
        && child.a >> pv & 1 == 1
        && forget_in(&bag, r, child, pv).as_ref() == Some(parent)
}

/// Join compatibility. Every trace on the left must meet every trace on the
/// right, and counts combine as `min(r, f₁ + f₂ − min(r, |E(N(u) ∩ A)|))`.
pub fn join_compatible(g: &Graph, r: usize, bag: &[Vertex], parent: &DpTuple, left: &DpTuple, right: &DpTuple) -> bool {
    let b = Bag::new(g, bag);
    [parent, left, right].iter().all(|t| well_formed(t, bag.len()))
        && parent.a == left.a
        && join_pair(&b, r, left, right).as_ref() == Some(parent)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Back {
    Leaf,
    One(u32),
    Two(u32, u32),
}

#[derive(Clone, Debug)]
struct Entry {
    tuple: DpTuple,
    value: u32,
    back: Back,
}

/// Table of one node: realizable tuples only; absent tuples are ⊥.
#[derive(Clone, Debug)]
pub struct NodeTable {
    pub kind: NodeKind,
    pub bag: Vec<Vertex>,
    children: Vec<usize>,
    entries: Vec<Entry>,
    index: HashMap<DpTuple, u32>,
}

impl NodeTable {
    fn new(kind: NodeKind, bag: Vec<Vertex>, children: Vec<usize>) -> Self {
        NodeTable {
            kind,
            bag,
            children,
            entries: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn offer(&mut self, tuple: DpTuple, value: u32, back: Back) {
        match self.index.get(&tuple) {
            Some(&i) => {
                let e = &mut self.entries[i as usize];
                if value > e.value {
                    e.value = value;
                    e.back = back;
                }
            }
            None => {
                self.index.insert(tuple.clone(), self.entries.len() as u32);
                self.entries.push(Entry { tuple, value, back });
            }
        }
    }

    pub fn get(&self, t: &DpTuple) -> Option<usize> {
        self.index.get(t).map(|&i| self.entries[i as usize].value as usize)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&DpTuple, usize)> {
        self.entries.iter().map(|e| (&e.tuple, e.value as usize))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct DpTable {
    pub nodes: Vec<NodeTable>,
    r: usize,
    states: usize,
    max_states: usize,
}

impl DpTable {
    pub fn total_states(&self) -> usize {
        self.states
    }

    pub fn root(&self) -> &NodeTable {
        self.nodes.last().expect("table has nodes")
    }

    /// Evaluates one more node whose children are already in the table.
    fn push(&mut self, g: &Graph, kind: NodeKind, bag: Vec<Vertex>, children: Vec<usize>) -> Result<()> {
        if bag.len() > MAX_BAG {
            return Err(Error::ParameterTooLarge {
                name: "bag size",
                value: bag.len(),
                cap: MAX_BAG,
            });
        }
        let r = self.r;
        let mut table = NodeTable::new(kind, bag, children);
        let bag_verts = table.bag.clone();
        let b = Bag::new(g, &bag_verts);
        match kind {
            NodeKind::Leaf => table.offer(
                DpTuple {
                    a: 0,
                    f: Vec::new(),
                    fam: Vec::new(),
                },
                0,
                Back::Leaf,
            ),
            NodeKind::Introduce(v) => {
                let pv = b.pos(v).ok_or_else(|| Error::Internal("introduced vertex missing".into()))?;
                let child = &self.nodes[table.children[0]];
                for (i, e) in child.entries.iter().enumerate() {
                    table.offer(introduce_out(&e.tuple, pv), e.value, Back::One(i as u32));
                    let t = introduce_in(&b, r, &e.tuple, pv);
                    if introduce_ok(&b, r, &t, &e.tuple, pv) {
                        table.offer(t, e.value + 1, Back::One(i as u32));
                    }
                }
            }
            NodeKind::Forget(v) => {
                let child = &self.nodes[table.children[0]];
                let cb = Bag::new(g, &child.bag);
                let pv = cb.pos(v).ok_or_else(|| Error::Internal("forgotten vertex missing".into()))?;
                for (i, e) in child.entries.iter().enumerate() {
                    if e.tuple.a >> pv & 1 == 0 {
                        table.offer(forget_out(&e.tuple, pv), e.value, Back::One(i as u32));
                    } else if let Some(t) = forget_in(&cb, r, &e.tuple, pv) {
                        table.offer(t, e.value, Back::One(i as u32));
                    }
                }
            }
            NodeKind::Join => {
                let left = &self.nodes[table.children[0]];
                let right = &self.nodes[table.children[1]];
                let mut by_a: HashMap<u32, Vec<u32>> = HashMap::new();
                for (j, e) in right.entries.iter().enumerate() {
                    by_a.entry(e.tuple.a).or_default().push(j as u32);
                }
                let size_a = |t: &DpTuple| t.a.count_ones();
                for (i, e1) in left.entries.iter().enumerate() {
                    let Some(partners) = by_a.get(&e1.tuple.a) else {
                        continue;
                    };
                    for &j in partners {
                        let e2 = &right.entries[j as usize];
                        if let Some(t) = join_pair(&b, r, &e1.tuple, &e2.tuple) {
                            let value = e1.value + e2.value - size_a(&t);
                            table.offer(t, value, Back::Two(i as u32, j));
                        }
                    }
                    if table.len() + self.states > self.max_states {
                        return Err(Error::StateLimit { limit: self.max_states });
                    }
                }
            }
        }
        self.states += table.len();
        if self.states > self.max_states {
            return Err(Error::StateLimit { limit: self.max_states });
        }
        self.nodes.push(table);
        Ok(())
    }

    /// Drops nodes beyond the first `len`.
    fn truncate(&mut self, len: usize) {
        while self.nodes.len() > len {
            let t = self.nodes.pop().expect("non-empty");
            self.states -= t.len();
        }
    }

    /// The partial solution realizing entry `entry` of node `node`.
    pub fn witness(&self, node: usize, tuple: &DpTuple, n: usize) -> Option<VertexSet> {
        let start = *self.nodes[node].index.get(tuple)?;
        let mut out = VertexSet::empty(n);
        let mut stack = vec![(node, start)];
        while let Some((t, i)) = stack.pop() {
            let table = &self.nodes[t];
            let e = &table.entries[i as usize];
            for v in e.tuple.members(&table.bag) {
                out.insert(v);
            }
            match e.back {
                Back::Leaf => {}
                Back::One(c) => stack.push((table.children[0], c)),
                Back::Two(c1, c2) => {
                    stack.push((table.children[0], c1));
                    stack.push((table.children[1], c2));
                }
            }
        }
        Some(out)
    }
}

/// Bottom-up evaluation of every node.
pub fn compute_table(ntd: &NiceTreeDecomposition, g: &Graph, r: usize, max_states: Option<usize>) -> Result<DpTable> {
    ntd.check_local_rules().map_err(Error::Contract)?;
    if let Some(v) = ntd.nodes.iter().flat_map(|n| n.bag.iter()).find(|&&v| v >= g.n()) {
        return Err(Error::InvalidVertex { vertex: *v, n: g.n() });
    }
    if r == 0 || r > u16::MAX as usize {
        return Err(Error::ParameterTooLarge {
            name: "r",
            value: r,
            cap: u16::MAX as usize,
        });
    }
    let mut table = DpTable {
        nodes: Vec::with_capacity(ntd.len()),
        r,
        states: 0,
        max_states: max_states.unwrap_or(usize::MAX),
    };
    for node in &ntd.nodes {
        table.push(g, node.kind, node.bag.clone(), node.children.clone())?;
    }
    Ok(table)
}

#[derive(Clone, Debug, Default)]
pub struct TwOptions {
    /// Cap on the number of stored entries of any single table.
    pub max_states: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwResult {
    pub best_size: usize,
    pub witness: VertexSet,
    /// Number of (root bag, neighborhood) guesses evaluated.
    pub guesses: usize,
    /// Largest table built.
    pub peak_states: usize,
}

/// Maximum vertex r-triangle 2-club, exact given a valid decomposition.
///
/// Some vertex `w` of an optimal solution `S` has `N[w] ∩ S` inside a single
/// bag. We try every inclusion-maximal bag as root and every candidate
/// `A_w ⊆ bag ∩ N[w]` with `w ∈ A_w`, forget the rest of the bag, and read
/// the root entries with `A = A_w` and every count saturated at `r`.
/// Members of `A_w` are pairwise within distance two through `w`, so no
/// further root condition is needed.
pub fn solve_treewidth(g: &Graph, td: &TreeDecomposition, r: usize, opts: &TwOptions) -> Result<TwResult> {
    validate(td, g).map_err(Error::InvalidDecomposition)?;
    if r == 0 {
        return Err(Error::InvalidInstance("r must be at least 1".into()));
    }
    let empty = TwResult {
        best_size: 0,
        witness: VertexSet::empty(g.n()),
        guesses: 0,
        peak_states: 0,
    };
    let core = peel_low_triangle_vertices(g, r);
    if core.is_empty() {
        return Ok(empty);
    }
    let sub = induced_subgraph(g, &core)?;
    let h = &sub.graph;
    let mut local = vec![None; g.n()];
    for (i, &v) in sub.to_original.iter().enumerate() {
        local[v] = Some(i);
    }
    let ltd = td.restrict(&local);
    let width = ltd.width();
    if r > width * width.saturating_sub(1) / 2 {
        return Ok(empty);
    }
    if width + 1 > MAX_BAG {
        return Err(Error::ParameterTooLarge {
            name: "width",
            value: width,
            cap: MAX_BAG - 1,
        });
    }

    let roots = maximal_bags(&ltd);
    let run = |p: usize| solve_rooted(h, &ltd, p, r, opts);
    #[cfg(feature = "parallel")]
    let outcomes: Vec<Result<RootOutcome>> = {
        use rayon::prelude::*;
        roots.par_iter().map(|&p| run(p)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Result<RootOutcome>> = roots.iter().map(|&p| run(p)).collect();

    let mut best: Option<VertexSet> = None;
    let mut guesses = 0;
    let mut peak = 0;
    for outcome in outcomes {
        let o = outcome?;
        guesses += o.guesses;
        peak = peak.max(o.peak_states);
        if let Some(w) = o.best {
            let better = match &best {
                None => true,
                Some(b) => w.len() > b.len() || (w.len() == b.len() && w < *b),
            };
            if better {
                best = Some(w);
            }
        }
    }
    Ok(match best {
        Some(w) => TwResult {
            best_size: w.len(),
            witness: sub.lift(&w, g.n()),
            guesses,
            peak_states: peak,
        },
        None => TwResult {
            guesses,
            peak_states: peak,
            ..empty
        },
    })
}

/// One node per distinct inclusion-maximal bag, lowest index first.
fn maximal_bags(td: &TreeDecomposition) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, bag) in td.bags.iter().enumerate() {
        let dominated = td.bags.iter().enumerate().any(|(j, other)| {
            other.len() > bag.len() && bag.iter().all(|v| other.binary_search(v).is_ok())
                || (other == bag && j < i)
        });
        if !dominated && !bag.is_empty() {
            out.push(i);
        }
    }
    out
}

struct RootOutcome {
    best: Option<VertexSet>,
    guesses: usize,
    peak_states: usize,
}

fn solve_rooted(h: &Graph, td: &TreeDecomposition, p: usize, r: usize, opts: &TwOptions) -> Result<RootOutcome> {
    let nice = nice_rooted_at(td, p);
    let mut table = compute_table(&nice, h, r, opts.max_states)?;
    let base = table.nodes.len();
    let bag = td.bags[p].clone();

    let mut guesses: Vec<Vec<Vertex>> = Vec::new();
    for &w in &bag {
        let closed: Vec<Vertex> = bag.iter().copied().filter(|&u| u == w || h.has_edge(u, w)).collect();
        let others: Vec<Vertex> = closed.iter().copied().filter(|&u| u != w).collect();
        for mask in 0u64..1 << others.len() {
            let mut aw: Vec<Vertex> = bits(mask as u32).map(|i| others[i]).collect();
            aw.push(w);
            aw.sort_unstable();
            guesses.push(aw);
        }
    }
    guesses.sort();
    guesses.dedup();

    let mut best: Option<VertexSet> = None;
    let mut peak = table.total_states();
    for aw in &guesses {
        for &v in &bag {
            if aw.binary_search(&v).is_err() {
                let top = table.nodes.len() - 1;
                let child_bag = &table.nodes[top].bag;
                let parent_bag = child_bag.iter().copied().filter(|&x| x != v).collect();
                table.push(h, NodeKind::Forget(v), parent_bag, vec![top])?;
            }
        }
        peak = peak.max(table.total_states());
        let root = table.nodes.len() - 1;
        let full = if aw.len() == 32 { u32::MAX } else { (1u32 << aw.len()) - 1 };
        let mut pick: Option<(usize, &DpTuple)> = None;
        for (t, value) in table.nodes[root].entries() {
            if t.a == full && t.f.iter().all(|&x| x as usize == r) && !matches!(pick, Some((bv, _)) if value <= bv) {
                pick = Some((value, t));
            }
        }
        if let Some((_, t)) = pick {
            let w = table.witness(root, &t.clone(), h.n()).expect("entry exists");
            let better = match &best {
                None => true,
                Some(b) => w.len() > b.len() || (w.len() == b.len() && w < *b),
            };
            if better {
                best = Some(w);
            }
        }
        table.truncate(base);
    }
    Ok(RootOutcome {
        best,
        guesses: guesses.len(),
        peak_states: peak,
    })
}
