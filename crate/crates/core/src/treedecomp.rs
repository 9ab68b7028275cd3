//! Tree decompositions: validation, nice form, re-rooting, and a min-fill
//! heuristic for when none is supplied.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Bags are kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<Vertex>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<Vertex>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, edges }
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Intersects every bag with `keep`, relabelling through `local`
    /// (`local[v] = None` drops `v`). The tree is untouched, so the result is
    /// a decomposition of the corresponding induced subgraph.
    pub fn restrict(&self, local: &[Option<Vertex>]) -> TreeDecomposition {
        let bags = self
            .bags
            .iter()
            .map(|b| b.iter().filter_map(|&v| local.get(v).copied().flatten()).collect())
            .collect();
        TreeDecomposition::new(bags, self.edges.clone())
    }
}

/// First failing condition found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoBags,
    NodeOutOfRange { node: usize },
    NotATree,
    BagVertexOutOfRange { bag: usize, vertex: Vertex },
    VertexUncovered(Vertex),
    EdgeUncovered(Vertex, Vertex),
    /// The bags holding this vertex do not form a connected subtree.
    Disconnected(Vertex),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoBags => write!(f, "decomposition has no bags"),
            Violation::NodeOutOfRange { node } => write!(f, "tree edge mentions missing node {node}"),
            Violation::NotATree => write!(f, "tree edges do not form a tree"),
            Violation::BagVertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} contains vertex {vertex} which is not in the graph")
            }
            Violation::VertexUncovered(v) => write!(f, "vertex {v} is in no bag"),
            Violation::EdgeUncovered(u, v) => write!(f, "edge {{{u}, {v}}} is in no bag"),
            Violation::Disconnected(v) => write!(f, "bags containing vertex {v} are not connected"),
        }
    }
}

pub fn validate(td: &TreeDecomposition, g: &Graph) -> std::result::Result<(), Violation> {
    let k = td.bags.len();
    if k == 0 {
        return Err(Violation::NoBags);
    }
    if let Some(&(a, b)) = td.edges.iter().find(|&&(a, b)| a >= k || b >= k) {
        return Err(Violation::NodeOutOfRange { node: a.max(b) });
    }
    let adj = td.adjacency();
    if td.edges.len() != k - 1 || reach(&adj, 0, |_| true).iter().filter(|&&x| x).count() != k {
        return Err(Violation::NotATree);
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                return Err(Violation::BagVertexOutOfRange { bag: i, vertex: v });
            }
            holders[v].push(i);
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| holders[v].is_empty()) {
        return Err(Violation::VertexUncovered(v));
    }
    for (u, v) in g.edges() {
        let covered = holders[u].iter().any(|&i| td.bags[i].binary_search(&v).is_ok());
        if !covered {
            return Err(Violation::EdgeUncovered(u, v));
        }
    }
    for (v, held) in holders.iter().enumerate() {
        let seen = reach(&adj, held[0], |i| td.bags[i].binary_search(&v).is_ok());
        if held.iter().any(|&i| !seen[i]) {
            return Err(Violation::Disconnected(v));
        }
    }
    Ok(())
}

fn reach(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(a) = stack.pop() {
        for &b in &adj[a] {
            if !seen[b] && allowed(b) {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    seen
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    pub bag: Vec<Vertex>,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Nodes are stored children-first; the root is
/// the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Forgets the root's vertices outside `keep`, in increasing order.
    pub(crate) fn push_forget_chain(&mut self, keep: &[Vertex]) {
        let bag = self.nodes[self.root()].bag.clone();
        for v in bag {
            if keep.binary_search(&v).is_err() {
                self.push_forget(v);
            }
        }
    }

    fn push(&mut self, kind: NodeKind, bag: Vec<Vertex>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    fn push_forget(&mut self, v: Vertex) -> usize {
        let top = self.root();
        let bag = self.nodes[top].bag.iter().copied().filter(|&x| x != v).collect();
        self.push(NodeKind::Forget(v), bag, vec![top])
    }

    /// Checks the local node rules: children come first, leaves are empty,
    /// introduce/forget change the bag by exactly their vertex, joins have
    /// two children with identical bags.
    pub fn check_local_rules(&self) -> std::result::Result<(), String> {
        let mut parents = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.bag.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("node {i}: bag not sorted"));
            }
            for &c in &node.children {
                if c >= i {
                    return Err(format!("node {i}: child {c} stored after its parent"));
                }
                parents[c] += 1;
            }
            let child_bag = |k: usize| &self.nodes[node.children[k]].bag;
            match node.kind {
                NodeKind::Leaf => {
                    if !node.children.is_empty() || !node.bag.is_empty() {
                        return Err(format!("node {i}: leaf must be empty and childless"));
                    }
                }
                NodeKind::Introduce(v) => {
                    if node.children.len() != 1 {
                        return Err(format!("node {i}: introduce needs one child"));
                    }
                    let mut expect = child_bag(0).clone();
                    if expect.contains(&v) {
                        return Err(format!("node {i}: {v} already present in child"));
                    }
                    expect.push(v);
                    expect.sort_unstable();
                    if expect != node.bag {
                        return Err(format!("node {i}: introduce bag mismatch"));
                    }
                }
                NodeKind::Forget(v) => {
                    if node.children.len() != 1 {
                        return Err(format!("node {i}: forget needs one child"));
                    }
                    let expect: Vec<_> = child_bag(0).iter().copied().filter(|&x| x != v).collect();
                    if !child_bag(0).contains(&v) || expect != node.bag {
                        return Err(format!("node {i}: forget bag mismatch"));
                    }
                }
                NodeKind::Join => {
                    if node.children.len() != 2 || child_bag(0) != &node.bag || child_bag(1) != &node.bag {
                        return Err(format!("node {i}: join needs two children with its bag"));
                    }
                }
            }
        }
        let root = self.root();
        if parents[root] != 0 || parents[..root].iter().any(|&p| p != 1) {
            return Err("nodes do not form a single rooted tree".into());
        }
        Ok(())
    }

    /// The underlying plain decomposition: one bag per node, parent-child edges.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, n)| n.children.iter().map(move |&c| (c, i)))
            .collect();
        TreeDecomposition { bags, edges }
    }
}

/// Nice decomposition whose root carries the bag of node `p` of `td`.
/// `td` must be a tree; no validation against a graph happens here.
pub(crate) fn nice_rooted_at(td: &TreeDecomposition, p: usize) -> NiceTreeDecomposition {
    let adj = td.adjacency();
    let mut parent = vec![usize::MAX; td.bags.len()];
    let mut bfs = Vec::with_capacity(td.bags.len());
    let mut queue = VecDeque::from([p]);
    parent[p] = p;
    while let Some(a) = queue.pop_front() {
        bfs.push(a);
        for &b in &adj[a] {
            if parent[b] == usize::MAX {
                parent[b] = a;
                queue.push_back(b);
            }
        }
    }

    let mut out = NiceTreeDecomposition { nodes: Vec::new() };
    let mut top = vec![usize::MAX; td.bags.len()];
    for &t in bfs.iter().rev() {
        let bag = &td.bags[t];
        let mut tops = Vec::new();
        for &c in &adj[t] {
            if parent[c] == t && c != t {
                tops.push(chain_to(&mut out, top[c], bag));
            }
        }
        top[t] = match tops.len() {
            0 => {
                let leaf = out.push(NodeKind::Leaf, Vec::new(), Vec::new());
                chain_to(&mut out, leaf, bag)
            }
            _ => {
                let mut acc = tops[0];
                for &other in &tops[1..] {
                    acc = out.push(NodeKind::Join, bag.clone(), vec![acc, other]);
                }
                acc
            }
        };
    }
    out
}

/// Appends forgets then introduces turning node `from`'s bag into `target`.
fn chain_to(out: &mut NiceTreeDecomposition, from: usize, target: &[Vertex]) -> usize {
    let mut cur = from;
    let mut bag = out.nodes[from].bag.clone();
    let drop: Vec<_> = bag.iter().copied().filter(|v| target.binary_search(v).is_err()).collect();
    for v in drop {
        bag.retain(|&x| x != v);
        cur = out.push(NodeKind::Forget(v), bag.clone(), vec![cur]);
    }
    for &v in target {
        if let Err(pos) = bag.binary_search(&v) {
            bag.insert(pos, v);
            cur = out.push(NodeKind::Introduce(v), bag.clone(), vec![cur]);
        }
    }
    cur
}

/// Nice form with empty leaves and an empty root.
pub fn make_nice(td: &TreeDecomposition, g: &Graph) -> Result<NiceTreeDecomposition> {
    validate(td, g).map_err(Error::InvalidDecomposition)?;
    let mut nice = nice_rooted_at(td, 0);
    nice.push_forget_chain(&[]);
    Ok(nice)
}

/// Re-roots at node `p` and forgets `bag(p) ∖ keep`, so the root bag is
/// exactly `keep`.
pub fn reroot_for_guess(ntd: &NiceTreeDecomposition, p: usize, keep: &VertexSet) -> Result<NiceTreeDecomposition> {
    if p >= ntd.len() {
        return Err(Error::Contract(format!("node {p} does not exist")));
    }
    let bag = &ntd.nodes[p].bag;
    if let Some(v) = keep.iter().find(|v| bag.binary_search(v).is_err()) {
        return Err(Error::Contract(format!("vertex {v} is not in the bag of node {p}")));
    }
    let mut out = nice_rooted_at(&ntd.to_tree_decomposition(), p);
    out.push_forget_chain(&keep.to_vec());
    Ok(out)
}

/// Greedy min-fill elimination; ties go to the lowest id. Components are
/// chained together so the result is always a single tree.
pub fn heuristic_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], Vec::new());
    }
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut eliminated = vec![false; n];
    let mut position = vec![0; n];
    let mut bags: Vec<Vec<Vertex>> = Vec::with_capacity(n);
    let mut order = Vec::with_capacity(n);

    let fill = |adj: &[BTreeSet<Vertex>], v: Vertex| -> usize {
        let nb: Vec<_> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !adj[a].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    };

    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !eliminated[v])
            .min_by_key(|&v| (fill(&adj, v), v))
            .expect("a vertex remains");
        let nb: Vec<_> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nb {
            adj[a].remove(&v);
        }
        let mut bag = nb.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        eliminated[v] = true;
        position[v] = step;
        order.push(v);
        adj[v].clear();
    }

    // Bag of v hangs below the bag of its earliest-eliminated later neighbor.
    let mut edges = Vec::with_capacity(n - 1);
    let mut roots = Vec::new();
    for (i, bag) in bags.iter().enumerate() {
        let v = order[i];
        match bag.iter().filter(|&&u| u != v).map(|&u| position[u]).min() {
            Some(j) => edges.push((i, j)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::testkit::{gen_bounded_treewidth, gen_gnp};

    fn td(bags: &[&[Vertex]], edges: &[(usize, usize)]) -> TreeDecomposition {
        TreeDecomposition::new(bags.iter().map(|b| b.to_vec()).collect(), edges.to_vec())
    }

    #[test]
    fn validate_examples() {
        let k4 = complete(4);
        let single = td(&[&[0, 1, 2, 3]], &[]);
        assert_eq!(validate(&single, &k4), Ok(()));
        assert_eq!(single.width(), 3);

        let p3 = td(&[&[0, 1], &[1, 2]], &[(0, 1)]);
        assert_eq!(validate(&p3, &path(3)), Ok(()));
        assert_eq!(p3.width(), 1);

        let broken = td(&[&[0, 1], &[2]], &[(0, 1)]);
        assert_eq!(validate(&broken, &complete(3)), Err(Violation::EdgeUncovered(0, 2)));
    }

    #[test]
    fn validate_flags_each_condition() {
        let p3 = path(3);
        assert_eq!(validate(&td(&[&[0, 1]], &[]), &p3), Err(Violation::VertexUncovered(2)));
        let split = td(&[&[0, 1], &[1, 2], &[0]], &[(0, 1), (1, 2)]);
        assert_eq!(validate(&split, &p3), Err(Violation::Disconnected(0)));
        let cyclic = td(&[&[0, 1], &[1, 2], &[1]], &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(validate(&cyclic, &p3), Err(Violation::NotATree));
        let forest = td(&[&[0, 1], &[1, 2], &[1]], &[(0, 1)]);
        assert_eq!(validate(&forest, &p3), Err(Violation::NotATree));
        assert_eq!(validate(&td(&[&[0, 1, 2, 7]], &[]), &p3), Err(Violation::BagVertexOutOfRange { bag: 0, vertex: 7 }));
        assert_eq!(validate(&td(&[], &[]), &p3), Err(Violation::NoBags));
    }

    #[test]
    fn make_nice_single_bag_is_a_chain() {
        let nice = make_nice(&td(&[&[0, 1, 2]], &[]), &complete(3)).unwrap();
        let kinds: Vec<_> = nice.nodes.iter().map(|n| n.kind).collect();
        assert_eq!(
            kinds,
            vec![
                NodeKind::Leaf,
                NodeKind::Introduce(0),
                NodeKind::Introduce(1),
                NodeKind::Introduce(2),
                NodeKind::Forget(0),
                NodeKind::Forget(1),
                NodeKind::Forget(2),
            ]
        );
        assert!(nice.nodes[nice.root()].bag.is_empty());
    }

    #[test]
    fn make_nice_preserves_validity_and_width() {
        let p3 = path(3);
        let nice = make_nice(&td(&[&[0, 1], &[1, 2]], &[(0, 1)]), &p3).unwrap();
        nice.check_local_rules().unwrap();
        assert_eq!(validate(&nice.to_tree_decomposition(), &p3), Ok(()));
        assert_eq!(nice.width(), 1);

        // Feeding a nice decomposition back in keeps it valid.
        let again = make_nice(&nice.to_tree_decomposition(), &p3).unwrap();
        again.check_local_rules().unwrap();
        assert_eq!(again.width(), 1);

        assert!(make_nice(&td(&[&[0, 1]], &[]), &p3).is_err());
    }

    #[test]
    fn high_degree_nodes_become_binary_joins() {
        let star = star(3);
        let t = td(&[&[0], &[0, 1], &[0, 2], &[0, 3]], &[(0, 1), (0, 2), (0, 3)]);
        let nice = make_nice(&t, &star).unwrap();
        nice.check_local_rules().unwrap();
        assert_eq!(nice.nodes.iter().filter(|n| n.kind == NodeKind::Join).count(), 2);
    }

    #[test]
    fn reroot_examples() {
        let g = complete(3);
        let nice = make_nice(&td(&[&[0, 1, 2]], &[]), &g).unwrap();
        let p = 3; // bag {0, 1, 2}
        assert_eq!(nice.nodes[p].bag, vec![0, 1, 2]);

        let same = reroot_for_guess(&nice, p, &set(3, &[0, 1, 2])).unwrap();
        assert_eq!(same.nodes[same.root()].bag, vec![0, 1, 2]);
        assert_ne!(same.nodes[same.root()].kind, NodeKind::Forget(0));

        let none = reroot_for_guess(&nice, p, &VertexSet::empty(3)).unwrap();
        assert!(none.nodes[none.root()].bag.is_empty());
        let forgets = none.nodes.iter().rev().take_while(|n| matches!(n.kind, NodeKind::Forget(_))).count();
        assert_eq!(forgets, 3);

        let one = reroot_for_guess(&nice, p, &set(3, &[0])).unwrap();
        one.check_local_rules().unwrap();
        assert_eq!(one.nodes[one.root()].bag, vec![0]);
        let forgets = one.nodes.iter().rev().take_while(|n| matches!(n.kind, NodeKind::Forget(_))).count();
        assert_eq!(forgets, 2);

        assert!(reroot_for_guess(&nice, 1, &set(3, &[2])).is_err());
    }

    #[test]
    fn heuristic_examples() {
        let tree = Graph::from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let t = heuristic_decomposition(&tree);
        assert_eq!(validate(&t, &tree), Ok(()));
        assert_eq!(t.width(), 1);
        for n in 1..7 {
            let k = complete(n);
            assert_eq!(heuristic_decomposition(&k).width(), n - 1);
        }
        assert_eq!(heuristic_decomposition(&cycle(5)).width(), 2);
        assert_eq!(validate(&heuristic_decomposition(&Graph::empty(0)), &Graph::empty(0)), Ok(()));
    }

    #[test]
    fn heuristic_and_nice_forms_validate_on_random_graphs() {
        for seed in 0..60 {
            let g = gen_gnp(12, 0.3, seed);
            let t = heuristic_decomposition(&g);
            assert_eq!(validate(&t, &g), Ok(()));
            let nice = make_nice(&t, &g).unwrap();
            nice.check_local_rules().unwrap();
            assert_eq!(nice.width(), t.width());
            assert_eq!(validate(&nice.to_tree_decomposition(), &g), Ok(()));
            for p in [0, nice.len() / 2] {
                let keep = VertexSet::from_vertices(g.n(), nice.nodes[p].bag.iter().copied().take(1)).unwrap();
                let re = reroot_for_guess(&nice, p, &keep).unwrap();
                re.check_local_rules().unwrap();
                assert_eq!(validate(&re.to_tree_decomposition(), &g), Ok(()));
                let bags: BTreeSet<_> = re.nodes.iter().map(|n| n.bag.clone()).collect();
                let original: BTreeSet<_> = nice.nodes.iter().map(|n| n.bag.clone()).collect();
                assert!(original.is_subset(&bags));
            }
        }
    }

    #[test]
    fn generated_decompositions_validate() {
        for seed in 0..50 {
            let inst = gen_bounded_treewidth(10, 1 + seed as usize % 3, 0.7, seed);
            let t = inst.decomposition.as_ref().unwrap();
            assert_eq!(validate(t, &inst.graph), Ok(()));
        }
    }
}
