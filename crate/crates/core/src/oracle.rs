//! Exhaustive reference solver. Slow on purpose: everything else is tested
//! against it.

use crate::error::{Error, Result};
use crate::graph::{club_violation, induced_subgraph, peel_low_triangle_vertices, Graph, ProblemInstance, VertexSet};

pub const DEFAULT_SIZE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub best_size: usize,
    /// Empty when `best_size == 0`.
    pub witness: VertexSet,
    pub subsets_examined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub yes: bool,
    pub witness: Option<VertexSet>,
}

/// Largest vertex set of diameter at most `s` in which every member lies in
/// at least `r` triangles. Returns the lexicographically smallest optimum.
pub fn max_club_bruteforce(g: &Graph, r: usize, s: usize, size_limit: usize) -> Result<OracleResult> {
    if g.n() > size_limit {
        return Err(Error::OracleScale {
            n: g.n(),
            limit: size_limit,
        });
    }
    if r == 0 {
        return Err(Error::InvalidInstance("r must be at least 1".into()));
    }
    // Nothing outside the peeled core can be in a solution.
    let core = peel_low_triangle_vertices(g, r).to_vec();
    let mut examined = 0u64;
    let mut candidate = VertexSet::empty(g.n());
    for k in (3..=core.len()).rev() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            candidate.clear_to(idx.iter().map(|&i| core[i]));
            examined += 1;
            if club_violation(g, &candidate, r, s).is_none() {
                return Ok(OracleResult {
                    best_size: k,
                    witness: candidate,
                    subsets_examined: examined,
                });
            }
            if !next_combination(&mut idx, core.len()) {
                break;
            }
        }
    }
    Ok(OracleResult {
        best_size: 0,
        witness: VertexSet::empty(g.n()),
        subsets_examined: examined,
    })
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn decide(inst: &ProblemInstance, size_limit: usize) -> Result<Decision> {
    let res = max_club_bruteforce(&inst.graph, inst.r, inst.s, size_limit)?;
    Ok(to_decision(res, inst.ell))
}

fn to_decision(res: OracleResult, ell: usize) -> Decision {
    if res.best_size >= ell && res.best_size > 0 {
        Decision {
            yes: true,
            witness: Some(res.witness),
        }
    } else {
        Decision {
            yes: false,
            witness: None,
        }
    }
}

/// Exhaustive search over unions of false-twin classes of the peeled core.
///
/// Exact because a maximum solution is closed under adding twins of its
/// members, so it is a union of whole classes. Scales with the number of
/// classes instead of the number of vertices, which makes graphs built from
/// large groups of identical vertices tractable. Only sets of size at least
/// `min_size` are looked for; smaller optima are reported as 0.
pub fn max_club_by_twin_classes(
    g: &Graph,
    r: usize,
    s: usize,
    min_size: usize,
    class_limit: usize,
) -> Result<OracleResult> {
    if r == 0 {
        return Err(Error::InvalidInstance("r must be at least 1".into()));
    }
    let core = peel_low_triangle_vertices(g, r);
    let sub = induced_subgraph(g, &core)?;
    let h = &sub.graph;
    let mut classes = twin_partition(h);
    if classes.len() > class_limit {
        return Err(Error::OracleScale {
            n: classes.len(),
            limit: class_limit,
        });
    }
    // Heavy classes first so the weight bound bites early.
    classes.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut suffix = vec![0; classes.len() + 1];
    for i in (0..classes.len()).rev() {
        suffix[i] = suffix[i + 1] + classes[i].len();
    }

    struct Search<'a> {
        h: &'a Graph,
        classes: &'a [Vec<usize>],
        suffix: &'a [usize],
        r: usize,
        s: usize,
        current: VertexSet,
        best: Option<VertexSet>,
        threshold: usize,
        examined: u64,
    }

    impl Search<'_> {
        fn run(&mut self, i: usize) {
            let size = self.current.len();
            if size + self.suffix[i] < self.threshold {
                return;
            }
            if i == self.classes.len() {
                self.examined += 1;
                if size >= 3 && club_violation(self.h, &self.current, self.r, self.s).is_none() {
                    let better = match &self.best {
                        None => true,
                        Some(b) => size > b.len() || (size == b.len() && self.current < *b),
                    };
                    if better {
                        self.best = Some(self.current.clone());
                        self.threshold = size;
                    }
                }
                return;
            }
            for &v in &self.classes[i] {
                self.current.insert(v);
            }
            self.run(i + 1);
            for &v in &self.classes[i] {
                self.current.remove(v);
            }
            self.run(i + 1);
        }
    }

    let mut search = Search {
        h,
        classes: &classes,
        suffix: &suffix,
        r,
        s,
        current: VertexSet::empty(h.n()),
        best: None,
        threshold: min_size.max(3),
        examined: 0,
    };
    search.run(0);
    let examined = search.examined;
    Ok(match search.best {
        Some(local) => OracleResult {
            best_size: local.len(),
            witness: sub.lift(&local, g.n()),
            subsets_examined: examined,
        },
        None => OracleResult {
            best_size: 0,
            witness: VertexSet::empty(g.n()),
            subsets_examined: examined,
        },
    })
}

/// Decision version of [`max_club_by_twin_classes`].
pub fn decide_by_twin_classes(inst: &ProblemInstance, class_limit: usize) -> Result<Decision> {
    let res = max_club_by_twin_classes(&inst.graph, inst.r, inst.s, inst.ell, class_limit)?;
    Ok(to_decision(res, inst.ell))
}

/// Classes of vertices with identical open neighborhoods.
fn twin_partition(g: &Graph) -> Vec<Vec<usize>> {
    let mut index = std::collections::HashMap::<&[usize], usize>::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in g.vertices() {
        let slot = *index.entry(g.neighbors(v)).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(v);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::verify_solution;
    use crate::testkit::gen_gnp;

    #[test]
    fn examples() {
        let k5 = max_club_bruteforce(&complete(5), 1, 2, 20).unwrap();
        assert_eq!(k5.best_size, 5);
        assert_eq!(max_club_bruteforce(&diamond(), 3, 2, 20).unwrap().best_size, 0);
        let b = max_club_bruteforce(&bowtie(), 1, 2, 20).unwrap();
        assert_eq!(b.best_size, 5);
        assert_eq!(b.witness, bowtie().all_vertices());
    }

    #[test]
    fn decide_examples() {
        let yes = decide(&ProblemInstance::new(complete(4), 3, 2, 4).unwrap(), 20).unwrap();
        assert!(yes.yes);
        assert_eq!(yes.witness.unwrap().len(), 4);
        assert!(!decide(&ProblemInstance::new(diamond(), 3, 2, 4).unwrap(), 20).unwrap().yes);
        assert!(!decide(&ProblemInstance::new(cycle(5), 1, 2, 1).unwrap(), 20).unwrap().yes);
    }

    #[test]
    fn refuses_large_graphs() {
        assert_eq!(
            max_club_bruteforce(&Graph::empty(21), 1, 2, DEFAULT_SIZE_LIMIT),
            Err(Error::OracleScale { n: 21, limit: 20 })
        );
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        // Two disjoint triangles: both optimal, the lower one wins.
        let g = Graph::from_edges(6, [(3, 4), (4, 5), (3, 5), (0, 1), (1, 2), (0, 2)]).unwrap();
        let res = max_club_bruteforce(&g, 1, 2, 20).unwrap();
        assert_eq!(res.witness, set(6, &[0, 1, 2]));
    }

    #[test]
    fn combinations_enumerate_in_order() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn monotone_in_r_and_s_and_peel_safe() {
        for seed in 0..40 {
            let g = gen_gnp(10, 0.5, seed);
            for s in 2..4 {
                let mut prev = usize::MAX;
                for r in 1..5 {
                    let res = max_club_bruteforce(&g, r, s, 20).unwrap();
                    assert!(res.best_size <= prev);
                    prev = res.best_size;
                    let wider = max_club_bruteforce(&g, r, s + 1, 20).unwrap();
                    assert!(res.best_size <= wider.best_size);
                    let core = peel_low_triangle_vertices(&g, r);
                    let sub = induced_subgraph(&g, &core).unwrap();
                    assert_eq!(max_club_bruteforce(&sub.graph, r, s, 20).unwrap().best_size, res.best_size);
                    assert_eq!(max_club_bruteforce(&g, r, s, 20).unwrap(), res);
                    if res.best_size > 0 {
                        let inst = ProblemInstance::new(g.clone(), r, s, res.best_size).unwrap();
                        assert!(verify_solution(&inst, &res.witness).unwrap().is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn twin_class_search_matches_plain_search() {
        for seed in 0..60 {
            let g = gen_gnp(11, 0.55, seed);
            for r in 1..4 {
                let plain = max_club_bruteforce(&g, r, 2, 20).unwrap();
                let twins = max_club_by_twin_classes(&g, r, 2, 0, 24).unwrap();
                assert_eq!(plain.best_size, twins.best_size, "seed {seed} r {r}");
            }
        }
    }
}
