//! Algorithm selection: measure cheap structural parameters, pick the first
//! exact route that applies, and re-verify whatever it returns.

use std::fmt;
use std::str::FromStr;

use crate::dp::{solve_treewidth, TwOptions};
use crate::error::{Error, Result};
use crate::graph::{club_violation, Graph, ProblemInstance, Vertex, VertexSet};
use crate::kernel::{feedback_edge_decomposition, kernelize};
use crate::oracle::{max_club_bruteforce, DEFAULT_SIZE_LIMIT};
use crate::param::apex::{find_apex, solve_apex};
use crate::param::hindex::{h_index, solve_hindex};
use crate::param::vertex_cover::{min_vertex_cover, solve_with_cover};
use crate::treedecomp::{heuristic_decomposition, TreeDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Auto,
    Oracle,
    Treewidth,
    Vc,
    Hindex,
    Apex,
    KernelOnly,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Oracle => "oracle",
            Algorithm::Treewidth => "treewidth",
            Algorithm::Vc => "vc",
            Algorithm::Hindex => "hindex",
            Algorithm::Apex => "apex",
            Algorithm::KernelOnly => "kernel-only",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Algorithm::Auto,
            Algorithm::Oracle,
            Algorithm::Treewidth,
            Algorithm::Vc,
            Algorithm::Hindex,
            Algorithm::Apex,
            Algorithm::KernelOnly,
        ]
        .into_iter()
        .find(|a| a.name() == s)
        .ok_or_else(|| Error::Contract(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub td: Option<TreeDecomposition>,
    pub max_states: Option<usize>,
    /// Largest kernel the brute-force route accepts.
    pub oracle_limit: usize,
    pub vc_cap: usize,
    pub hindex_cap: usize,
    /// Auto mode uses the min-fill decomposition up to this width.
    pub heuristic_width_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            algorithm: Algorithm::Auto,
            td: None,
            max_states: None,
            oracle_limit: DEFAULT_SIZE_LIMIT,
            vc_cap: crate::param::vertex_cover::DEFAULT_CAP,
            hindex_cap: crate::param::hindex::DEFAULT_CAP,
            heuristic_width_cap: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameters {
    pub fes: usize,
    pub h_index: usize,
    pub apex: Option<Vertex>,
    pub td_width: Option<usize>,
    pub heuristic_width: usize,
}

impl Parameters {
    pub fn measure(g: &Graph, td: Option<&TreeDecomposition>) -> Self {
        Parameters {
            fes: feedback_edge_decomposition(g).fes(),
            h_index: h_index(g).k,
            apex: find_apex(g),
            td_width: td.map(TreeDecomposition::width),
            heuristic_width: heuristic_decomposition(g).width(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub algorithm: Algorithm,
    pub best_size: usize,
    pub witness: VertexSet,
    pub yes: bool,
    /// The witness passed an independent re-check.
    pub verified: bool,
    pub parameters: Parameters,
}

pub fn solve(inst: &ProblemInstance, opts: &SolveOptions) -> Result<Outcome> {
    let g = &inst.graph;
    if let Some(td) = &opts.td {
        crate::treedecomp::validate(td, g).map_err(Error::InvalidDecomposition)?;
    }
    let parameters = Parameters::measure(g, opts.td.as_ref());
    let algorithm = match opts.algorithm {
        Algorithm::Auto => pick(inst, opts, &parameters)?,
        Algorithm::KernelOnly => return Err(Error::Contract("kernel-only does not solve".into())),
        a if inst.s != 2 && a != Algorithm::Oracle => {
            return Err(Error::NoRoute(format!("{a} needs s = 2, got s = {}", inst.s)))
        }
        a => a,
    };

    let witness = match algorithm {
        Algorithm::Apex => {
            let x = parameters
                .apex
                .ok_or_else(|| Error::NoRoute("no vertex leaves a bipartite graph".into()))?;
            solve_apex(g, x, inst.r)?.solution.witness
        }
        Algorithm::Treewidth => {
            let td = opts.td.clone().unwrap_or_else(|| heuristic_decomposition(g));
            let tw = TwOptions {
                max_states: opts.max_states,
            };
            solve_treewidth(g, &td, inst.r, &tw)?.witness
        }
        Algorithm::Vc => {
            let x = min_vertex_cover(g, opts.vc_cap)?.ok_or(Error::ParameterTooLarge {
                name: "vertex cover",
                value: opts.vc_cap + 1,
                cap: opts.vc_cap,
            })?;
            solve_with_cover(g, &x, inst.r, inst.s)?.witness
        }
        Algorithm::Hindex => solve_hindex(g, inst.r, opts.hindex_cap)?.witness,
        Algorithm::Oracle => oracle_on_kernel(inst, opts.oracle_limit)?,
        Algorithm::Auto | Algorithm::KernelOnly => unreachable!("resolved above"),
    };

    let best_size = witness.len();
    if best_size > 0 && club_violation(g, &witness, inst.r, inst.s).is_some() {
        return Err(Error::Internal(format!("{algorithm} returned a witness that fails verification")));
    }
    Ok(Outcome {
        algorithm,
        best_size,
        yes: best_size >= inst.ell,
        verified: true,
        witness,
        parameters,
    })
}

fn pick(inst: &ProblemInstance, opts: &SolveOptions, p: &Parameters) -> Result<Algorithm> {
    if inst.s == 2 {
        if p.apex.is_some() {
            return Ok(Algorithm::Apex);
        }
        if p.td_width.is_some() || p.heuristic_width <= opts.heuristic_width_cap {
            return Ok(Algorithm::Treewidth);
        }
        if min_vertex_cover(&inst.graph, opts.vc_cap)?.is_some() {
            return Ok(Algorithm::Vc);
        }
        if p.h_index <= opts.hindex_cap {
            return Ok(Algorithm::Hindex);
        }
    }
    Ok(Algorithm::Oracle)
}

/// Brute force on the feedback-edge kernel. The kernel is built for
/// `ell = 1` so that it keeps every solution rather than just the answer.
fn oracle_on_kernel(inst: &ProblemInstance, limit: usize) -> Result<VertexSet> {
    let relaxed = ProblemInstance::new(inst.graph.clone(), inst.r, inst.s, 1)?;
    let kernel = kernelize(&relaxed)?;
    let n = inst.graph.n();
    if kernel.trivial_no {
        return Ok(VertexSet::empty(n));
    }
    let res = max_club_bruteforce(&kernel.instance.graph, inst.r, inst.s, limit).map_err(|e| match e {
        Error::OracleScale { n, limit } => {
            Error::NoRoute(format!("kernel has {n} vertices, above the brute-force limit of {limit}"))
        }
        e => e,
    })?;
    VertexSet::from_vertices(n, res.witness.iter().map(|v| kernel.kept_vertices[v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::testkit::gen_gnp;

    fn inst(g: Graph, r: usize, s: usize, ell: usize) -> ProblemInstance {
        ProblemInstance::new(g, r, s, ell).unwrap()
    }

    #[test]
    fn spec_examples() {
        let out = solve(&inst(complete(4), 3, 2, 4), &SolveOptions::default()).unwrap();
        assert!(out.yes && out.verified);
        assert_eq!(out.best_size, 4);

        let out = solve(&inst(diamond(), 3, 2, 4), &SolveOptions::default()).unwrap();
        assert!(!out.yes);
        assert_eq!(out.best_size, 0);

        let oracle = SolveOptions {
            algorithm: Algorithm::Oracle,
            ..SolveOptions::default()
        };
        assert!(!solve(&inst(cycle(5), 1, 2, 1), &oracle).unwrap().yes);
    }

    #[test]
    fn s_above_two_only_allows_the_oracle() {
        let vc = SolveOptions {
            algorithm: Algorithm::Vc,
            ..SolveOptions::default()
        };
        assert!(matches!(solve(&inst(complete(4), 1, 3, 3), &vc), Err(Error::NoRoute(_))));
        let auto = solve(&inst(complete(4), 1, 3, 3), &SolveOptions::default()).unwrap();
        assert_eq!(auto.algorithm, Algorithm::Oracle);
    }

    #[test]
    fn every_route_agrees() {
        for seed in 0..25 {
            let g = gen_gnp(9, 0.5, seed);
            for r in 1..3 {
                let i = inst(g.clone(), r, 2, 1);
                let want = solve(
                    &i,
                    &SolveOptions {
                        algorithm: Algorithm::Oracle,
                        ..SolveOptions::default()
                    },
                )
                .unwrap()
                .best_size;
                for a in [Algorithm::Auto, Algorithm::Treewidth, Algorithm::Vc, Algorithm::Hindex, Algorithm::Apex] {
                    let opts = SolveOptions {
                        algorithm: a,
                        hindex_cap: 5,
                        ..SolveOptions::default()
                    };
                    match solve(&i, &opts) {
                        Ok(out) => assert_eq!(out.best_size, want, "seed {seed} r {r} {a}"),
                        Err(Error::NoRoute(_) | Error::ParameterTooLarge { .. }) => {}
                        Err(e) => panic!("seed {seed} r {r} {a}: {e}"),
                    }
                }
            }
        }
    }
}
