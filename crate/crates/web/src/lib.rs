//! wasm-bindgen entry points for `www/index.html`. Every function takes and
//! returns plain strings (edge lists in, JSON out) so the page needs no glue
//! beyond what `wasm-bindgen --target web` emits.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use triclub::io::{parse_edge_list, write_edge_list, ParsedGraph};
use triclub::kernel::{kernelize, KernelCase};
use triclub::solve::{solve, Algorithm, SolveOptions};
use triclub::testkit::{gen_apex_bipartite, gen_bounded_treewidth, gen_gnp};
use triclub::ProblemInstance;

#[derive(Serialize)]
struct Drawing {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Drawing {
    fn of(p: &ParsedGraph) -> Self {
        Drawing {
            labels: p.labels.clone(),
            edges: p.graph.edges().collect(),
        }
    }
}

#[derive(Serialize)]
struct SolveView {
    graph: Drawing,
    algorithm: String,
    best_size: usize,
    yes: bool,
    /// Vertex ids into `graph.labels`.
    witness: Vec<usize>,
}

#[derive(Serialize)]
struct KernelView {
    graph: Drawing,
    fes: usize,
    case: &'static str,
    trivial_no: bool,
    kept: Vec<usize>,
}

fn instance(text: &str, r: usize, s: usize, ell: usize) -> Result<(ParsedGraph, ProblemInstance), String> {
    let parsed = parse_edge_list(text).map_err(|e| e.to_string())?;
    if parsed.graph.n() > 200 {
        return Err(format!("{} vertices is too many for the demo", parsed.graph.n()));
    }
    let inst = ProblemInstance::new(parsed.graph.clone(), r, s, ell).map_err(|e| e.to_string())?;
    Ok((parsed, inst))
}

pub fn solve_json(text: &str, r: usize, s: usize, ell: usize, algorithm: &str) -> Result<String, String> {
    let (parsed, inst) = instance(text, r, s, ell)?;
    let opts = SolveOptions {
        algorithm: algorithm.parse().map_err(|e: triclub::Error| e.to_string())?,
        max_states: Some(200_000),
        ..SolveOptions::default()
    };
    if opts.algorithm == Algorithm::KernelOnly {
        return Err("use the kernel button for kernel-only".into());
    }
    let out = solve(&inst, &opts).map_err(|e| e.to_string())?;
    let view = SolveView {
        graph: Drawing::of(&parsed),
        algorithm: out.algorithm.to_string(),
        best_size: out.best_size,
        yes: out.yes,
        witness: out.witness.to_vec(),
    };
    Ok(serde_json::to_string(&view).expect("serializable"))
}

pub fn kernel_json(text: &str, r: usize, s: usize, ell: usize) -> Result<String, String> {
    let (parsed, inst) = instance(text, r, s, ell)?;
    let k = kernelize(&inst).map_err(|e| e.to_string())?;
    let view = KernelView {
        graph: Drawing::of(&parsed),
        fes: k.fes,
        case: match k.case_taken {
            KernelCase::RExceedsFes => "r-exceeds-fes",
            KernelCase::Main => "main",
        },
        trivial_no: k.trivial_no,
        kept: k.kept_vertices,
    };
    Ok(serde_json::to_string(&view).expect("serializable"))
}

pub fn generate_text(family: &str, n: usize, param: f64, seed: u64) -> Result<String, String> {
    let n = n.clamp(1, 60);
    let param = param.clamp(0.0, 1.0);
    let g = match family {
        "gnp" => gen_gnp(n, param, seed),
        "treewidth" => gen_bounded_treewidth(n.max(3), 2, param, seed).graph,
        "apex" => {
            let rest = n.max(2) - 1;
            gen_apex_bipartite(rest / 2, rest - rest / 2, param, 0.7, seed).graph
        }
        other => return Err(format!("unknown family {other:?}")),
    };
    let labels: Vec<String> = (0..g.n()).map(|i| i.to_string()).collect();
    Ok(write_edge_list(&g, &labels))
}

#[wasm_bindgen]
pub fn solve_graph(text: &str, r: usize, s: usize, ell: usize, algorithm: &str) -> Result<String, JsError> {
    solve_json(text, r, s, ell, algorithm).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn kernelize_graph(text: &str, r: usize, s: usize, ell: usize) -> Result<String, JsError> {
    kernel_json(text, r, s, ell).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn generate(family: &str, n: usize, param: f64, seed: u64) -> Result<String, JsError> {
    generate_text(family, n, param, seed).map_err(|e| JsError::new(&e))
}
