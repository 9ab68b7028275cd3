//! `triclub solve` reads a graph, picks an exact algorithm and prints a JSON
//! report; `triclub generate` writes seeded test instances.
//!
//! Exit codes: 0 solved, 1 input error, 2 no applicable algorithm, 3 state
//! limit exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use triclub::io::{parse_graph, parse_td, write_graph, write_td, Format, ParsedGraph};
use triclub::kernel::{kernelize, KernelCase};
use triclub::solve::{solve, Algorithm, Parameters, SolveOptions};
use triclub::testkit::{gen_apex_bipartite, gen_bounded_treewidth, gen_gnp};
use triclub::{Error, ProblemInstance};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "triclub", version, about = "Maximum vertex r-triangle s-club solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print a JSON report.
    Solve(SolveArgs),
    /// Write a seeded random instance.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    /// edge-list, dimacs or pace-gr
    #[arg(long, default_value = "edge-list")]
    format: String,
    #[arg(long = "r")]
    r: usize,
    #[arg(long = "s", default_value_t = 2)]
    s: usize,
    #[arg(long)]
    ell: usize,
    /// auto, oracle, treewidth, vc, hindex, apex or kernel-only
    #[arg(long, default_value = "auto")]
    algorithm: String,
    /// PACE .td decomposition over the input's vertex labels.
    #[arg(long)]
    td: Option<PathBuf>,
    /// Recorded in the report; solving is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_states: Option<usize>,
    /// Where kernel-only writes the reduced graph (same format as the input).
    #[arg(long)]
    kernel_out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(subcommand)]
    family: Family,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value = "edge-list")]
    format: String,
    /// Graph destination; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Decomposition destination, for families that come with one.
    #[arg(long, global = true)]
    td_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    Treewidth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: usize,
        #[arg(long, default_value_t = 1.0)]
        edge_keep: f64,
    },
    Apex {
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0.5)]
        apex_p: f64,
    },
}

#[derive(Serialize)]
struct Report {
    schema: u32,
    instance: InstanceSummary,
    parameters: Option<ParameterReport>,
    algorithm: String,
    status: &'static str,
    best_size: Option<usize>,
    witness: Vec<String>,
    verified: bool,
    wall_time_ms: f64,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel: Option<KernelReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct InstanceSummary {
    n: usize,
    m: usize,
    r: usize,
    s: usize,
    ell: usize,
}

#[derive(Serialize)]
struct ParameterReport {
    fes: usize,
    h_index: usize,
    apex: Option<String>,
    td_width: Option<usize>,
    heuristic_width: usize,
}

#[derive(Serialize)]
struct KernelReport {
    n: usize,
    m: usize,
    /// Parameters of the reduced instance; the trivial no-instance changes them.
    r: usize,
    ell: usize,
    fes: usize,
    case: &'static str,
    trivial_no: bool,
    kept: Vec<String>,
}

impl ParameterReport {
    fn new(p: &Parameters, labels: &[String]) -> Self {
        ParameterReport {
            fes: p.fes,
            h_index: p.h_index,
            apex: p.apex.map(|x| labels[x].clone()),
            td_width: p.td_width,
            heuristic_width: p.heuristic_width,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Generate(args) => match run_generate(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
    }
}

fn input_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(1)
}

fn run_solve(args: SolveArgs) -> ExitCode {
    let start = Instant::now();
    let format: Format = match args.format.parse() {
        Ok(f) => f,
        Err(e) => return input_error(e),
    };
    let algorithm: Algorithm = match args.algorithm.parse() {
        Ok(a) => a,
        Err(e) => return input_error(e),
    };
    let text = match fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", args.input.display())),
    };
    let parsed = match parse_graph(&text, format) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let td = match &args.td {
        None => None,
        Some(path) => match fs::read_to_string(path).map_err(|e| e.to_string()).and_then(|t| parse_td(&t, &parsed).map_err(|e| e.to_string())) {
            Ok(td) => Some(td),
            Err(e) => return input_error(format!("{}: {e}", path.display())),
        },
    };
    let inst = match ProblemInstance::new(parsed.graph.clone(), args.r, args.s, args.ell) {
        Ok(i) => i,
        Err(e) => return input_error(e),
    };
    let mut report = Report {
        schema: SCHEMA,
        instance: InstanceSummary {
            n: inst.graph.n(),
            m: inst.graph.m(),
            r: inst.r,
            s: inst.s,
            ell: inst.ell,
        },
        parameters: None,
        algorithm: algorithm.to_string(),
        status: "error",
        best_size: None,
        witness: Vec::new(),
        verified: false,
        wall_time_ms: 0.0,
        seed: args.seed,
        kernel: None,
        error: None,
    };

    let code = if algorithm == Algorithm::KernelOnly {
        kernel_only(&inst, &parsed, format, args.kernel_out.as_ref(), &mut report)
    } else {
        let opts = SolveOptions {
            algorithm,
            td,
            max_states: args.max_states,
            ..SolveOptions::default()
        };
        match solve(&inst, &opts) {
            Ok(out) => {
                report.parameters = Some(ParameterReport::new(&out.parameters, &parsed.labels));
                report.algorithm = out.algorithm.to_string();
                report.status = if out.yes { "yes" } else { "no" };
                report.best_size = Some(out.best_size);
                report.witness = out.witness.iter().map(|v| parsed.labels[v].clone()).collect();
                report.verified = out.verified;
                0
            }
            Err(e) => {
                let (status, code) = classify(&e);
                if code == 1 {
                    return input_error(e);
                }
                report.status = status;
                report.parameters = Some(ParameterReport::new(&Parameters::measure(&inst.graph, opts.td.as_ref()), &parsed.labels));
                report.error = Some(e.to_string());
                code
            }
        }
    };
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    ExitCode::from(code)
}

fn classify(e: &Error) -> (&'static str, u8) {
    match e {
        Error::StateLimit { .. } => ("resource-limit", 3),
        Error::NoRoute(_) | Error::ParameterTooLarge { .. } | Error::OracleScale { .. } => ("no-route", 2),
        Error::Internal(_) => ("error", 2),
        _ => ("error", 1),
    }
}

fn kernel_only(
    inst: &ProblemInstance,
    parsed: &ParsedGraph,
    format: Format,
    out: Option<&PathBuf>,
    report: &mut Report,
) -> u8 {
    let k = match kernelize(inst) {
        Ok(k) => k,
        Err(e) => {
            report.error = Some(e.to_string());
            return classify(&e).1;
        }
    };
    let labels: Vec<String> = if k.trivial_no {
        (1..=k.instance.graph.n()).map(|i| format!("diamond{i}")).collect()
    } else {
        k.kept_vertices.iter().map(|&v| parsed.labels[v].clone()).collect()
    };
    if let Some(path) = out {
        // Numbered formats renumber 1..=n; the label list in the report maps back.
        if let Err(e) = fs::write(path, write_graph(&k.instance.graph, &labels, format)) {
            report.error = Some(format!("{}: {e}", path.display()));
            return 1;
        }
    }
    report.status = "kernel";
    report.kernel = Some(KernelReport {
        n: k.instance.graph.n(),
        m: k.instance.graph.m(),
        r: k.instance.r,
        ell: k.instance.ell,
        fes: k.fes,
        case: match k.case_taken {
            KernelCase::RExceedsFes => "r-exceeds-fes",
            KernelCase::Main => "main",
        },
        trivial_no: k.trivial_no,
        kept: if k.trivial_no { Vec::new() } else { labels },
    });
    0
}

fn run_generate(args: GenerateArgs) -> Result<(), String> {
    let format: Format = args.format.parse().map_err(|e: Error| e.to_string())?;
    let (graph, td) = match args.family {
        Family::Gnp { n, p } => (gen_gnp(n, p, args.seed), None),
        Family::Treewidth { n, w, edge_keep } => {
            if w + 1 > n {
                return Err(format!("width {w} needs at least {} vertices", w + 1));
            }
            let inst = gen_bounded_treewidth(n, w, edge_keep, args.seed);
            (inst.graph, inst.decomposition)
        }
        Family::Apex { left, right, p, apex_p } => (gen_apex_bipartite(left, right, p, apex_p, args.seed).graph, None),
    };
    let labels: Vec<String> = (1..=graph.n()).map(|i| i.to_string()).collect();
    let text = write_graph(&graph, &labels, format);
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    if let Some(path) = &args.td_out {
        let td = td.as_ref().ok_or("this family has no decomposition")?;
        fs::write(path, write_td(td, &labels)).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}
