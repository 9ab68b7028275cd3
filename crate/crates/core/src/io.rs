//! Text formats: labelled edge lists, DIMACS, PACE `.gr` graphs and PACE
//! `.td` tree decompositions.
//!
//! Vertices get dense ids in order of first appearance; the label table maps
//! them back. DIMACS and PACE inputs use the labels `"1"..="n"`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::treedecomp::{validate, TreeDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
    PaceGr,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(Format::EdgeList),
            "dimacs" | "col" => Ok(Format::Dimacs),
            "pace-gr" | "gr" | "pace" => Ok(Format::PaceGr),
            _ => Err(Error::Parse {
                line: 0,
                message: format!("unknown format {s:?}"),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl ParsedGraph {
    pub fn id_of(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().position(|l| l == label)
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<ParsedGraph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_numbered(text, "edge", Some("e")),
        Format::PaceGr => parse_numbered(text, "tw", None),
    }
}

/// One `u v` pair per line; a line with a single token declares a vertex.
/// `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut ids: HashMap<String, Vertex> = HashMap::new();
    let mut edges = Vec::new();
    let mut intern = |tok: &str| -> Vertex {
        *ids.entry(tok.to_owned()).or_insert_with(|| {
            labels.push(tok.to_owned());
            labels.len() - 1
        })
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            [v] => {
                intern(v);
            }
            [u, v] => {
                if u == v {
                    return Err(perr(line, format!("self-loop on {u}")));
                }
                let (a, b) = (intern(u), intern(v));
                edges.push((a, b));
            }
            _ => return Err(perr(line, format!("expected `u v`, found {} tokens", toks.len()))),
        }
    }
    let graph = Graph::from_edges(labels.len(), edges)?;
    Ok(ParsedGraph { graph, labels })
}

/// DIMACS (`p edge n m`, `e u v`, `c` comments) and PACE (`p tw n m`, bare
/// `u v`) share everything but the keywords.
fn parse_numbered(text: &str, kind: &str, edge_tag: Option<&str>) -> Result<ParsedGraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first() {
            None | Some(&"c") => continue,
            Some(&"p") => {
                if n.is_some() {
                    return Err(perr(line, "second problem line"));
                }
                let ok_kind = toks.get(1) == Some(&kind) || (kind == "edge" && toks.get(1) == Some(&"col"));
                if toks.len() != 4 || !ok_kind {
                    return Err(perr(line, format!("expected `p {kind} <n> <m>`")));
                }
                n = Some(number(line, toks[2])?);
                number(line, toks[3])?;
            }
            Some(_) => {
                let Some(n) = n else {
                    return Err(perr(line, "edge before the problem line"));
                };
                let pair = match edge_tag {
                    Some(tag) if toks.len() == 3 && toks[0] == tag => &toks[1..],
                    None if toks.len() == 2 => &toks[..],
                    _ => return Err(perr(line, format!("malformed edge line {raw:?}"))),
                };
                let u = number(line, pair[0])?;
                let v = number(line, pair[1])?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(perr(line, format!("vertex {x} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(perr(line, format!("self-loop on {u}")));
                }
                edges.push((u - 1, v - 1));
            }
        }
    }
    let n = n.ok_or_else(|| perr(0, "missing problem line"))?;
    let graph = Graph::from_edges(n, edges)?;
    Ok(ParsedGraph {
        graph,
        labels: (1..=n).map(|i| i.to_string()).collect(),
    })
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| perr(line, format!("expected a number, found {tok:?}")))
}

/// Reads a PACE `.td` file whose vertex tokens are labels of `host`, then
/// validates it against `host.graph`.
pub fn parse_td(text: &str, host: &ParsedGraph) -> Result<TreeDecomposition> {
    let lookup: HashMap<&str, Vertex> = host.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<Vec<Vertex>>> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first() {
            None | Some(&"c") => continue,
            Some(&"s") => {
                if toks.len() != 5 || toks[1] != "td" {
                    return Err(perr(line, "expected `s td <bags> <width+1> <n>`"));
                }
                let nb = number(line, toks[2])?;
                let size = number(line, toks[3])?;
                let n = number(line, toks[4])?;
                if n != host.graph.n() {
                    return Err(perr(line, format!("decomposition is for {n} vertices, graph has {}", host.graph.n())));
                }
                header = Some((nb, size));
                bags = vec![None; nb];
            }
            Some(&"b") => {
                let Some((nb, size)) = header else {
                    return Err(perr(line, "bag before the solution line"));
                };
                let id = number(line, toks.get(1).ok_or_else(|| perr(line, "bag without id"))?)?;
                if id == 0 || id > nb {
                    return Err(perr(line, format!("bag id {id} outside 1..={nb}")));
                }
                if bags[id - 1].is_some() {
                    return Err(perr(line, format!("bag {id} listed twice")));
                }
                let mut bag = Vec::new();
                for tok in &toks[2..] {
                    let v = *lookup.get(tok).ok_or_else(|| perr(line, format!("unknown vertex {tok:?}")))?;
                    bag.push(v);
                }
                if bag.len() > size {
                    return Err(perr(line, format!("bag {id} exceeds the declared size {size}")));
                }
                bags[id - 1] = Some(bag);
            }
            Some(_) => {
                let Some((nb, _)) = header else {
                    return Err(perr(line, "tree edge before the solution line"));
                };
                if toks.len() != 2 {
                    return Err(perr(line, format!("malformed tree edge {raw:?}")));
                }
                let a = number(line, toks[0])?;
                let b = number(line, toks[1])?;
                if a == 0 || b == 0 || a > nb || b > nb {
                    return Err(perr(line, format!("tree edge {a} {b} names a missing bag")));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    if header.is_none() {
        return Err(perr(0, "missing solution line"));
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| perr(0, format!("bag {} never listed", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let td = TreeDecomposition::new(bags, edges);
    validate(&td, &host.graph).map_err(Error::InvalidDecomposition)?;
    Ok(td)
}

/// Canonical edge list: every label on its own line in id order, then the
/// edges in lexicographic id order.
pub fn write_edge_list(g: &Graph, labels: &[String]) -> String {
    let mut out = String::new();
    for l in labels {
        writeln!(out, "{l}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", labels[u], labels[v]).unwrap();
    }
    out
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn write_pace_gr(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn write_graph(g: &Graph, labels: &[String], format: Format) -> String {
    match format {
        Format::EdgeList => write_edge_list(g, labels),
        Format::Dimacs => write_dimacs(g),
        Format::PaceGr => write_pace_gr(g),
    }
}

pub fn write_td(td: &TreeDecomposition, labels: &[String]) -> String {
    let mut out = format!("s td {} {} {}\n", td.bags.len(), td.width() + 1, labels.len());
    for (i, bag) in td.bags.iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for &v in bag {
            write!(out, " {}", labels[v]).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}
