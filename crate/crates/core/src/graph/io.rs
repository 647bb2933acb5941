//! Edge-list and JSON serialisations for graphs and cycles.
//!
//! Edge-list text is a header line `n m` followed by `m` lines `u v`.
//! Blank lines and lines starting with `#` are ignored. The writers emit
//! edges with `u < v` in lexicographic order, so a canonical file survives a
//! read/write round trip byte for byte.

use super::{Cycle, Graph, GraphError};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header promised {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    m: usize,
    edges: Vec<(usize, usize)>,
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, FormatError> {
    let tok = tok.ok_or_else(|| FormatError::Parse { line, msg: format!("missing {what}") })?;
    tok.parse()
        .map_err(|_| FormatError::Parse { line, msg: format!("bad {what} `{tok}`") })
}

pub fn read_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or(FormatError::Parse { line: 1, msg: "empty input".into() })?;
    let mut toks = header.split_whitespace();
    let n = parse_usize(toks.next(), hl, "vertex count")?;
    let m = parse_usize(toks.next(), hl, "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        let u = parse_usize(toks.next(), ln, "endpoint")?;
        let v = parse_usize(toks.next(), ln, "endpoint")?;
        if toks.next().is_some() {
            return Err(FormatError::Parse { line: ln, msg: "trailing tokens".into() });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(FormatError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_json(text: &str) -> Result<Graph, FormatError> {
    let raw: GraphJson = serde_json::from_str(text)?;
    if raw.edges.len() != raw.m {
        return Err(FormatError::EdgeCount { expected: raw.m, found: raw.edges.len() });
    }
    Ok(Graph::from_edges(raw.n, &raw.edges)?)
}

pub fn write_json(g: &Graph) -> String {
    let raw = GraphJson { n: g.n(), m: g.edge_count(), edges: g.edges().collect() };
    serde_json::to_string(&raw).expect("graph serialises")
}

/// Reads either format, choosing JSON when the text starts with `{`.
pub fn read_graph(text: &str) -> Result<Graph, FormatError> {
    if text.trim_start().starts_with('{') {
        read_json(text)
    } else {
        read_edge_list(text)
    }
}

/// Cycle files hold whitespace-separated vertices, or a JSON array, or an
/// object with a `cycle` array.
pub fn read_cycle(text: &str) -> Result<Cycle, FormatError> {
    let t = text.trim_start();
    if t.starts_with('[') {
        return Ok(Cycle::new(serde_json::from_str(t)?));
    }
    if t.starts_with('{') {
        #[derive(Deserialize)]
        struct Wrapped {
            cycle: Vec<usize>,
        }
        let w: Wrapped = serde_json::from_str(t)?;
        return Ok(Cycle::new(w.cycle));
    }
    let mut order = Vec::new();
    for (i, l) in text.lines().enumerate() {
        for tok in l.split_whitespace() {
            order.push(parse_usize(Some(tok), i + 1, "vertex")?);
        }
    }
    Ok(Cycle::new(order))
}

pub fn write_cycle(c: &Cycle) -> String {
    let mut out = String::new();
    for (i, v) in c.order.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
    out
}
