//! Plain-text file formats.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` (0-indexed). Lines
//! starting with `#` are comments; a gadget file carries `# gadget k=<k>`
//! followed by one `# v <id> <cycle> <position>` line per vertex.
//!
//! Point set: a header line `lattice_bits=<bits>`, then one `x,y` integer pair
//! per line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{Point, LATTICE_BITS};
use crate::graphs::{GadgetGraph, PlanarGraph};

/// Parsed edge list, with the gadget parameter when the file declares one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub graph: PlanarGraph,
    pub gadget_k: Option<usize>,
}

impl EdgeList {
    /// The graph as a gadget, verified against a fresh construction.
    pub fn gadget(&self) -> Result<GadgetGraph> {
        let k = self
            .gadget_k
            .ok_or_else(|| Error::Precondition("edge list has no `# gadget k=<k>` annotation".into()))?;
        GadgetGraph::from_graph(self.graph.clone(), k)
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn write_edge_list(g: &PlanarGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_gadget(g: &GadgetGraph) -> String {
    let mut out = write_edge_list(g.graph());
    writeln!(out, "# gadget k={}", g.k()).unwrap();
    for v in 0..g.graph().n() {
        let (cycle, pos) = GadgetGraph::label(v);
        writeln!(out, "# v {v} {cycle} {pos}").unwrap();
    }
    out
}

pub fn read_edge_list(text: &str) -> Result<EdgeList> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut gadget_k = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(k) = comment.trim().strip_prefix("gadget k=") {
                gadget_k = Some(k.trim().parse().map_err(|_| parse_err(lineno, "bad gadget k"))?);
            }
            continue;
        }
        let mut fields = line.split_whitespace().map(|f| {
            f.parse::<usize>()
                .map_err(|_| parse_err(lineno, format!("not an integer: {f:?}")))
        });
        let (a, b) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (a?, b?),
            _ => return Err(parse_err(lineno, "expected two integers")),
        };
        if header.is_none() {
            header = Some((a, b));
        } else {
            edges.push((a, b));
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing `n m` header"))?;
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Ok(EdgeList {
        graph: PlanarGraph::new(n, edges)?,
        gadget_k,
    })
}

pub fn write_points(points: &[Point]) -> String {
    let mut out = format!("lattice_bits={LATTICE_BITS}\n");
    for p in points {
        writeln!(out, "{},{}", p.x, p.y).unwrap();
    }
    out
}

/// Returns the declared lattice bits and the points.
pub fn read_points(text: &str) -> Result<(u32, Vec<Point>)> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or_else(|| parse_err(1, "empty point file"))?;
    let bits = first
        .trim()
        .strip_prefix("lattice_bits=")
        .and_then(|b| b.trim().parse::<u32>().ok())
        .ok_or_else(|| parse_err(1, "expected `lattice_bits=<bits>` header"))?;
    let mut points = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        let (x, y) = line
            .trim()
            .split_once(',')
            .ok_or_else(|| parse_err(lineno, "expected `x,y`"))?;
        let coord = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| parse_err(lineno, format!("not an integer: {s:?}")))
        };
        points.push(Point::new(coord(x)?, coord(y)?));
    }
    Ok((bits, points))
}
