//! File formats: DIMACS `.col`, the JSON graph schema, DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Point;
use crate::graph::{make_graph, Graph, GraphError, Layout, VertexId};
use crate::lists::ListAssignment;
use crate::Rational;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Dimacs { line: usize, message: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn dimacs_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Dimacs { line, message: message.into() }
}

/// DIMACS `.col` text. Vertices are numbered from 1 in identity order and the
/// numbering is recorded in `c vertex <i> <id>` comment lines.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::from("c listcolor graph\n");
    for (i, v) in g.vertices().iter().enumerate() {
        writeln!(out, "c vertex {} {v}", i + 1).unwrap();
    }
    writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
    for i in 0..g.n() {
        for &j in g.adj(i).iter().filter(|&&j| j > i) {
            writeln!(out, "e {} {}", i + 1, j + 1).unwrap();
        }
    }
    out
}

/// Reads DIMACS `.col` text. Vertices without a `c vertex` name become `plain:<i-1>`.
pub fn read_dimacs(text: &str) -> Result<Graph, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut names: BTreeMap<usize, VertexId> = BTreeMap::new();
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        let mut parts = line.split_whitespace();
        match parts.next() {
            None => {}
            Some("c") => {
                if parts.next() == Some("vertex") {
                    let i: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| dimacs_err(line_no, "bad vertex index in comment"))?;
                    let id: VertexId = parts
                        .next()
                        .ok_or_else(|| dimacs_err(line_no, "missing vertex id"))?
                        .parse()
                        .map_err(|e| dimacs_err(line_no, format!("{e}")))?;
                    names.insert(i, id);
                }
            }
            Some("p") => {
                let kind = parts.next();
                if !matches!(kind, Some("edge") | Some("col")) {
                    return Err(dimacs_err(line_no, "expected `p edge <n> <m>`"));
                }
                let mut num = || -> Result<usize, FormatError> {
                    parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| dimacs_err(line_no, "expected `p edge <n> <m>`"))
                };
                let (n, m) = (num()?, num()?);
                if header.replace((n, m)).is_some() {
                    return Err(dimacs_err(line_no, "duplicate problem line"));
                }
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| dimacs_err(line_no, "edge before problem line"))?;
                let mut end = || -> Result<usize, FormatError> {
                    let x: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| dimacs_err(line_no, "expected `e <u> <v>`"))?;
                    if x == 0 || x > n {
                        return Err(dimacs_err(line_no, format!("vertex {x} outside 1..={n}")));
                    }
                    Ok(x)
                };
                let (u, v) = (end()?, end()?);
                if u == v {
                    return Err(dimacs_err(line_no, format!("loop at vertex {u}")));
                }
                edges.push((u, v));
            }
            Some(other) => return Err(dimacs_err(line_no, format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| dimacs_err(0, "missing problem line"))?;
    if edges.len() != m {
        return Err(dimacs_err(0, format!("header declares {m} edges, found {}", edges.len())));
    }
    let ids: Vec<VertexId> = (1..=n).map(|i| names.get(&i).copied().unwrap_or(VertexId::Plain(i as u32 - 1))).collect();
    let distinct: std::collections::BTreeSet<_> = ids.iter().collect();
    if distinct.len() != n {
        return Err(dimacs_err(0, "two vertex indices share a name"));
    }
    Ok(make_graph(ids.clone(), edges.into_iter().map(|(u, v)| (ids[u - 1], ids[v - 1])))?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    layout: Option<BTreeMap<VertexId, (Coord, Coord)>>,
}

/// Rational coordinate, written as `"p/q"` or an integer string.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coord {
    Text(String),
    Int(i64),
}

impl Coord {
    fn parse(&self) -> Result<Rational, String> {
        match self {
            Coord::Int(i) => Ok(Rational::from_integer(*i)),
            Coord::Text(s) => s.parse().map_err(|_| format!("bad coordinate {s:?}")),
        }
    }
}

/// JSON graph document. Layout coordinates are exact rationals as strings.
pub fn write_graph_json(g: &Graph) -> String {
    let doc = GraphDoc {
        vertices: g.vertices().to_vec(),
        edges: g.edges(),
        layout: g.layout().map(|l| {
            l.iter().map(|(v, p)| (*v, (Coord::Text(p.x.to_string()), Coord::Text(p.y.to_string())))).collect()
        }),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("graph serializes");
    s.push('\n');
    s
}

pub fn read_graph_json(text: &str) -> Result<Graph, FormatError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    let g = make_graph(doc.vertices, doc.edges)?;
    match doc.layout {
        None => Ok(g),
        Some(raw) => {
            let mut layout = Layout::new();
            for (v, (x, y)) in raw {
                let x = x.parse().map_err(|m| dimacs_err(0, m))?;
                let y = y.parse().map_err(|m| dimacs_err(0, m))?;
                layout.insert(v, Point::new(x, y));
            }
            Ok(g.with_layout(layout)?)
        }
    }
}

/// Reads either format, choosing JSON when the text starts with `{`.
pub fn read_graph(text: &str) -> Result<Graph, FormatError> {
    if text.trim_start().starts_with('{') {
        read_graph_json(text)
    } else {
        read_dimacs(text)
    }
}

pub fn read_lists_json(text: &str) -> Result<ListAssignment, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_lists_json(lists: &ListAssignment) -> String {
    let mut s = serde_json::to_string_pretty(lists).expect("lists serialize");
    s.push('\n');
    s
}

/// Graphviz rendering; vertices carry their lists when given, and layout
/// positions when present.
pub fn write_dot(g: &Graph, lists: Option<&ListAssignment>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle, fontsize=8];\n");
    for v in g.vertices() {
        let mut label = v.to_string();
        if let Some(l) = lists.and_then(|l| l.get(v)) {
            let colors: Vec<String> = l.iter().map(|c| c.to_string()).collect();
            write!(label, "\\n{{{}}}", colors.join(",")).unwrap();
        }
        write!(out, "  \"{v}\" [label=\"{label}\"").unwrap();
        if let Some(p) = g.layout().and_then(|l| l.get(v)) {
            let f = |r: &Rational| *r.numer() as f64 / *r.denom() as f64;
            write!(out, ", pos=\"{},{}!\"", f(&p.x), f(&p.y)).unwrap();
        }
        out.push_str("];\n");
    }
    for (u, v) in g.edges() {
        writeln!(out, "  \"{u}\" -- \"{v}\";").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{canonical_lists, mirzakhani, wheel4};
    use crate::graph::plain_graph;

    #[test]
    fn dimacs_round_trip_keeps_identities() {
        let m = mirzakhani();
        let text = write_dimacs(&m);
        assert!(text.contains("p edge 63 183\n"));
        assert!(text.contains("c vertex 1 apex\n"));
        let back = read_dimacs(&text).unwrap();
        assert_eq!(back.vertices(), m.vertices());
        assert_eq!(back.edges(), m.edges());
    }

    #[test]
    fn plain_dimacs() {
        let g = read_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n").unwrap();
        assert_eq!(g, plain_graph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap());
    }

    #[test]
    fn dimacs_errors_have_locations() {
        let err = read_dimacs("p edge 2 1\ne 1 3\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: vertex 3 outside 1..=2");
        assert!(read_dimacs("e 1 2\n").is_err());
        assert!(read_dimacs("p edge 2 2\ne 1 2\n").is_err());
        assert!(read_dimacs("p edge 2 1\ne 1 1\n").is_err());
        assert!(read_dimacs("p edge 2 1\nx\n").is_err());
    }

    #[test]
    fn json_round_trip_with_layout() {
        let w = wheel4();
        let text = write_graph_json(&w);
        assert!(text.contains("\"hub:0,0\""));
        let back = read_graph(&text).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn json_accepts_integer_and_fraction_coordinates() {
        let text = r#"{"vertices":["plain:0","plain:1"],"edges":[["plain:0","plain:1"]],
                      "layout":{"plain:0":[0,"1/2"],"plain:1":["3","4"]}}"#;
        let g = read_graph(text).unwrap();
        let p = &g.layout().unwrap()[&VertexId::Plain(0)];
        assert_eq!(p.y, Rational::new(1, 2));
    }

    #[test]
    fn dot_mentions_lists() {
        let m = mirzakhani();
        let dot = write_dot(&m, Some(&canonical_lists()));
        assert!(dot.contains("\"apex\" [label=\"apex\\n{1,2,3,4}\""));
        assert_eq!(dot.matches(" -- ").count(), 183);
    }
}
