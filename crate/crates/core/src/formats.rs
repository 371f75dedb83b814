//! Text formats: graph files, partition files, the JSON manifest and DOT.
//!
//! ```text
//! p2t-graph v1
//! t(-1) v(0)
//! v(0) t(0)
//! ...
//! ```
//!
//! ```text
//! p2t-partition v1
//! t(-1) v(0) A
//! ...
//! ```
//!
//! Graph files list edges in canonical order, one per line, each line
//! terminated by `\n`. Vertices are introduced by first appearance, so
//! isolated vertices do not survive a round trip.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{EdgePartition, Graph, GraphError, Side, VertexLabel};
use crate::reduction::ReductionManifest;

pub const GRAPH_HEADER: &str = "p2t-graph v1";
pub const PARTITION_HEADER: &str = "p2t-partition v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("label `{0}` cannot be written (free names must be nonempty without whitespace, parentheses or commas)")]
    Unwritable(String),
    #[error("manifest: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

fn checked(label: &VertexLabel) -> Result<&VertexLabel, FormatError> {
    match label {
        VertexLabel::Free(name) if VertexLabel::free(name.as_str()).is_err() => {
            Err(FormatError::Unwritable(name.clone()))
        }
        _ => Ok(label),
    }
}

pub fn write_graph(graph: &Graph) -> Result<String, FormatError> {
    let mut out = String::with_capacity(16 * (graph.edge_count() + 1));
    out.push_str(GRAPH_HEADER);
    out.push('\n');
    for (_, a, b) in graph.edges() {
        writeln!(out, "{} {}", checked(graph.label(a))?, checked(graph.label(b))?).unwrap();
    }
    Ok(out)
}

/// Splits the text into numbered, non-blank lines after checking the header.
fn body<'a>(text: &'a str, header: &str) -> Result<impl Iterator<Item = (usize, &'a str)>, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, first)) if first == header => {}
        Some((_, first)) => return Err(parse_err(1, format!("expected header `{header}`, found `{first}`"))),
        None => return Err(parse_err(1, format!("empty input, expected header `{header}`"))),
    }
    Ok(lines.filter(|(_, l)| !l.is_empty()))
}

fn parse_label(line: usize, token: &str) -> Result<VertexLabel, FormatError> {
    token.parse().map_err(|e: GraphError| parse_err(line, e.to_string()))
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut graph = Graph::new();
    for (line, content) in body(text, GRAPH_HEADER)? {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [a, b] = fields.as_slice() else {
            return Err(parse_err(line, format!("expected `<label> <label>`, found `{content}`")));
        };
        let (a, b) = (parse_label(line, a)?, parse_label(line, b)?);
        graph.add_edge_by_label(a, b).map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(graph)
}

pub fn write_partition(graph: &Graph, partition: &EdgePartition) -> Result<String, FormatError> {
    if partition.len() != graph.edge_count() {
        return Err(GraphError::PartialPartition { expected: graph.edge_count(), got: partition.len() }.into());
    }
    let mut out = String::new();
    out.push_str(PARTITION_HEADER);
    out.push('\n');
    for (e, a, b) in graph.edges() {
        writeln!(out, "{} {} {}", checked(graph.label(a))?, checked(graph.label(b))?, partition.side(e)).unwrap();
    }
    Ok(out)
}

/// Reads a partition of `graph`. Lines may come in any order but must
/// cover every edge exactly once.
pub fn parse_partition(text: &str, graph: &Graph) -> Result<EdgePartition, FormatError> {
    let mut sides: Vec<Option<Side>> = vec![None; graph.edge_count()];
    for (line, content) in body(text, PARTITION_HEADER)? {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [a, b, side] = fields.as_slice() else {
            return Err(parse_err(line, format!("expected `<label> <label> <A|B>`, found `{content}`")));
        };
        let side = match *side {
            "A" => Side::A,
            "B" => Side::B,
            other => return Err(parse_err(line, format!("class must be A or B, found `{other}`"))),
        };
        let (a, b) = (parse_label(line, a)?, parse_label(line, b)?);
        let e = graph
            .edge_by_label(&a, &b)
            .ok_or_else(|| parse_err(line, format!("edge {a} -- {b} is not in the graph")))?;
        if sides[e.0].replace(side).is_some() {
            return Err(parse_err(line, format!("edge {a} -- {b} listed twice")));
        }
    }
    let missing = sides.iter().filter(|s| s.is_none()).count();
    if missing > 0 {
        let first = sides.iter().position(Option::is_none).unwrap();
        let (a, b) = graph.endpoints(crate::graph::EdgeId(first));
        return Err(parse_err(
            text.lines().count(),
            format!(
                "partition is partial: {missing} edges unclassified, first is {} -- {}",
                graph.label(a),
                graph.label(b)
            ),
        ));
    }
    Ok(EdgePartition::new(sides.into_iter().map(Option::unwrap).collect()))
}

pub fn write_manifest(manifest: &ReductionManifest) -> String {
    let mut out = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    out.push('\n');
    out
}

pub fn parse_manifest(text: &str) -> Result<ReductionManifest, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))
}

/// DOT rendering. Edges touching a purple-gadget corner are dashed; with a
/// partition, class `A` edges are drawn blue and class `B` red.
pub fn to_dot(graph: &Graph, partition: Option<&EdgePartition>) -> String {
    let mut out = String::from("graph p2t {\n  node [shape=circle, fontsize=10];\n");
    for label in graph.labels() {
        if label.is_purple() {
            writeln!(out, "  \"{label}\" [color=purple];").unwrap();
        } else {
            writeln!(out, "  \"{label}\";").unwrap();
        }
    }
    for (e, a, b) in graph.edges() {
        let (la, lb) = (graph.label(a), graph.label(b));
        let mut attrs = Vec::new();
        if la.is_purple() || lb.is_purple() {
            attrs.push("style=dashed".to_string());
        }
        if let Some(p) = partition {
            let color = match p.side(e) {
                Side::A => "blue",
                Side::B => "red",
            };
            attrs.push(format!("color={color}"));
        }
        if attrs.is_empty() {
            writeln!(out, "  \"{la}\" -- \"{lb}\";").unwrap();
        } else {
            writeln!(out, "  \"{la}\" -- \"{lb}\" [{}];", attrs.join(", ")).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
