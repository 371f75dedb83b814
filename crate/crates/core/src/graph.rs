//! Simple undirected labeled graphs, tree tests over edge subsets and the
//! two-tree partition verifier.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::dsu::RollbackDsu;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexLabel),
    #[error("self-loop at {0}")]
    SelfLoop(VertexLabel),
    #[error("parallel edge {0} -- {1}")]
    ParallelEdge(VertexLabel, VertexLabel),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(String),
    #[error("edge #{0} is not in the graph")]
    UnknownEdge(usize),
    #[error("partition covers {got} edges, graph has {expected}")]
    PartialPartition { expected: usize, got: usize },
    #[error("bad vertex label `{0}`")]
    BadLabel(String),
}

/// Vertex names used by the reduction, plus free-form names for other
/// graphs.
///
/// Rendered as `kind(indices)`, e.g. `t(-1)`, `v(2)`, `p(1,3)`,
/// `pg(1,2,4)`. Free names render bare.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    /// Shared vertex between consecutive variable gadgets; `t(-1)` is α
    /// and `t(n+1)` is ω.
    T(i64),
    /// Positive literal vertex of variable `i`.
    V(u32),
    /// Negative literal vertex of variable `i`.
    Nv(u32),
    /// Clause cycle vertex `p` of clause `j`, position `m`.
    P(u32, u32),
    Q(u32, u32),
    /// Literal attachment vertex of clause `j`, position `m`.
    R(u32, u32),
    /// Corner `c` (1..=4) of the purple gadget between `r(j,m)` and `q(j,m)`.
    Pg(u32, u32, u8),
    Free(String),
}

impl VertexLabel {
    pub fn free(name: impl Into<String>) -> Result<Self, GraphError> {
        let name = name.into();
        if is_valid_free_name(&name) {
            Ok(VertexLabel::Free(name))
        } else {
            Err(GraphError::BadLabel(name))
        }
    }

    /// Short kind tag as used in the text rendering.
    pub fn kind(&self) -> &'static str {
        match self {
            VertexLabel::T(_) => "t",
            VertexLabel::V(_) => "v",
            VertexLabel::Nv(_) => "nv",
            VertexLabel::P(..) => "p",
            VertexLabel::Q(..) => "q",
            VertexLabel::R(..) => "r",
            VertexLabel::Pg(..) => "pg",
            VertexLabel::Free(_) => "free",
        }
    }

    pub fn is_literal_vertex(&self) -> bool {
        matches!(self, VertexLabel::V(_) | VertexLabel::Nv(_))
    }

    pub fn is_purple(&self) -> bool {
        matches!(self, VertexLabel::Pg(..))
    }
}

fn is_valid_free_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ','))
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::T(i) => write!(f, "t({i})"),
            VertexLabel::V(i) => write!(f, "v({i})"),
            VertexLabel::Nv(i) => write!(f, "nv({i})"),
            VertexLabel::P(j, m) => write!(f, "p({j},{m})"),
            VertexLabel::Q(j, m) => write!(f, "q({j},{m})"),
            VertexLabel::R(j, m) => write!(f, "r({j},{m})"),
            VertexLabel::Pg(j, m, c) => write!(f, "pg({j},{m},{c})"),
            VertexLabel::Free(name) => f.write_str(name),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::BadLabel(s.to_string());
        let Some(open) = s.find('(') else {
            return VertexLabel::free(s);
        };
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let args: Vec<&str> = inner.split(',').collect();
        let uint = |a: &str| a.parse::<u32>().map_err(|_| bad());
        let label = match (&s[..open], args.as_slice()) {
            ("t", [i]) => VertexLabel::T(i.parse().map_err(|_| bad())?),
            ("v", [i]) => VertexLabel::V(uint(i)?),
            ("nv", [i]) => VertexLabel::Nv(uint(i)?),
            ("p", [j, m]) => VertexLabel::P(uint(j)?, uint(m)?),
            ("q", [j, m]) => VertexLabel::Q(uint(j)?, uint(m)?),
            ("r", [j, m]) => VertexLabel::R(uint(j)?, uint(m)?),
            ("pg", [j, m, c]) => {
                let c: u8 = c.parse().map_err(|_| bad())?;
                if !(1..=4).contains(&c) {
                    return Err(bad());
                }
                VertexLabel::Pg(uint(j)?, uint(m)?, c)
            }
            _ => return Err(bad()),
        };
        Ok(label)
    }
}

impl Serialize for VertexLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

/// Simple undirected graph. Vertices and edges keep insertion order, which
/// is the canonical order for serialization and search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<VertexLabel>,
    index: HashMap<VertexLabel, VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
    incident: Vec<Vec<EdgeId>>,
}

fn key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn add_vertex(&mut self, label: VertexLabel) -> Result<VertexId, GraphError> {
        if self.index.contains_key(&label) {
            return Err(GraphError::DuplicateVertex(label));
        }
        Ok(self.ensure_vertex(label))
    }

    /// Returns the id of `label`, inserting it if absent.
    pub fn ensure_vertex(&mut self, label: VertexLabel) -> VertexId {
        if let Some(&id) = self.index.get(&label) {
            return id;
        }
        let id = VertexId(self.labels.len());
        self.labels.push(label.clone());
        self.index.insert(label, id);
        self.incident.push(Vec::new());
        id
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<EdgeId, GraphError> {
        for v in [a, b] {
            if v.0 >= self.labels.len() {
                return Err(GraphError::UnknownVertex(format!("#{}", v.0)));
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop(self.labels[a.0].clone()));
        }
        if self.edge_index.contains_key(&key(a, b)) {
            return Err(GraphError::ParallelEdge(self.labels[a.0].clone(), self.labels[b.0].clone()));
        }
        let id = EdgeId(self.edges.len());
        self.edges.push((a, b));
        self.edge_index.insert(key(a, b), id);
        self.incident[a.0].push(id);
        self.incident[b.0].push(id);
        Ok(id)
    }

    /// Adds an edge between two labels, inserting missing vertices.
    pub fn add_edge_by_label(&mut self, a: VertexLabel, b: VertexLabel) -> Result<EdgeId, GraphError> {
        let a = self.ensure_vertex(a);
        let b = self.ensure_vertex(b);
        self.add_edge(a, b)
    }

    /// Builds a graph over free-named vertices, e.g. `[("a", "b"), ("b", "c")]`.
    pub fn from_named_edges(edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        for &(a, b) in edges {
            g.add_edge_by_label(VertexLabel::free(a)?, VertexLabel::free(b)?)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: VertexId) -> &VertexLabel {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn vertex(&self, label: &VertexLabel) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().enumerate().map(|(i, &(a, b))| (EdgeId(i), a, b))
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&key(a, b)).copied()
    }

    pub fn edge_by_label(&self, a: &VertexLabel, b: &VertexLabel) -> Option<EdgeId> {
        self.edge_between(self.vertex(a)?, self.vertex(b)?)
    }

    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v.0].len()
    }

    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e.0];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Number of connected components that contain at least one edge.
    pub fn nontrivial_components(&self) -> usize {
        let mut dsu = RollbackDsu::new(self.vertex_count());
        for &(a, b) in &self.edges {
            dsu.union(a.0, b.0);
        }
        (0..self.vertex_count())
            .filter(|&v| self.degree(VertexId(v)) > 0 && dsu.find(v) == v)
            .count()
    }
}

/// Which of the two trees an edge belongs to. `A` plays `T`, `B` plays `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// A classification of every edge of a graph, indexed by [`EdgeId`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgePartition {
    sides: Vec<Side>,
}

impl EdgePartition {
    pub fn new(sides: Vec<Side>) -> Self {
        EdgePartition { sides }
    }

    pub fn uniform(len: usize, side: Side) -> Self {
        EdgePartition { sides: vec![side; len] }
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn side(&self, e: EdgeId) -> Side {
        self.sides[e.0]
    }

    pub fn set(&mut self, e: EdgeId, side: Side) {
        self.sides[e.0] = side;
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn edges_of(&self, side: Side) -> Vec<EdgeId> {
        (0..self.sides.len()).filter(|&i| self.sides[i] == side).map(EdgeId).collect()
    }

    pub fn swapped(&self) -> Self {
        EdgePartition { sides: self.sides.iter().map(|s| s.opposite()).collect() }
    }
}

/// Why an edge class fails to be a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    Empty,
    /// Edges of one cycle, in cyclic order.
    Cyclic { cycle: Vec<EdgeId> },
    /// Edges of two different components of the class.
    Disconnected { first: Vec<EdgeId>, second: Vec<EdgeId> },
}

impl Rejection {
    pub fn tag(&self) -> &'static str {
        match self {
            Rejection::Empty => "class-empty",
            Rejection::Cyclic { .. } => "class-cyclic",
            Rejection::Disconnected { .. } => "class-disconnected",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject { side: Side, reason: Rejection },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

/// Checks one edge class; `None` means it is a tree.
fn tree_defect(graph: &Graph, edges: &[EdgeId]) -> Option<Rejection> {
    if edges.is_empty() {
        return Some(Rejection::Empty);
    }
    let mut dsu = RollbackDsu::new(graph.vertex_count());
    let mut forest: HashMap<VertexId, Vec<EdgeId>> = HashMap::new();
    for &e in edges {
        let (a, b) = graph.endpoints(e);
        if !dsu.union(a.0, b.0) {
            let mut cycle = forest_path(graph, &forest, a, b);
            cycle.push(e);
            return Some(Rejection::Cyclic { cycle });
        }
        forest.entry(a).or_default().push(e);
        forest.entry(b).or_default().push(e);
    }
    let root = |e: EdgeId| dsu.find(graph.endpoints(e).0 .0);
    let first_root = root(edges[0]);
    let (first, second): (Vec<EdgeId>, Vec<EdgeId>) = edges.iter().partition(|&&e| root(e) == first_root);
    if second.is_empty() {
        return None;
    }
    let second_root = root(second[0]);
    let second = second.into_iter().filter(|&e| root(e) == second_root).collect();
    Some(Rejection::Disconnected { first, second })
}

/// Edge path from `from` to `to` in a forest given by adjacency lists.
fn forest_path(
    graph: &Graph,
    forest: &HashMap<VertexId, Vec<EdgeId>>,
    from: VertexId,
    to: VertexId,
) -> Vec<EdgeId> {
    let mut via: HashMap<VertexId, EdgeId> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &e in forest.get(&v).into_iter().flatten() {
            let w = graph.other_endpoint(e, v);
            if w != from && !via.contains_key(&w) {
                via.insert(w, e);
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let e = via[&v];
        path.push(e);
        v = graph.other_endpoint(e, v);
    }
    path.reverse();
    path
}

fn dedup_checked(graph: &Graph, edges: &[EdgeId]) -> Result<Vec<EdgeId>, GraphError> {
    let mut seen = vec![false; graph.edge_count()];
    let mut out = Vec::with_capacity(edges.len());
    for &e in edges {
        if e.0 >= graph.edge_count() {
            return Err(GraphError::UnknownEdge(e.0));
        }
        if !std::mem::replace(&mut seen[e.0], true) {
            out.push(e);
        }
    }
    Ok(out)
}

/// True iff the edge set is nonempty, acyclic and connected. Isolated
/// vertices of the graph play no role.
pub fn is_tree(graph: &Graph, edges: &[EdgeId]) -> Result<bool, GraphError> {
    let edges = dedup_checked(graph, edges)?;
    Ok(tree_defect(graph, &edges).is_none())
}

/// Accepts iff both edge classes are trees. Class `A` is checked first.
pub fn verify_two_tree_partition(graph: &Graph, partition: &EdgePartition) -> Result<Verdict, GraphError> {
    if partition.len() != graph.edge_count() {
        return Err(GraphError::PartialPartition { expected: graph.edge_count(), got: partition.len() });
    }
    for side in [Side::A, Side::B] {
        if let Some(reason) = tree_defect(graph, &partition.edges_of(side)) {
            return Ok(Verdict::Reject { side, reason });
        }
    }
    Ok(Verdict::Accept)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    /// Degrees in vertex order.
    pub degrees: Vec<(VertexLabel, usize)>,
    pub max: usize,
}

impl DegreeReport {
    pub fn of(&self, label: &VertexLabel) -> Option<usize> {
        self.degrees.iter().find(|(l, _)| l == label).map(|&(_, d)| d)
    }

    /// Largest degree over vertices that are not `v(i)`/`nv(i)`.
    pub fn max_non_literal(&self) -> usize {
        self.degrees
            .iter()
            .filter(|(l, _)| !l.is_literal_vertex())
            .map(|&(_, d)| d)
            .max()
            .unwrap_or(0)
    }
}

pub fn degree_report(graph: &Graph) -> DegreeReport {
    let degrees: Vec<(VertexLabel, usize)> = (0..graph.vertex_count())
        .map(|v| (graph.label(VertexId(v)).clone(), graph.degree(VertexId(v))))
        .collect();
    let max = degrees.iter().map(|&(_, d)| d).max().unwrap_or(0);
    DegreeReport { degrees, max }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_named_edges(&[("a", "b"), ("b", "c"), ("c", "a")]).unwrap()
    }

    fn square() -> Graph {
        Graph::from_named_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap()
    }

    #[test]
    fn label_text_roundtrip() {
        for label in [
            VertexLabel::T(-1),
            VertexLabel::V(2),
            VertexLabel::Nv(0),
            VertexLabel::P(1, 3),
            VertexLabel::Q(2, 1),
            VertexLabel::R(4, 2),
            VertexLabel::Pg(1, 2, 4),
            VertexLabel::free("alpha_1").unwrap(),
        ] {
            assert_eq!(label.to_string().parse::<VertexLabel>().unwrap(), label);
        }
        assert_eq!(VertexLabel::Pg(1, 2, 4).to_string(), "pg(1,2,4)");
        assert_eq!(VertexLabel::T(-1).to_string(), "t(-1)");
        for bad in ["pg(1,2,5)", "v(-1)", "p(1)", "x(1)", "t(1", "a,b", ""] {
            assert!(bad.parse::<VertexLabel>().is_err(), "{bad}");
        }
    }

    #[test]
    fn rejects_non_simple_edges() {
        let mut g = Graph::new();
        let a = g.add_vertex(VertexLabel::V(1)).unwrap();
        let b = g.add_vertex(VertexLabel::V(2)).unwrap();
        g.add_edge(a, b).unwrap();
        assert!(matches!(g.add_edge(b, a), Err(GraphError::ParallelEdge(..))));
        assert!(matches!(g.add_edge(a, a), Err(GraphError::SelfLoop(_))));
        assert!(matches!(g.add_vertex(VertexLabel::V(1)), Err(GraphError::DuplicateVertex(_))));
    }

    #[test]
    fn is_tree_examples() {
        let g = Graph::from_named_edges(&[("a", "b")]).unwrap();
        assert!(is_tree(&g, &[EdgeId(0)]).unwrap());

        let t = triangle();
        assert!(!is_tree(&t, &[EdgeId(0), EdgeId(1), EdgeId(2)]).unwrap());
        assert!(is_tree(&t, &[EdgeId(0), EdgeId(1)]).unwrap());

        let s = square();
        assert!(!is_tree(&s, &[EdgeId(0), EdgeId(2)]).unwrap());
        assert!(!is_tree(&s, &[]).unwrap());
        assert_eq!(is_tree(&s, &[EdgeId(9)]), Err(GraphError::UnknownEdge(9)));
    }

    #[test]
    fn isolated_vertices_are_ignored() {
        let mut g = Graph::from_named_edges(&[("a", "b"), ("b", "c")]).unwrap();
        g.add_vertex(VertexLabel::free("lonely").unwrap()).unwrap();
        assert!(is_tree(&g, &[EdgeId(0), EdgeId(1)]).unwrap());
        assert_eq!(g.nontrivial_components(), 1);
    }

    #[test]
    fn verify_examples() {
        let path = Graph::from_named_edges(&[("a", "b"), ("b", "c")]).unwrap();
        let p = EdgePartition::new(vec![Side::A, Side::B]);
        assert_eq!(verify_two_tree_partition(&path, &p).unwrap(), Verdict::Accept);

        let s = square();
        let opposite = EdgePartition::new(vec![Side::A, Side::B, Side::A, Side::B]);
        match verify_two_tree_partition(&s, &opposite).unwrap() {
            Verdict::Reject { side: Side::A, reason: Rejection::Disconnected { first, second } } => {
                assert_eq!(first, vec![EdgeId(0)]);
                assert_eq!(second, vec![EdgeId(2)]);
            }
            other => panic!("unexpected {other:?}"),
        }

        let paths = EdgePartition::new(vec![Side::A, Side::A, Side::B, Side::B]);
        assert_eq!(verify_two_tree_partition(&s, &paths).unwrap(), Verdict::Accept);
    }

    #[test]
    fn verify_reports_cycle_and_empty_class() {
        let t = triangle();
        let all_a = EdgePartition::uniform(3, Side::A);
        match verify_two_tree_partition(&t, &all_a).unwrap() {
            Verdict::Reject { side: Side::A, reason: Rejection::Cyclic { cycle } } => {
                let mut sorted = cycle.clone();
                sorted.sort();
                assert_eq!(sorted, vec![EdgeId(0), EdgeId(1), EdgeId(2)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let path = Graph::from_named_edges(&[("a", "b"), ("b", "c")]).unwrap();
        let v = verify_two_tree_partition(&path, &EdgePartition::uniform(2, Side::A)).unwrap();
        assert_eq!(v, Verdict::Reject { side: Side::B, reason: Rejection::Empty });
    }

    #[test]
    fn cycle_witness_is_a_closed_walk() {
        // A path with a chord: the cycle is b-c-d-b, not the whole graph.
        let g = Graph::from_named_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("d", "b")]).unwrap();
        let v = verify_two_tree_partition(&g, &EdgePartition::uniform(5, Side::A)).unwrap();
        let Verdict::Reject { reason: Rejection::Cyclic { cycle }, .. } = v else { panic!("{v:?}") };
        assert_eq!(cycle, vec![EdgeId(2), EdgeId(1), EdgeId(4)]);
    }

    #[test]
    fn partial_partition_is_an_error() {
        let t = triangle();
        let e = verify_two_tree_partition(&t, &EdgePartition::uniform(2, Side::A)).unwrap_err();
        assert_eq!(e, GraphError::PartialPartition { expected: 3, got: 2 });
    }

    #[test]
    fn degrees() {
        let r = degree_report(&triangle());
        assert!(r.degrees.iter().all(|&(_, d)| d == 2));
        assert_eq!(r.max, 2);
        let star = Graph::from_named_edges(&[("c", "a"), ("c", "b"), ("c", "d")]).unwrap();
        let r = degree_report(&star);
        assert_eq!(r.of(&VertexLabel::free("c").unwrap()), Some(3));
        assert_eq!(r.max, 3);
    }
}
