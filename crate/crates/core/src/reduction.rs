//! The gadget graph of a NAE-CNF formula and the witness maps in both
//! directions.
//!
//! Layout for `n` variables:
//!
//! * a chain of 4-cycles `t(i-1) v(i) t(i) nv(i)` for `i = 0..=n+1`, so
//!   consecutive gadgets share `t(i)`; `t(-1)` is α and `t(n+1)` is ω;
//! * per clause `j` of size `k`, a `2k`-cycle `p(j,1) q(j,1) … p(j,k) q(j,k)`;
//!   `r(j,m)` joins `p(j,m)` and the literal vertex (`v(i)` for `x_i`,
//!   `nv(i)` for `¬x_i`);
//! * per clause position a purple gadget between `r(j,m)` and `q(j,m)`:
//!   a 4-cycle `pg1 pg2 pg3 pg4` whose corner `pg1` is adjacent to both.
//!
//! A two-tree partition of this graph exists iff the formula has a good
//! (not-all-equal) evaluation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{is_good, Assignment, Clause, Formula, FormulaError, Literal};
use crate::graph::{verify_two_tree_partition, EdgeId, EdgePartition, Graph, GraphError, Side, VertexLabel, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error(
        "clause {clause} has a single literal: reduction undefined for unit clauses \
         (2-cycle would be a multi-edge); instance is trivially NAE-unsatisfiable"
    )]
    UnitClause { clause: usize },
    #[error("assignment is not a good evaluation of the formula")]
    NotGood,
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph and manifest disagree: {0}")]
    ManifestMismatch(String),
    #[error("partition rejected ({0}); extraction needs an accepted two-tree partition")]
    PartitionRejected(&'static str),
    #[error("partition valid but violates the gadget structure: {0}")]
    Structure(String),
}

/// Labels of the variable gadget `L_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableGadget {
    pub index: u32,
    pub left: VertexLabel,
    pub positive: VertexLabel,
    pub negative: VertexLabel,
    pub right: VertexLabel,
}

/// Labels of one literal position `m` of clause `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClausePosition {
    pub p: VertexLabel,
    pub q: VertexLabel,
    pub r: VertexLabel,
    pub pg: [VertexLabel; 4],
    pub literal_vertex: VertexLabel,
    /// The literal in DIMACS form.
    pub literal: i64,
}

/// Ties formula variables and clause positions to gadget vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionManifest {
    pub num_vars: u32,
    pub alpha: VertexLabel,
    pub omega: VertexLabel,
    /// Gadgets `L_0 ..= L_{n+1}`, indexed by variable.
    pub variables: Vec<VariableGadget>,
    pub clauses: Vec<Vec<ClausePosition>>,
}

impl ReductionManifest {
    /// Rebuilds the formula the manifest was produced from.
    pub fn formula(&self) -> Result<Formula, ReductionError> {
        let clauses = self
            .clauses
            .iter()
            .map(|positions| {
                positions
                    .iter()
                    .map(|pos| {
                        Literal::from_dimacs(pos.literal)
                            .ok_or_else(|| ReductionError::ManifestMismatch("zero literal".into()))
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(Clause::new)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Formula::new(self.num_vars, clauses)?)
    }

    /// Vertex labels of clause `j` (0-based), purple corners included.
    pub fn clause_vertices(&self, j: usize) -> Vec<VertexLabel> {
        self.clauses[j]
            .iter()
            .flat_map(|pos| [&pos.p, &pos.q, &pos.r].into_iter().chain(pos.pg.iter()).cloned())
            .collect()
    }

    /// Checks that every named label exists in `graph` and that each
    /// literal vertex matches its literal.
    pub fn check_against(&self, graph: &Graph) -> Result<(), ReductionError> {
        let missing = |l: &VertexLabel| ReductionError::ManifestMismatch(format!("{l} missing from graph"));
        for gadget in &self.variables {
            for l in [&gadget.left, &gadget.positive, &gadget.negative, &gadget.right] {
                graph.vertex(l).ok_or_else(|| missing(l))?;
            }
        }
        for pos in self.clauses.iter().flatten() {
            for l in [&pos.p, &pos.q, &pos.r, &pos.literal_vertex].into_iter().chain(&pos.pg) {
                graph.vertex(l).ok_or_else(|| missing(l))?;
            }
            let expected = Literal::from_dimacs(pos.literal).map(literal_vertex);
            if expected.as_ref() != Some(&pos.literal_vertex) {
                return Err(ReductionError::ManifestMismatch(format!(
                    "{} attaches to {} but its literal is {}",
                    pos.r, pos.literal_vertex, pos.literal
                )));
            }
        }
        Ok(())
    }
}

fn literal_vertex(lit: Literal) -> VertexLabel {
    if lit.is_negated() {
        VertexLabel::Nv(lit.var())
    } else {
        VertexLabel::V(lit.var())
    }
}

/// Builds the gadget graph. Vertex and edge order are canonical.
pub fn reduce(formula: &Formula) -> Result<(Graph, ReductionManifest), ReductionError> {
    if let Some(clause) = formula.clauses().iter().position(|c| c.len() < 2) {
        return Err(ReductionError::UnitClause { clause });
    }
    let n = formula.num_vars();
    let mut g = Graph::new();

    for i in -1..=i64::from(n) + 1 {
        g.add_vertex(VertexLabel::T(i))?;
    }
    for i in 0..=n + 1 {
        g.add_vertex(VertexLabel::V(i))?;
        g.add_vertex(VertexLabel::Nv(i))?;
    }
    let mut clauses = Vec::with_capacity(formula.clauses().len());
    for (j, clause) in (1u32..).zip(formula.clauses()) {
        let mut positions = Vec::with_capacity(clause.len());
        for (m, &lit) in (1u32..).zip(clause.literals()) {
            let pos = ClausePosition {
                p: VertexLabel::P(j, m),
                q: VertexLabel::Q(j, m),
                r: VertexLabel::R(j, m),
                pg: [1, 2, 3, 4].map(|c| VertexLabel::Pg(j, m, c)),
                literal_vertex: literal_vertex(lit),
                literal: lit.to_dimacs(),
            };
            for l in [&pos.p, &pos.q, &pos.r].into_iter().chain(&pos.pg) {
                g.add_vertex(l.clone())?;
            }
            positions.push(pos);
        }
        clauses.push(positions);
    }

    let mut edge = |a: &VertexLabel, b: &VertexLabel| -> Result<EdgeId, GraphError> {
        g.add_edge_by_label(a.clone(), b.clone())
    };

    let mut variables = Vec::with_capacity(n as usize + 2);
    for i in 0..=n + 1 {
        let gadget = VariableGadget {
            index: i,
            left: VertexLabel::T(i64::from(i) - 1),
            positive: VertexLabel::V(i),
            negative: VertexLabel::Nv(i),
            right: VertexLabel::T(i64::from(i)),
        };
        edge(&gadget.left, &gadget.positive)?;
        edge(&gadget.positive, &gadget.right)?;
        edge(&gadget.left, &gadget.negative)?;
        edge(&gadget.negative, &gadget.right)?;
        variables.push(gadget);
    }

    for positions in &clauses {
        let k = positions.len();
        for m in 0..k {
            edge(&positions[m].p, &positions[m].q)?;
            edge(&positions[m].q, &positions[(m + 1) % k].p)?;
        }
        for pos in positions {
            edge(&pos.r, &pos.p)?;
        }
        for pos in positions {
            edge(&pos.r, &pos.literal_vertex)?;
        }
        for pos in positions {
            let [pg1, pg2, pg3, pg4] = &pos.pg;
            edge(&pos.r, pg1)?;
            edge(&pos.q, pg1)?;
            edge(pg1, pg2)?;
            edge(pg2, pg3)?;
            edge(pg3, pg4)?;
            edge(pg4, pg1)?;
        }
    }

    let manifest = ReductionManifest {
        num_vars: n,
        alpha: VertexLabel::T(-1),
        omega: VertexLabel::T(i64::from(n) + 1),
        variables,
        clauses,
    };
    Ok((g, manifest))
}

/// Expected `(|V|, |E|)` of the reduced graph: `3n + 7 + 7K` vertices and
/// `4n + 8 + 10K` edges, `K` the total clause size.
pub fn expected_size(formula: &Formula) -> (usize, usize) {
    let n = formula.num_vars() as usize;
    let k = formula.total_literals();
    (3 * n + 7 + 7 * k, 4 * n + 8 + 10 * k)
}

/// Incremental partition builder keyed by labels.
struct Assigner<'a> {
    graph: &'a Graph,
    sides: Vec<Option<Side>>,
}

impl Assigner<'_> {
    fn put(&mut self, a: &VertexLabel, b: &VertexLabel, side: Side) -> Result<(), ReductionError> {
        let e = self
            .graph
            .edge_by_label(a, b)
            .ok_or_else(|| ReductionError::ManifestMismatch(format!("edge {a} -- {b} missing from graph")))?;
        self.sides[e.0] = Some(side);
        Ok(())
    }
}

/// Maps a good evaluation to a two-tree partition (`A` = T, `B` = F).
///
/// Padding variables `x_0`, `x_{n+1}` count as true, so class `A` always
/// owns `v(0)`.
pub fn witness_partition(
    formula: &Formula,
    assignment: &Assignment,
    graph: &Graph,
    manifest: &ReductionManifest,
) -> Result<EdgePartition, ReductionError> {
    if !is_good(formula, assignment)? {
        return Err(ReductionError::NotGood);
    }
    if manifest.num_vars != formula.num_vars() || manifest.formula()? != *formula {
        return Err(ReductionError::ManifestMismatch("manifest was built from a different formula".into()));
    }
    let n = formula.num_vars();
    let value = |i: u32| i == 0 || i == n + 1 || assignment.value(i);
    let positive_side = |i: u32| if value(i) { Side::A } else { Side::B };
    let side_of = |l: &VertexLabel| match *l {
        VertexLabel::V(i) => positive_side(i),
        VertexLabel::Nv(i) => positive_side(i).opposite(),
        _ => unreachable!("literal vertices are v/nv"),
    };

    let mut out = Assigner { graph, sides: vec![None; graph.edge_count()] };

    for gadget in &manifest.variables {
        let side = positive_side(gadget.index);
        out.put(&gadget.left, &gadget.positive, side)?;
        out.put(&gadget.positive, &gadget.right, side)?;
        out.put(&gadget.left, &gadget.negative, side.opposite())?;
        out.put(&gadget.negative, &gadget.right, side.opposite())?;
    }

    for positions in &manifest.clauses {
        let k = positions.len();
        for (m, pos) in positions.iter().enumerate() {
            let r_side = side_of(&pos.literal_vertex);
            let q_side = r_side.opposite();
            out.put(&pos.literal_vertex, &pos.r, r_side)?;
            out.put(&pos.r, &pos.p, r_side)?;
            out.put(&pos.p, &pos.q, q_side)?;
            out.put(&pos.q, &positions[(m + 1) % k].p, q_side)?;
            let [pg1, pg2, pg3, pg4] = &pos.pg;
            out.put(&pos.r, pg1, r_side)?;
            out.put(&pos.q, pg1, q_side)?;
            out.put(pg1, pg2, r_side)?;
            out.put(pg2, pg3, r_side)?;
            out.put(pg1, pg4, q_side)?;
            out.put(pg4, pg3, q_side)?;
        }
    }

    let sides = out
        .sides
        .into_iter()
        .enumerate()
        .map(|(e, s)| {
            s.ok_or_else(|| {
                let (a, b) = graph.endpoints(EdgeId(e));
                ReductionError::ManifestMismatch(format!(
                    "edge {} -- {} is not part of the construction",
                    graph.label(a),
                    graph.label(b)
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EdgePartition::new(sides))
}

/// Reads an evaluation off an accepted two-tree partition: the class
/// owning `v(0)` is `T`, and `x_i` is true iff `T` touches `v(i)`.
///
/// The structure the correctness argument guarantees is validated on the
/// way; a [`ReductionError::Structure`] error means that argument failed
/// for this input, which should never happen.
pub fn extract_assignment(
    graph: &Graph,
    manifest: &ReductionManifest,
    partition: &EdgePartition,
) -> Result<Assignment, ReductionError> {
    if let Verdict::Reject { reason, .. } = verify_two_tree_partition(graph, partition)? {
        return Err(ReductionError::PartitionRejected(reason.tag()));
    }
    manifest.check_against(graph)?;

    let touching = |label: &VertexLabel| -> Result<Side, ReductionError> {
        let v = graph.vertex(label).expect("checked against manifest");
        let mut sides = graph.incident_edges(v).iter().map(|&e| partition.side(e));
        let first = sides
            .next()
            .ok_or_else(|| ReductionError::Structure(format!("{label} has no edges")))?;
        if sides.any(|s| s != first) {
            return Err(ReductionError::Structure(format!("{label} is touched by both classes")));
        }
        Ok(first)
    };

    let tree = touching(&VertexLabel::V(0))?;
    let mut values = Vec::with_capacity(manifest.num_vars as usize);
    for gadget in &manifest.variables[1..=manifest.num_vars as usize] {
        let pos = touching(&gadget.positive)?;
        let neg = touching(&gadget.negative)?;
        if pos == neg {
            return Err(ReductionError::Structure(format!(
                "{} and {} are both touched only by class {pos}",
                gadget.positive, gadget.negative
            )));
        }
        values.push(pos == tree);
    }
    let assignment = Assignment::new(values);
    if !is_good(&manifest.formula()?, &assignment)? {
        return Err(ReductionError::Structure("extracted evaluation is not good".into()));
    }
    Ok(assignment)
}

/// Edges with both endpoints in clause `j` (0-based): the `2k`-cycle, the
/// `r`–`p` edges and the purple gadgets.
pub fn clause_edges(graph: &Graph, manifest: &ReductionManifest, j: usize) -> Vec<EdgeId> {
    let inside: std::collections::HashSet<_> =
        manifest.clause_vertices(j).iter().filter_map(|l| graph.vertex(l)).collect();
    graph
        .edges()
        .filter(|(_, a, b)| inside.contains(a) && inside.contains(b))
        .map(|(e, _, _)| e)
        .collect()
}

/// Index of the first clause whose edges all lie in one class, if any.
pub fn clause_entered_by_one_class(
    graph: &Graph,
    manifest: &ReductionManifest,
    partition: &EdgePartition,
) -> Option<usize> {
    (0..manifest.clauses.len()).find(|&j| {
        let edges = clause_edges(graph, manifest, j);
        let has = |s: Side| edges.iter().any(|&e| partition.side(e) == s);
        !(has(Side::A) && has(Side::B))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degree_report;

    fn single_clause() -> Formula {
        Formula::from_dimacs_clauses(3, &[&[-1, 2, -3]]).unwrap()
    }

    #[test]
    fn empty_formula_sizes() {
        let (g, m) = reduce(&Formula::new(0, vec![]).unwrap()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (7, 8));
        assert_eq!(m.alpha, VertexLabel::T(-1));
        assert_eq!(m.omega, VertexLabel::T(1));
    }

    #[test]
    fn single_clause_sizes() {
        let f = single_clause();
        let (g, _) = reduce(&f).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (37, 50));
        assert_eq!(expected_size(&f), (37, 50));
    }

    #[test]
    fn repeated_literal_stays_simple() {
        let f = Formula::from_dimacs_clauses(1, &[&[1, 1]]).unwrap();
        let (g, _) = reduce(&f).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (24, 32));
        let v1 = g.vertex(&VertexLabel::V(1)).unwrap();
        assert_eq!(g.degree(v1), 4);
    }

    #[test]
    fn unit_clause_rejected() {
        let f = Formula::from_dimacs_clauses(2, &[&[1, 2], &[2]]).unwrap();
        assert_eq!(reduce(&f).unwrap_err(), ReductionError::UnitClause { clause: 1 });
    }

    #[test]
    fn canonical_edge_prefix() {
        let (g, _) = reduce(&single_clause()).unwrap();
        let text: Vec<String> = g
            .edges()
            .take(4)
            .map(|(_, a, b)| format!("{} {}", g.label(a), g.label(b)))
            .collect();
        assert_eq!(text, ["t(-1) v(0)", "v(0) t(0)", "t(-1) nv(0)", "nv(0) t(0)"]);
        // first clause edge follows the 4(n+2) variable edges
        let (a, b) = g.endpoints(EdgeId(20));
        assert_eq!((g.label(a).to_string(), g.label(b).to_string()), ("p(1,1)".into(), "q(1,1)".into()));
    }

    #[test]
    fn literal_attachment() {
        let (g, m) = reduce(&single_clause()).unwrap();
        assert_eq!(m.clauses[0][0].literal_vertex, VertexLabel::Nv(1));
        assert_eq!(m.clauses[0][1].literal_vertex, VertexLabel::V(2));
        assert!(g.edge_by_label(&VertexLabel::R(1, 3), &VertexLabel::Nv(3)).is_some());
        m.check_against(&g).unwrap();
        assert_eq!(m.formula().unwrap(), single_clause());
    }

    #[test]
    fn single_clause_degrees() {
        let (g, _) = reduce(&single_clause()).unwrap();
        let report = degree_report(&g);
        assert!(report.max_non_literal() <= 4);
        assert_eq!(report.of(&VertexLabel::Nv(1)), Some(3));
        assert_eq!(report.of(&VertexLabel::V(1)), Some(2));
    }

    #[test]
    fn empty_formula_witness_is_two_paths() {
        let f = Formula::new(0, vec![]).unwrap();
        let (g, m) = reduce(&f).unwrap();
        let p = witness_partition(&f, &Assignment::new(vec![]), &g, &m).unwrap();
        let names = |side| {
            p.edges_of(side)
                .into_iter()
                .map(|e| {
                    let (a, b) = g.endpoints(e);
                    format!("{}-{}", g.label(a), g.label(b))
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(names(Side::A), ["t(-1)-v(0)", "v(0)-t(0)", "t(0)-v(1)", "v(1)-t(1)"]);
        assert_eq!(names(Side::B), ["t(-1)-nv(0)", "nv(0)-t(0)", "t(0)-nv(1)", "nv(1)-t(1)"]);
        assert!(verify_two_tree_partition(&g, &p).unwrap().is_accept());
    }

    #[test]
    fn single_clause_witness_roundtrip() {
        let f = single_clause();
        let (g, m) = reduce(&f).unwrap();
        for bits in 0..8 {
            let a = Assignment::from_bits(3, bits);
            if !is_good(&f, &a).unwrap() {
                assert_eq!(witness_partition(&f, &a, &g, &m).unwrap_err(), ReductionError::NotGood);
                continue;
            }
            let p = witness_partition(&f, &a, &g, &m).unwrap();
            assert_eq!(verify_two_tree_partition(&g, &p).unwrap(), Verdict::Accept);
            assert_eq!(extract_assignment(&g, &m, &p).unwrap(), a);
            assert_eq!(extract_assignment(&g, &m, &p.swapped()).unwrap(), a);
            assert_eq!(clause_entered_by_one_class(&g, &m, &p), None);
        }
    }

    #[test]
    fn all_equal_literals_is_not_a_witness() {
        // x1 = F, x2 = T, x3 = F makes every literal of (¬x1 ∨ x2 ∨ ¬x3) true
        let f = single_clause();
        let (g, m) = reduce(&f).unwrap();
        let a = Assignment::new(vec![false, true, false]);
        assert_eq!(witness_partition(&f, &a, &g, &m).unwrap_err(), ReductionError::NotGood);
    }

    #[test]
    fn extraction_rejects_invalid_partitions() {
        let f = single_clause();
        let (g, m) = reduce(&f).unwrap();
        let all_a = EdgePartition::uniform(g.edge_count(), Side::A);
        assert_eq!(
            extract_assignment(&g, &m, &all_a).unwrap_err(),
            ReductionError::PartitionRejected("class-cyclic")
        );
    }

    #[test]
    fn manifest_json_roundtrip() {
        let (_, m) = reduce(&single_clause()).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.contains("\"alpha\":\"t(-1)\""));
        let back: ReductionManifest = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
