//! Exact decision procedures for "can the edge set be split into two
//! trees?" on small graphs.
//!
//! [`solve_p2t_naive`] enumerates every classification and is the oracle.
//! [`solve_p2t`] is a backtracking search: edges are classified in DFS
//! order, each class keeps a rollback union-find, and an edge that would
//! close a cycle in one class is forced into the other. Connectivity is
//! only checked at leaves, after a global component-count pre-check.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::dsu::RollbackDsu;
use crate::graph::{verify_two_tree_partition, EdgeId, EdgePartition, Graph, Side, VertexId};

pub const DEFAULT_NAIVE_EDGE_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("graph has {edges} edges, enumeration cap is {cap}")]
    EdgeCapExceeded { edges: usize, cap: usize },
}

/// Limits for [`solve_p2t`]; `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn seconds(secs: f64) -> Self {
        Budget { time: Some(Duration::from_secs_f64(secs)), nodes: None }
    }

    pub fn nodes(cap: u64) -> Self {
        Budget { time: None, nodes: Some(cap) }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub propagations: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    Partition(EdgePartition),
    NoPartition,
    Timeout,
}

impl SolveStatus {
    pub fn tag(&self) -> &'static str {
        match self {
            SolveStatus::Partition(_) => "partition",
            SolveStatus::NoPartition => "no-partition",
            SolveStatus::Timeout => "timeout",
        }
    }

    /// Same status kind, ignoring the certificate.
    pub fn same_kind(&self, other: &SolveStatus) -> bool {
        self.tag() == other.tag()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub stats: SolveStats,
}

fn check_cap(graph: &Graph, cap: usize) -> Result<(), SolverError> {
    if graph.edge_count() > cap || graph.edge_count() >= 63 {
        return Err(SolverError::EdgeCapExceeded { edges: graph.edge_count(), cap });
    }
    Ok(())
}

/// Tries all `2^(|E|-1)` classifications with edge 0 in class `A`, in
/// counter order (bit `i` set puts edge `i+1` in `B`).
pub fn solve_p2t_naive(graph: &Graph, edge_cap: usize) -> Result<SolveOutcome, SolverError> {
    check_cap(graph, edge_cap)?;
    let start = Instant::now();
    let mut stats = SolveStats::default();
    let m = graph.edge_count();
    let mut status = SolveStatus::NoPartition;
    if m > 0 {
        for mask in 0..1u64 << (m - 1) {
            stats.nodes += 1;
            let p = partition_from_mask(m, mask << 1);
            if verify_two_tree_partition(graph, &p).expect("total partition").is_accept() {
                status = SolveStatus::Partition(p);
                break;
            }
        }
    }
    stats.elapsed = start.elapsed();
    Ok(SolveOutcome { status, stats })
}

/// Every accepted classification, both orientations included (`2^|E|`
/// candidates).
pub fn all_two_tree_partitions(graph: &Graph, edge_cap: usize) -> Result<Vec<EdgePartition>, SolverError> {
    check_cap(graph, edge_cap)?;
    let m = graph.edge_count();
    Ok((0..1u64 << m)
        .map(|mask| partition_from_mask(m, mask))
        .filter(|p| verify_two_tree_partition(graph, p).expect("total partition").is_accept())
        .collect())
}

/// Bit `i` of `mask` set puts edge `i` in class `B`.
fn partition_from_mask(m: usize, mask: u64) -> EdgePartition {
    EdgePartition::new((0..m).map(|i| if mask >> i & 1 == 1 { Side::B } else { Side::A }).collect())
}

/// Edge order of a depth-first traversal started at the lowest non-isolated
/// vertex, restarted at the next lowest for every further component.
pub fn dfs_edge_order(graph: &Graph) -> Vec<EdgeId> {
    let mut visited = vec![false; graph.vertex_count()];
    let mut emitted = vec![false; graph.edge_count()];
    let mut order = Vec::with_capacity(graph.edge_count());
    for root in 0..graph.vertex_count() {
        if visited[root] || graph.degree(VertexId(root)) == 0 {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![(VertexId(root), 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            let Some(&e) = graph.incident_edges(v).get(next) else {
                stack.pop();
                continue;
            };
            top.1 += 1;
            if emitted[e.0] {
                continue;
            }
            emitted[e.0] = true;
            order.push(e);
            let w = graph.other_endpoint(e, v);
            if !visited[w.0] {
                visited[w.0] = true;
                stack.push((w, 0));
            }
        }
    }
    order
}

struct Search<'g> {
    graph: &'g Graph,
    order: Vec<EdgeId>,
    sides: Vec<Option<Side>>,
    dsu: [RollbackDsu; 2],
    trail: Vec<EdgeId>,
    stats: SolveStats,
    budget: Budget,
    start: Instant,
    active_vertices: usize,
    shared_target: usize,
}

struct Timeout;

/// Plain union-find with path halving for one-shot reachability checks.
struct Forest(Vec<usize>);

impl Forest {
    fn new(n: usize) -> Self {
        Forest((0..n).collect())
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.0[v] != v {
            self.0[v] = self.0[self.0[v]];
            v = self.0[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

fn slot(side: Side) -> usize {
    match side {
        Side::A => 0,
        Side::B => 1,
    }
}

impl Search<'_> {
    fn out_of_budget(&self) -> bool {
        if self.budget.nodes.is_some_and(|cap| self.stats.nodes > cap) {
            return true;
        }
        // Clock reads are comparatively slow; sample them.
        self.stats.nodes.is_multiple_of(256) && self.budget.time.is_some_and(|limit| self.start.elapsed() >= limit)
    }

    fn closes_cycle(&self, e: EdgeId, side: Side) -> bool {
        let (a, b) = self.graph.endpoints(e);
        self.dsu[slot(side)].same(a.0, b.0)
    }

    fn assign(&mut self, e: EdgeId, side: Side) {
        let (a, b) = self.graph.endpoints(e);
        self.dsu[slot(side)].union(a.0, b.0);
        self.sides[e.0] = Some(side);
        self.trail.push(e);
    }

    fn undo_to(&mut self, trail_len: usize, times: [usize; 2]) {
        for e in self.trail.drain(trail_len..) {
            self.sides[e.0] = None;
        }
        self.dsu[0].rollback(times[0]);
        self.dsu[1].rollback(times[1]);
    }

    /// Forces edges until fixpoint. Returns false on a conflict (an edge
    /// that would close a cycle in both classes).
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for i in 0..self.order.len() {
                let e = self.order[i];
                if self.sides[e.0].is_some() {
                    continue;
                }
                match (self.closes_cycle(e, Side::A), self.closes_cycle(e, Side::B)) {
                    (true, true) => return false,
                    (true, false) => self.assign(e, Side::B),
                    (false, true) => self.assign(e, Side::A),
                    (false, false) => continue,
                }
                self.stats.propagations += 1;
                changed = true;
            }
            if !changed {
                return true;
            }
        }
    }

    /// Necessary conditions for completing the current partial assignment:
    ///
    /// * every class can still become connected using unassigned edges;
    /// * vertex counting: two trees with `|E|` edges in total touch
    ///   `|E| + 2` vertices with multiplicity, so exactly `shared_target`
    ///   non-isolated vertices must end up touched by both classes.
    fn feasible(&self) -> bool {
        let n = self.graph.vertex_count();
        let mut touch = vec![[false; 3]; n];
        for (e, a, b) in self.graph.edges() {
            let k = match self.sides[e.0] {
                Some(Side::A) => 0,
                Some(Side::B) => 1,
                None => 2,
            };
            touch[a.0][k] = true;
            touch[b.0][k] = true;
        }
        let shared = touch.iter().filter(|t| t[0] && t[1]).count();
        let single = touch.iter().filter(|t| !t[2] && (t[0] != t[1])).count();
        if shared > self.shared_target || single > self.active_vertices - self.shared_target {
            return false;
        }

        [Side::A, Side::B].into_iter().all(|side| {
            let mut reach = Forest::new(n);
            for (e, a, b) in self.graph.edges() {
                if self.sides[e.0] != Some(side.opposite()) {
                    reach.union(a.0, b.0);
                }
            }
            let mut root = None;
            self.graph.edges().filter(|(e, _, _)| self.sides[e.0] == Some(side)).all(|(_, a, _)| {
                let r = reach.find(a.0);
                *root.get_or_insert(r) == r
            })
        })
    }

    /// Both classes nonempty and connected; acyclicity is maintained
    /// throughout, so a class is a tree iff `edges = touched vertices - 1`.
    fn leaf_accepts(&self) -> bool {
        [Side::A, Side::B].into_iter().all(|side| {
            let mut touched = vec![false; self.graph.vertex_count()];
            let mut edges = 0usize;
            for (e, s) in self.sides.iter().enumerate() {
                if *s == Some(side) {
                    edges += 1;
                    let (a, b) = self.graph.endpoints(EdgeId(e));
                    touched[a.0] = true;
                    touched[b.0] = true;
                }
            }
            edges > 0 && edges + 1 == touched.iter().filter(|&&t| t).count()
        })
    }

    fn run(&mut self) -> Result<bool, Timeout> {
        self.stats.nodes += 1;
        if self.out_of_budget() {
            return Err(Timeout);
        }
        if !self.propagate() || !self.feasible() {
            return Ok(false);
        }
        let Some(&e) = self.order.iter().find(|e| self.sides[e.0].is_none()) else {
            return Ok(self.leaf_accepts());
        };
        for side in [Side::A, Side::B] {
            let mark = (self.trail.len(), [self.dsu[0].time(), self.dsu[1].time()]);
            self.assign(e, side);
            if self.run()? {
                return Ok(true);
            }
            self.undo_to(mark.0, mark.1);
        }
        Ok(false)
    }
}

/// Decides whether the edges split into two trees, within `budget`.
///
/// `Partition` carries a verified certificate, `NoPartition` is exact, and
/// `Timeout` leaves the question open.
pub fn solve_p2t(graph: &Graph, budget: Budget) -> SolveOutcome {
    let start = Instant::now();
    let done = |status, mut stats: SolveStats| {
        stats.elapsed = start.elapsed();
        SolveOutcome { status, stats }
    };
    // Each class is connected, so their union spans at most two components.
    let active_vertices = (0..graph.vertex_count()).filter(|&v| graph.degree(VertexId(v)) > 0).count();
    if graph.edge_count() < 2 || graph.nontrivial_components() > 2 {
        return done(SolveStatus::NoPartition, SolveStats::default());
    }
    // Touched vertices with multiplicity: |E| + 2 = active + shared.
    let Some(shared_target) = (graph.edge_count() + 2)
        .checked_sub(active_vertices)
        .filter(|&s| s <= active_vertices)
    else {
        return done(SolveStatus::NoPartition, SolveStats::default());
    };
    let mut search = Search {
        graph,
        order: dfs_edge_order(graph),
        sides: vec![None; graph.edge_count()],
        dsu: [RollbackDsu::new(graph.vertex_count()), RollbackDsu::new(graph.vertex_count())],
        trail: Vec::with_capacity(graph.edge_count()),
        stats: SolveStats::default(),
        budget,
        start,
        active_vertices,
        shared_target,
    };
    // The symmetry break fixes the first edge in order to A; seed it
    // before the first propagation pass.
    let first = search.order[0];
    search.assign(first, Side::A);
    let status = match search.run() {
        Err(Timeout) => SolveStatus::Timeout,
        Ok(false) => SolveStatus::NoPartition,
        Ok(true) => {
            let p = EdgePartition::new(search.sides.iter().map(|s| s.expect("leaf is total")).collect());
            debug_assert!(verify_two_tree_partition(graph, &p).unwrap().is_accept());
            SolveStatus::Partition(p)
        }
    };
    done(status, search.stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(edges: &[(&str, &str)]) -> Graph {
        Graph::from_named_edges(edges).unwrap()
    }

    #[test]
    fn naive_triangle() {
        let g = named(&[("a", "b"), ("b", "c"), ("c", "a")]);
        let out = solve_p2t_naive(&g, DEFAULT_NAIVE_EDGE_CAP).unwrap();
        // masks over edges 1,2: 00 all-A (cyclic), 01 -> edge 1 in B: {0,2} path + {1}
        let SolveStatus::Partition(p) = out.status else { panic!() };
        assert_eq!(p.sides(), &[Side::A, Side::B, Side::A]);
        assert_eq!(out.stats.nodes, 2);
    }

    #[test]
    fn naive_no_instances() {
        let single = named(&[("a", "b")]);
        assert_eq!(solve_p2t_naive(&single, 16).unwrap().status, SolveStatus::NoPartition);
        let two_triangles =
            named(&[("a", "b"), ("b", "c"), ("c", "a"), ("d", "e"), ("e", "f"), ("f", "d")]);
        assert_eq!(solve_p2t_naive(&two_triangles, 16).unwrap().status, SolveStatus::NoPartition);
        assert_eq!(solve_p2t_naive(&Graph::new(), 16).unwrap().status, SolveStatus::NoPartition);
    }

    #[test]
    fn naive_cap() {
        let edges: Vec<(String, String)> = (0..17).map(|i| (format!("a{i}"), format!("a{}", i + 1))).collect();
        let refs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let g = named(&refs);
        assert_eq!(
            solve_p2t_naive(&g, DEFAULT_NAIVE_EDGE_CAP).unwrap_err(),
            SolverError::EdgeCapExceeded { edges: 17, cap: 16 }
        );
    }

    #[test]
    fn all_partitions_of_square() {
        let g = named(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
        // Class A must be an arc of length 1, 2 or 3, and there are four
        // of each; its complement is then an arc too.
        let all = all_two_tree_partitions(&g, 16).unwrap();
        assert_eq!(all.len(), 12);
    }

    #[test]
    fn search_square() {
        let g = named(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
        let out = solve_p2t(&g, Budget::unlimited());
        let SolveStatus::Partition(p) = out.status else { panic!("{:?}", out.status) };
        assert!(verify_two_tree_partition(&g, &p).unwrap().is_accept());
    }

    #[test]
    fn search_component_precheck() {
        let g = named(&[("a", "b"), ("c", "d"), ("e", "f")]);
        let out = solve_p2t(&g, Budget::unlimited());
        assert_eq!(out.status, SolveStatus::NoPartition);
        assert_eq!(out.stats.nodes, 0);
        // Two components, each a path: one tree each.
        let g = named(&[("a", "b"), ("b", "c"), ("d", "e")]);
        assert!(matches!(solve_p2t(&g, Budget::unlimited()).status, SolveStatus::Partition(_)));
    }

    #[test]
    fn dfs_order_walks_paths() {
        let g = named(&[("a", "b"), ("c", "d"), ("b", "c")]);
        assert_eq!(dfs_edge_order(&g), vec![EdgeId(0), EdgeId(2), EdgeId(1)]);
    }

    #[test]
    fn node_cap_times_out() {
        // K4 has 6 edges; a cap of one node cannot finish.
        let g = named(&[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")]);
        let out = solve_p2t(&g, Budget::nodes(1));
        assert_eq!(out.status, SolveStatus::Timeout);
    }

    #[test]
    fn search_is_deterministic() {
        let g = named(&[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d"), ("d", "e")]);
        let x = solve_p2t(&g, Budget::unlimited());
        let y = solve_p2t(&g, Budget::unlimited());
        assert_eq!(x.status, y.status);
        assert_eq!((x.stats.nodes, x.stats.propagations), (y.stats.nodes, y.stats.propagations));
    }
}
