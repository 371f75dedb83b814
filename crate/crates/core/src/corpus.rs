//! Seeded random instances for tests, examples and `p2t random-cnf`.
//!
//! Everything is driven by a caller-supplied RNG; use [`rng`] for a
//! platform-stable stream.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Clause, Formula, Literal};
use crate::graph::{EdgeId, Graph, VertexLabel};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random formula with `1..=max_vars` variables, `0..=max_clauses` clauses
/// and clause sizes drawn from `sizes`.
pub fn random_formula<R: Rng>(rng: &mut R, max_vars: u32, max_clauses: usize, sizes: &[usize]) -> Formula {
    let n = rng.random_range(1..=max_vars.max(1));
    let m = rng.random_range(0..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            let k = *sizes.choose(rng).expect("nonempty size list");
            Clause::new((0..k).map(|_| random_literal(rng, n)).collect())
        })
        .collect();
    Formula::new(n, clauses).expect("literals drawn in range")
}

fn random_literal<R: Rng>(rng: &mut R, n: u32) -> Literal {
    Literal::new(rng.random_range(1..=n), rng.random_bool(0.5))
}

/// Random formula in which some literal occurs at least three times.
pub fn formula_with_heavy_literal<R: Rng>(rng: &mut R, max_vars: u32, max_clauses: usize) -> Formula {
    let n = rng.random_range(1..=max_vars.max(1));
    let m = rng.random_range(3..=max_clauses.max(3));
    let heavy = random_literal(rng, n);
    let hosts: Vec<usize> = {
        let mut all: Vec<usize> = (0..m).collect();
        all.shuffle(rng);
        all.truncate(rng.random_range(3..=m));
        all
    };
    let clauses = (0..m)
        .map(|j| {
            let k = rng.random_range(2..=3);
            let mut lits: Vec<Literal> = (0..k).map(|_| random_literal(rng, n)).collect();
            if hosts.contains(&j) {
                let at = rng.random_range(0..k);
                lits[at] = heavy;
            }
            Clause::new(lits)
        })
        .collect();
    Formula::new(n, clauses).expect("literals drawn in range")
}

/// Random simple graph on at most `max_vertices` vertices with an edge
/// count in `edges`.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, edges: std::ops::RangeInclusive<usize>) -> Graph {
    let max_vertices = max_vertices.max(2);
    let m = rng.random_range(edges).min(max_vertices * (max_vertices - 1) / 2);
    let min_vertices = (2..=max_vertices).find(|n| n * (n - 1) / 2 >= m).unwrap_or(max_vertices);
    let n = rng.random_range(min_vertices..=max_vertices);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    let mut g = Graph::new();
    for &(a, b) in &pairs[..m] {
        g.add_edge_by_label(vertex(a), vertex(b)).expect("distinct pairs");
    }
    g
}

fn vertex(i: usize) -> VertexLabel {
    VertexLabel::Free(format!("x{i}"))
}

/// A host cycle `c0 … c(len-1)` with `u = c0`, `w = c(distance)`, an
/// optional pendant edge at `c1`, and a purple gadget between `u` and `w`
/// (corners `pg(0,0,1..4)`, `pg1` adjacent to both).
///
/// Returns the graph and the two connector edges `(u–pg1, w–pg1)`.
///
/// # Panics
/// Panics unless `2 <= distance <= len - 2`, so that `u` and `w` are not
/// adjacent.
pub fn purple_harness(len: usize, distance: usize, pendant: bool) -> (Graph, (EdgeId, EdgeId)) {
    assert!(distance >= 2 && distance + 2 <= len, "u and w must not be adjacent");
    let c = |i: usize| VertexLabel::Free(format!("c{i}"));
    let pg = |corner: u8| VertexLabel::Pg(0, 0, corner);
    let mut g = Graph::new();
    for i in 0..len {
        g.add_edge_by_label(c(i), c((i + 1) % len)).unwrap();
    }
    if pendant {
        g.add_edge_by_label(c(1), VertexLabel::Free("leaf".into())).unwrap();
    }
    let u_conn = g.add_edge_by_label(c(0), pg(1)).unwrap();
    let w_conn = g.add_edge_by_label(c(distance), pg(1)).unwrap();
    for corner in 1..=4u8 {
        g.add_edge_by_label(pg(corner), pg(corner % 4 + 1)).unwrap();
    }
    (g, (u_conn, w_conn))
}

/// The five harness graphs used to check the purple-gadget connector property.
pub fn purple_harnesses() -> Vec<(Graph, (EdgeId, EdgeId))> {
    vec![
        purple_harness(4, 2, false),
        purple_harness(5, 2, false),
        purple_harness(6, 2, false),
        purple_harness(6, 3, false),
        purple_harness(4, 2, true),
    ]
}
