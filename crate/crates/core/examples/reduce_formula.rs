//! Builds the gadget graph of a single 3-literal clause and prints its size,
//! degree profile and canonical text.
//!
//! ```text
//! cargo run --example reduce_formula
//! ```

use p2t::formats::{write_graph, write_manifest};
use p2t::formula::Formula;
use p2t::graph::degree_report;
use p2t::reduction::{expected_size, reduce};

fn main() {
    let f = Formula::from_dimacs_clauses(3, &[&[-1, 2, -3]]).unwrap();
    let (graph, manifest) = reduce(&f).unwrap();
    println!("{f}");
    println!("{} vertices, {} edges (expected {:?})", graph.vertex_count(), graph.edge_count(), expected_size(&f));
    let degrees = degree_report(&graph);
    println!("max degree {}, max non-literal degree {}", degrees.max, degrees.max_non_literal());
    print!("{}", write_graph(&graph).unwrap());
    print!("{}", write_manifest(&manifest));
}
