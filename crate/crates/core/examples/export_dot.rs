//! Writes the reduced graph of a single clause, colored by a witness
//! partition, in Graphviz format.
//!
//! ```text
//! cargo run --example export_dot > clause.dot && dot -Tsvg clause.dot > clause.svg
//! ```

use p2t::formats::to_dot;
use p2t::formula::{solve_nae_bruteforce, Formula};
use p2t::reduction::{reduce, witness_partition};

fn main() {
    let f = Formula::from_dimacs_clauses(3, &[&[-1, 2, -3]]).unwrap();
    let (graph, manifest) = reduce(&f).unwrap();
    let a = solve_nae_bruteforce(&f, 24).unwrap().expect("satisfiable");
    let p = witness_partition(&f, &a, &graph, &manifest).unwrap();
    print!("{}", to_dot(&graph, Some(&p)));
}
