//! Maps every good evaluation of a formula to a two-tree partition, verifies
//! it and extracts the evaluation back.
//!
//! ```text
//! cargo run --example witness_roundtrip
//! ```

use p2t::formula::{is_good, Assignment, Formula};
use p2t::graph::verify_two_tree_partition;
use p2t::reduction::{extract_assignment, reduce, witness_partition};

fn main() {
    let f = Formula::from_dimacs_clauses(3, &[&[1, 2, 3], &[-1, -2]]).unwrap();
    let (graph, manifest) = reduce(&f).unwrap();
    println!("{f}: {} edges", graph.edge_count());
    for bits in 0..1u64 << f.num_vars() {
        let a = Assignment::from_bits(f.num_vars(), bits);
        if !is_good(&f, &a).unwrap() {
            continue;
        }
        let p = witness_partition(&f, &a, &graph, &manifest).unwrap();
        let verdict = verify_two_tree_partition(&graph, &p).unwrap();
        let back = extract_assignment(&graph, &manifest, &p).unwrap();
        println!("{} -> {:?} -> {} (roundtrip {})", a.to_dimacs_line(), verdict, back.to_dimacs_line(), back == a);
    }
}
