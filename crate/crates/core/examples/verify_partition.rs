//! Checks hand-written edge partitions of small graphs and prints the reason
//! for each rejection.
//!
//! ```text
//! cargo run --example verify_partition
//! ```

use p2t::graph::{verify_two_tree_partition, EdgePartition, Graph, Side};

fn main() {
    // square a-b-c-d with diagonal a-c
    let g = Graph::from_named_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")]).unwrap();
    use Side::{A, B};
    let cases = [
        ("two paths", vec![A, A, A, B, B]),
        ("all in A", vec![A; 5]),
        ("triangle in A", vec![A, A, B, B, A]),
        ("split A", vec![A, B, A, B, B]),
    ];
    for (name, sides) in cases {
        let p = EdgePartition::new(sides);
        println!("{name:14} {:?}", verify_two_tree_partition(&g, &p).unwrap());
    }
}
