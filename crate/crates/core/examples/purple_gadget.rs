//! Enumerates every two-tree partition of small host graphs carrying a purple
//! gadget and counts those that put both connector edges in the same class.
//!
//! ```text
//! cargo run --release --example purple_gadget
//! ```

use p2t::corpus::purple_harnesses;
use p2t::solver::all_two_tree_partitions;

fn main() {
    for (graph, (u_conn, w_conn)) in purple_harnesses() {
        let all = all_two_tree_partitions(&graph, 16).unwrap();
        let same = all.iter().filter(|p| p.side(u_conn) == p.side(w_conn)).count();
        println!("{} vertices, {} edges: {} partitions, {same} with equal connectors", graph.vertex_count(), graph.edge_count(), all.len());
    }
}
