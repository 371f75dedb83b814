//! Runs the exact partition search on reduced graphs of a yes instance and
//! a no instance, and maps the found partition back to an evaluation.
//!
//! ```text
//! cargo run --release --example search_reduced_graphs
//! ```

use p2t::formula::{is_good, Formula};
use p2t::reduction::{extract_assignment, reduce};
use p2t::solver::{solve_p2t, Budget, SolveStatus};

fn main() {
    let yes = Formula::from_dimacs_clauses(3, &[&[-1, 2, -3]]).unwrap();
    let no = Formula::from_dimacs_clauses(1, &[&[1, 1]]).unwrap();

    for (name, formula) in [("(¬x1 ∨ x2 ∨ ¬x3)", &yes), ("(x1 ∨ x1)", &no)] {
        let (graph, manifest) = reduce(formula).unwrap();
        println!("{name}: {} vertices, {} edges", graph.vertex_count(), graph.edge_count());
        let outcome = solve_p2t(&graph, Budget::seconds(600.0));
        println!(
            "  {} after {} nodes, {} propagations, {:.3}s",
            outcome.status.tag(),
            outcome.stats.nodes,
            outcome.stats.propagations,
            outcome.stats.elapsed.as_secs_f64()
        );
        if let SolveStatus::Partition(p) = &outcome.status {
            let a = extract_assignment(&graph, &manifest, p).unwrap();
            println!("  extracted {} (good: {})", a.to_dimacs_line(), is_good(formula, &a).unwrap());
        }
    }
}
