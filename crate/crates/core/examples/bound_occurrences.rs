//! Rewrites a formula so every literal occurs at most twice, then checks that
//! satisfiability and the degree bound carry over.
//!
//! ```text
//! cargo run --example bound_occurrences
//! ```

use p2t::formula::{bound_occurrences, solve_nae_bruteforce, Formula};
use p2t::graph::degree_report;
use p2t::reduction::reduce;

fn main() {
    let f = Formula::from_dimacs_clauses(3, &[&[1, 2], &[1, 3], &[1, 2, 3], &[-1, -2, 3]]).unwrap();
    let bounded = bound_occurrences(&f);
    println!("before: {f} (max occurrence {})", f.max_literal_occurrence());
    println!("after:  {} (max occurrence {})", bounded.formula, bounded.formula.max_literal_occurrence());
    for (z, l) in &bounded.fresh {
        println!("  x{z} copies {l}");
    }
    let before = solve_nae_bruteforce(&f, 24).unwrap();
    let after = solve_nae_bruteforce(&bounded.formula, 24).unwrap();
    println!("satisfiable before {} after {}", before.is_some(), after.is_some());
    if let Some(a) = after {
        println!("projected evaluation {}", bounded.project(&a).to_dimacs_line());
    }
    let (graph, _) = reduce(&bounded.formula).unwrap();
    println!("max degree of reduced graph {}", degree_report(&graph).max);
}
