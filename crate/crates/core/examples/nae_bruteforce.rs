//! Enumerates evaluations of a few formulas and reports the first good one.
//!
//! ```text
//! cargo run --example nae_bruteforce
//! ```

use p2t::formula::{solve_nae_bruteforce, Formula, DEFAULT_NAE_VAR_CAP};

fn main() {
    let formulas = [
        Formula::from_dimacs_clauses(3, &[&[-1, 2, -3]]).unwrap(),
        Formula::from_dimacs_clauses(2, &[&[1, 2], &[-1, -2]]).unwrap(),
        Formula::from_dimacs_clauses(2, &[&[1, 2], &[1, -2]]).unwrap(),
        Formula::from_dimacs_clauses(1, &[&[1, 1]]).unwrap(),
    ];
    for f in &formulas {
        match solve_nae_bruteforce(f, DEFAULT_NAE_VAR_CAP).unwrap() {
            Some(a) => println!("{f}: good evaluation {}", a.to_dimacs_line()),
            None => println!("{f}: no good evaluation"),
        }
    }
}
