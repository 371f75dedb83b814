//! Reduction from not-all-equal SAT to partitioning a graph's edges into
//! two trees, with certificate checking in both directions.
//!
//! The pipeline:
//!
//! 1. [`formula::parse_dimacs`] reads a NAE-CNF instance;
//! 2. [`reduction::reduce`] builds the gadget graph and a
//!    [`reduction::ReductionManifest`];
//! 3. [`reduction::witness_partition`] turns a good evaluation into two
//!    trees, [`graph::verify_two_tree_partition`] checks them, and
//!    [`reduction::extract_assignment`] maps them back;
//! 4. [`solver::solve_p2t`] decides small graphs exactly, with
//!    [`solver::solve_p2t_naive`] as the enumeration oracle.
//!
//! See the `examples/` directory of this crate for one runnable program
//! per capability.

pub mod cli;
pub mod corpus;
pub mod dsu;
pub mod formats;
pub mod formula;
pub mod graph;
pub mod reduction;
pub mod solver;

pub use formula::{Assignment, Clause, Formula, Literal};
pub use graph::{EdgeId, EdgePartition, Graph, Side, VertexId, VertexLabel, Verdict};
pub use reduction::{reduce, ReductionManifest};
pub use solver::{solve_p2t, Budget, SolveOutcome, SolveStatus};
