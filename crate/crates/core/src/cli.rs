//! Command implementations behind the `p2t` binary.
//!
//! Each command writes its report to `out`, diagnostics to `err`, and
//! returns an [`Exit`] code: 0 yes/accept, 1 no/reject, 2 usage or format
//! error, 3 timeout.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::corpus;
use crate::formats::{self, FormatError};
use crate::formula::{bound_occurrences, is_good, parse_dimacs, solve_nae_bruteforce, Assignment, Formula, FormulaError};
use crate::graph::{degree_report, verify_two_tree_partition, EdgeId, EdgePartition, Graph, GraphError, Rejection, Verdict};
use crate::reduction::{
    clause_entered_by_one_class, extract_assignment, reduce, witness_partition, ReductionError, ReductionManifest,
};
use crate::solver::{solve_p2t, Budget, SolveOutcome, SolveStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    Yes = 0,
    No = 1,
    Usage = 2,
    Timeout = 3,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

pub const UNIT_CLAUSE_MESSAGE: &str = "trivially NAE-unsatisfiable (unit clause)";

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
struct Failure {
    exit: Exit,
    message: String,
}

impl Failure {
    fn usage(message: impl fmt::Display) -> Self {
        Failure { exit: Exit::Usage, message: message.to_string() }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::usage(e)
            }
        }
    )*};
}
usage_from!(FormulaError, FormatError, GraphError, ReductionError, std::io::Error);

type CmdResult = Result<Exit, Failure>;

fn finish(result: CmdResult, err: &mut dyn Write) -> Exit {
    match result {
        Ok(exit) => exit,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.exit
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Writes to `path` if given, else to `out`.
fn emit(path: Option<&Path>, contents: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(path) => write_file(path, contents),
        None => Ok(out.write_all(contents.as_bytes())?),
    }
}

fn read_cnf(path: &Path) -> Result<Formula, Failure> {
    parse_dimacs(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    formats::parse_graph(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn read_partition(path: &Path, graph: &Graph) -> Result<EdgePartition, Failure> {
    formats::parse_partition(&read(path)?, graph).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn read_manifest(path: &Path) -> Result<ReductionManifest, Failure> {
    formats::parse_manifest(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn has_unit_clause(formula: &Formula) -> bool {
    formula.clauses().iter().any(|c| c.len() == 1)
}

fn describe_rejection(graph: &Graph, reason: &Rejection) -> String {
    let edges = |list: &[EdgeId]| {
        list.iter()
            .map(|&e| {
                let (a, b) = graph.endpoints(e);
                format!("{}--{}", graph.label(a), graph.label(b))
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    match reason {
        Rejection::Empty => reason.tag().to_string(),
        Rejection::Cyclic { cycle } => format!("{}: {}", reason.tag(), edges(cycle)),
        Rejection::Disconnected { first, second } => {
            format!("{}: [{}] / [{}]", reason.tag(), edges(first), edges(second))
        }
    }
}

fn report_stats(out: &mut dyn Write, outcome: &SolveOutcome) -> std::io::Result<()> {
    writeln!(
        out,
        "nodes {} propagations {} elapsed {:.3}s",
        outcome.stats.nodes,
        outcome.stats.propagations,
        outcome.stats.elapsed.as_secs_f64()
    )
}

/// Reduces a DIMACS file to a graph file plus manifest. Unit clauses make
/// the instance trivially NAE-unsatisfiable; nothing is written then.
pub fn cmd_reduce(cnf: &Path, graph_out: &Path, manifest_out: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let mut run = || -> CmdResult {
        let formula = read_cnf(cnf)?;
        if has_unit_clause(&formula) {
            writeln!(out, "{UNIT_CLAUSE_MESSAGE}")?;
            return Ok(Exit::No);
        }
        let (graph, manifest) = reduce(&formula)?;
        write_file(graph_out, &formats::write_graph(&graph)?)?;
        write_file(manifest_out, &formats::write_manifest(&manifest))?;
        writeln!(out, "{} vertices, {} edges", graph.vertex_count(), graph.edge_count())?;
        Ok(Exit::Yes)
    };
    finish(run(), err)
}

/// Decides the formula by brute force and checks the reduction against
/// it: on a yes instance, the witness partition must verify and extract
/// back to the evaluation; on a no instance, the search must prove the
/// graph has no two-tree partition.
pub fn cmd_pipeline(cnf: &Path, budget: Budget, nae_var_cap: u32, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let mut run = || -> CmdResult {
        let formula = read_cnf(cnf)?;
        if has_unit_clause(&formula) {
            writeln!(out, "{UNIT_CLAUSE_MESSAGE}")?;
            return Ok(Exit::No);
        }
        let (graph, manifest) = reduce(&formula)?;
        writeln!(out, "formula: {} variables, {} clauses", formula.num_vars(), formula.clauses().len())?;
        writeln!(out, "graph: {} vertices, {} edges", graph.vertex_count(), graph.edge_count())?;

        match solve_nae_bruteforce(&formula, nae_var_cap)? {
            Some(assignment) => {
                writeln!(out, "good evaluation: {}", assignment.to_dimacs_line())?;
                let partition = witness_partition(&formula, &assignment, &graph, &manifest)?;
                if let Verdict::Reject { side, reason } = verify_two_tree_partition(&graph, &partition)? {
                    return Err(Failure::usage(format!(
                        "witness partition rejected, class {side}: {}",
                        describe_rejection(&graph, &reason)
                    )));
                }
                let extracted = extract_assignment(&graph, &manifest, &partition)?;
                if extracted != assignment {
                    return Err(Failure::usage(format!(
                        "roundtrip mismatch: extracted {}",
                        extracted.to_dimacs_line()
                    )));
                }
                if let Some(j) = clause_entered_by_one_class(&graph, &manifest, &partition) {
                    return Err(Failure::usage(format!("clause {} entered by one class only", j + 1)));
                }
                writeln!(out, "YES + certificates verified")?;
                Ok(Exit::Yes)
            }
            None => {
                writeln!(out, "no good evaluation; searching for a two-tree partition")?;
                let outcome = solve_p2t(&graph, budget);
                report_stats(out, &outcome)?;
                match outcome.status {
                    SolveStatus::NoPartition => {
                        writeln!(out, "NO: no-partition")?;
                        Ok(Exit::No)
                    }
                    SolveStatus::Timeout => {
                        writeln!(out, "timeout")?;
                        Ok(Exit::Timeout)
                    }
                    SolveStatus::Partition(_) => Err(Failure::usage(
                        "found a two-tree partition for a formula without a good evaluation",
                    )),
                }
            }
        }
    };
    finish(run(), err)
}

pub fn cmd_solve_nae(cnf: &Path, nae_var_cap: u32, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let mut run = || -> CmdResult {
        let formula = read_cnf(cnf)?;
        match solve_nae_bruteforce(&formula, nae_var_cap)? {
            Some(a) => {
                writeln!(out, "s NAE-SATISFIABLE")?;
                writeln!(out, "{}", a.to_dimacs_line())?;
                Ok(Exit::Yes)
            }
            None => {
                writeln!(out, "s NAE-UNSATISFIABLE")?;
                Ok(Exit::No)
            }
        }
    };
    finish(run(), err)
}

pub fn cmd_bound(cnf: &Path, output: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let mut run = || -> CmdResult {
        let bounded = bound_occurrences(&read_cnf(cnf)?);
        let mut text = format!(
            "c occurrence-bounded: variables 1..={} original, {} fresh\n",
            bounded.original_vars,
            bounded.fresh.len()
        );
        for (z, lit) in &bounded.fresh {
            text.push_str(&format!("c x{z} = {lit}\n"));
        }
        text.push_str(&bounded.formula.to_dimacs());
        emit(output, &text, out)?;
        Ok(Exit::Yes)
    };
    finish(run(), err)
}

/// Writes the witness partition for a good evaluation, read from
/// `assignment` or found by brute force.
pub fn cmd_witness(
    cnf: &Path,
    assignment: Option<&Path>,
    output: Option<&Path>,
    nae_var_cap: u32,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Exit {
    let mut run = || -> CmdResult {
        let formula = read_cnf(cnf)?;
        if has_unit_clause(&formula) {
            writeln!(err, "{UNIT_CLAUSE_MESSAGE}")?;
            return Ok(Exit::No);
        }
        let assignment = match assignment {
            Some(path) => Assignment::parse(&read(path)?, formula.num_vars())?,
            None => match solve_nae_bruteforce(&formula, nae_var_cap)? {
                Some(a) => a,
                None => {
                    writeln!(err, "formula has no good evaluation")?;
                    return Ok(Exit::No);
                }
            },
        };
        if !is_good(&formula, &assignment)? {
            writeln!(err, "assignment is not a good evaluation")?;
            return Ok(Exit::No);
        }
        let (graph, manifest) = reduce(&formula)?;
        let partition = witness_partition(&formula, &assignment, &graph, &manifest)?;
        emit(output, &formats::write_partition(&graph, &partition)?, out)?;
        Ok(Exit::Yes)
    };
    finish(run(), err)
}

pub fn cmd_verify(graph: &Path, partition: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let mut run = || -> CmdResult {
        let g = read_graph(graph)?;
        let p = read_partition(partition, &g)?;
        match verify_two_tree_partition(&g, &p).map_err(Failure::usage)? {
            Verdict::Accept => {
                writeln!(out, "accept")?;
                Ok(Exit::Yes)
            }
            Verdict::Reject { side, reason } => {
                writeln!(out, "reject class {side} {}", describe_rejection(&g, &reason))?;
                Ok(Exit::No)
            }
        }
    };
    finish(run(), err)
}

pub fn cmd_extract(graph: &Path, manifest: &Path, partition: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let mut run = || -> CmdResult {
        let g = read_graph(graph)?;
        let m = read_manifest(manifest)?;
        let p = read_partition(partition, &g)?;
        match extract_assignment(&g, &m, &p) {
            Ok(a) => {
                writeln!(out, "{}", a.to_dimacs_line())?;
                Ok(Exit::Yes)
            }
            Err(e @ ReductionError::PartitionRejected(_)) => {
                writeln!(err, "{e}")?;
                Ok(Exit::No)
            }
            Err(e) => Err(e.into()),
        }
    };
    finish(run(), err)
}

pub fn cmd_solve(graph: &Path, budget: Budget, output: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let mut run = || -> CmdResult {
        let g = read_graph(graph)?;
        let outcome = solve_p2t(&g, budget);
        match &outcome.status {
            SolveStatus::Partition(p) => {
                let text = formats::write_partition(&g, p)?;
                match output {
                    Some(path) => {
                        write_file(path, &text)?;
                        writeln!(out, "partition")?;
                    }
                    None => out.write_all(text.as_bytes())?,
                }
                report_stats(err, &outcome)?;
                Ok(Exit::Yes)
            }
            SolveStatus::NoPartition => {
                writeln!(out, "no-partition")?;
                report_stats(err, &outcome)?;
                Ok(Exit::No)
            }
            SolveStatus::Timeout => {
                writeln!(out, "timeout")?;
                report_stats(err, &outcome)?;
                Ok(Exit::Timeout)
            }
        }
    };
    finish(run(), err)
}

/// Prints every vertex degree and checks that vertices other than
/// `v(i)`/`nv(i)` have degree at most four.
pub fn cmd_stats(graph: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let mut run = || -> CmdResult {
        let g = read_graph(graph)?;
        let report = degree_report(&g);
        writeln!(out, "vertices {} edges {}", g.vertex_count(), g.edge_count())?;
        for (label, degree) in &report.degrees {
            writeln!(out, "{label} {degree}")?;
        }
        writeln!(out, "max degree {}", report.max)?;
        let non_literal = report.max_non_literal();
        if non_literal <= 4 {
            writeln!(out, "non-literal max degree {non_literal} (<= 4 ok)")?;
            Ok(Exit::Yes)
        } else {
            writeln!(out, "non-literal max degree {non_literal} (exceeds 4)")?;
            Ok(Exit::No)
        }
    };
    finish(run(), err)
}

pub fn cmd_export_dot(
    graph: &Path,
    partition: Option<&Path>,
    output: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Exit {
    let mut run = || -> CmdResult {
        let g = read_graph(graph)?;
        let p = partition.map(|path| read_partition(path, &g)).transpose()?;
        emit(output, &formats::to_dot(&g, p.as_ref()), out)?;
        Ok(Exit::Yes)
    };
    finish(run(), err)
}

/// Emits a seeded random formula in DIMACS.
pub fn cmd_random_cnf(
    seed: u64,
    max_vars: u32,
    max_clauses: usize,
    output: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Exit {
    let mut run = || -> CmdResult {
        let mut rng = corpus::rng(seed);
        let formula = corpus::random_formula(&mut rng, max_vars, max_clauses, &[2, 3]);
        emit(output, &format!("c seed {seed}\n{}", formula.to_dimacs()), out)?;
        Ok(Exit::Yes)
    };
    finish(run(), err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnf(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
        let path = dir.join(name);
        fs::write(&path, text).unwrap();
        path
    }

    #[test]
    fn reduce_unit_clause_writes_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let input = cnf(dir.path(), "unit.cnf", "p cnf 1 1\n1 0\n");
        let (g, m) = (dir.path().join("g"), dir.path().join("m"));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(cmd_reduce(&input, &g, &m, &mut out, &mut err), Exit::No);
        assert_eq!(String::from_utf8(out).unwrap().trim(), UNIT_CLAUSE_MESSAGE);
        assert!(!g.exists() && !m.exists());
    }

    #[test]
    fn missing_file_is_usage_error() {
        let dir = tempfile::tempdir().unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let missing = dir.path().join("nope.cnf");
        let exit = cmd_reduce(&missing, &dir.path().join("g"), &dir.path().join("m"), &mut out, &mut err);
        assert_eq!(exit, Exit::Usage);
        assert!(String::from_utf8(err).unwrap().starts_with("error:"));
    }

    #[test]
    fn malformed_cnf_is_usage_error() {
        let dir = tempfile::tempdir().unwrap();
        let input = cnf(dir.path(), "bad.cnf", "p cnf 2 1\n1 3 0\n");
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(cmd_pipeline(&input, Budget::unlimited(), 24, &mut out, &mut err), Exit::Usage);
        assert!(String::from_utf8(err).unwrap().contains("line 2"));
    }

    #[test]
    fn pipeline_empty_formula() {
        let dir = tempfile::tempdir().unwrap();
        let input = cnf(dir.path(), "empty.cnf", "p cnf 0 0\n");
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(cmd_pipeline(&input, Budget::unlimited(), 24, &mut out, &mut err), Exit::Yes);
        assert!(String::from_utf8(out).unwrap().contains("YES + certificates verified"));
    }

    #[test]
    fn exit_codes_are_stable() {
        assert_eq!([Exit::Yes, Exit::No, Exit::Usage, Exit::Timeout].map(Exit::code), [0, 1, 2, 3]);
    }
}
