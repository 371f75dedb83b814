use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use p2t::cli;
use p2t::formula::DEFAULT_NAE_VAR_CAP;
use p2t::solver::Budget;

/// NAE-SAT to two-tree partition reduction toolkit.
#[derive(Parser)]
#[command(name = "p2t", version)]
struct Opts {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Wall-clock budget for the partition search, in seconds.
    #[arg(long, default_value_t = 600.0)]
    budget: f64,
    /// Cap on search nodes.
    #[arg(long)]
    node_cap: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget { nodes: self.node_cap, ..Budget::seconds(self.budget) }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the gadget graph and manifest of a DIMACS formula.
    Reduce {
        cnf: PathBuf,
        #[arg(long)]
        graph_out: PathBuf,
        #[arg(long)]
        manifest_out: PathBuf,
    },
    /// Decide the formula and check the reduction's certificates end to end.
    Pipeline {
        cnf: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = DEFAULT_NAE_VAR_CAP)]
        nae_var_cap: u32,
    },
    /// Brute-force NAE-SAT.
    SolveNae {
        cnf: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NAE_VAR_CAP)]
        nae_var_cap: u32,
    },
    /// Rewrite so that every literal occurs at most twice.
    Bound {
        cnf: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Partition file for a good evaluation (brute-forced if not given).
    Witness {
        cnf: PathBuf,
        #[arg(long)]
        assignment: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NAE_VAR_CAP)]
        nae_var_cap: u32,
    },
    /// Check that a partition file splits the graph into two trees.
    Verify { graph: PathBuf, partition: PathBuf },
    /// Read the evaluation off a two-tree partition of a reduced graph.
    Extract { graph: PathBuf, manifest: PathBuf, partition: PathBuf },
    /// Search for a two-tree partition.
    Solve {
        graph: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Degree report and the degree-four check.
    Stats { graph: PathBuf },
    /// Graphviz rendering; purple-gadget edges are dashed.
    ExportDot {
        graph: PathBuf,
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Seeded random formula with clause sizes 2 and 3.
    RandomCnf {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_vars: u32,
        #[arg(long, default_value_t = 8)]
        max_clauses: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let opts = match Opts::try_parse() {
        Ok(opts) => opts,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cli::Exit::Usage.code() } else { 0 });
        }
    };
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let (o, e) = (&mut out, &mut err);
    let exit = match opts.command {
        Command::Reduce { cnf, graph_out, manifest_out } => cli::cmd_reduce(&cnf, &graph_out, &manifest_out, o, e),
        Command::Pipeline { cnf, budget, nae_var_cap } => cli::cmd_pipeline(&cnf, budget.budget(), nae_var_cap, o, e),
        Command::SolveNae { cnf, nae_var_cap } => cli::cmd_solve_nae(&cnf, nae_var_cap, o, e),
        Command::Bound { cnf, out } => cli::cmd_bound(&cnf, out.as_deref(), o, e),
        Command::Witness { cnf, assignment, out, nae_var_cap } => {
            cli::cmd_witness(&cnf, assignment.as_deref(), out.as_deref(), nae_var_cap, o, e)
        }
        Command::Verify { graph, partition } => cli::cmd_verify(&graph, &partition, o, e),
        Command::Extract { graph, manifest, partition } => cli::cmd_extract(&graph, &manifest, &partition, o, e),
        Command::Solve { graph, budget, out } => cli::cmd_solve(&graph, budget.budget(), out.as_deref(), o, e),
        Command::Stats { graph } => cli::cmd_stats(&graph, o, e),
        Command::ExportDot { graph, partition, out } => {
            cli::cmd_export_dot(&graph, partition.as_deref(), out.as_deref(), o, e)
        }
        Command::RandomCnf { seed, max_vars, max_clauses, out } => {
            cli::cmd_random_cnf(seed, max_vars, max_clauses, out.as_deref(), o, e)
        }
    };
    ExitCode::from(exit.code())
}
