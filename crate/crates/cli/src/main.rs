//! `ramsey-circ`: residue constructions, clique numbers and Ramsey
//! lower-bound certificates from the command line.
//!
//! Exit codes: 0 success or verified, 1 refuted or discrepancy, 2 budget
//! exhausted, 64 usage or domain error, 65 malformed input, 66 unreadable
//! input, 74 output failure.

mod commands;
mod setspec;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ramsey_circulant::clique::Budget;

pub const EXIT_OK: u8 = 0;
pub const EXIT_REFUTED: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_NO_INPUT: u8 = 66;
pub const EXIT_IO: u8 = 74;

#[derive(Parser, Debug)]
#[command(
    name = "ramsey-circ",
    version,
    about = "Circulant Ramsey lower bounds from power residues"
)]
struct Cli {
    /// Log search progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Wall-clock limit per clique search, in seconds.
    #[arg(long, value_name = "S")]
    budget_seconds: Option<f64>,

    /// Node limit per clique search.
    #[arg(long, value_name = "M")]
    budget_nodes: Option<u64>,
}

impl BudgetArgs {
    pub fn budget(&self, cancel: &Arc<AtomicBool>) -> Result<Budget, CliError> {
        let mut b = Budget::unbounded().with_cancel_flag(cancel.clone());
        if let Some(s) = self.budget_seconds {
            let d = Duration::try_from_secs_f64(s)
                .map_err(|_| CliError::usage(format!("invalid --budget-seconds {s}")))?;
            b = b.with_max_duration(d);
        }
        if let Some(m) = self.budget_nodes {
            b = b.with_max_nodes(m);
        }
        Ok(b)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the k-th power residue connection set modulo a prime.
    Residues {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        order: u32,
        /// Emit the full classification as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Check that S1 and its complement witness R(p,q) > n.
    Verify {
        #[arg(long)]
        n: usize,
        /// Connection set: "1,4", "@file" or "auto:P,K".
        #[arg(long, allow_hyphen_values = true)]
        s1: String,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write a JSON certificate here.
        #[arg(long, value_name = "PATH")]
        cert: Option<PathBuf>,
    },
    /// Compute a clique number, or decide whether a clique of size T exists.
    Clique {
        /// DIMACS edge-format input.
        #[arg(
            long = "in",
            value_name = "FILE",
            conflicts_with = "circulant",
            required_unless_present = "circulant"
        )]
        input: Option<PathBuf>,
        /// Circulant graph as "N,s1,s2,...".
        #[arg(long, value_name = "N,S")]
        circulant: Option<String>,
        /// Decide whether a clique of this size exists.
        #[arg(long, value_name = "T")]
        decision: Option<usize>,
        /// Search the whole circulant instead of the neighbourhood of vertex 0.
        #[arg(long)]
        no_symmetry: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Derive bounds for every prime up to N and each residue order.
    Sweep {
        #[arg(long)]
        max_n: u64,
        /// Orders as a range "2..8" or a list "4,5".
        #[arg(long, default_value = "2..8")]
        orders: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Known-bounds CSV (p,q,n per line); defaults to the bundled table.
        #[arg(long, value_name = "FILE")]
        bounds: Option<PathBuf>,
        /// Write the report here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Re-check a certificate.
    Check {
        #[arg(long, value_name = "FILE")]
        cert: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Only run the static checks; skip re-running the searches.
        #[arg(long)]
        no_rerun: bool,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::new(EXIT_USAGE, message)
    }
}

impl From<ramsey_circulant::Error> for CliError {
    fn from(e: ramsey_circulant::Error) -> Self {
        use ramsey_circulant::Error as E;
        let code = match &e {
            E::Domain(_) | E::Construction(_) | E::Size(_) => EXIT_USAGE,
            E::Parse { .. } | E::Schema { .. } => EXIT_DATA,
            E::Io(_) => EXIT_IO,
        };
        CliError::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    env_logger::Builder::new()
        .filter_level(if cli.verbose {
            log::LevelFilter::Info
        } else {
            log::LevelFilter::Warn
        })
        .parse_default_env()
        .init();

    let cancel = Arc::new(AtomicBool::new(false));
    let flag = cancel.clone();
    let _ = ctrlc::set_handler(move || {
        if flag.swap(true, Ordering::SeqCst) {
            std::process::exit(130);
        }
        eprintln!("interrupted; finishing with partial results");
    });

    let result = match cli.command {
        Command::Residues { prime, order, json } => commands::residues(prime, order, json),
        Command::Verify {
            n,
            s1,
            p,
            q,
            budget,
            cert,
        } => commands::verify(n, &s1, p, q, budget.budget(&cancel), cert.as_deref()),
        Command::Clique {
            input,
            circulant,
            decision,
            no_symmetry,
            budget,
        } => commands::clique(
            input.as_deref(),
            circulant.as_deref(),
            decision,
            !no_symmetry,
            budget.budget(&cancel),
        ),
        Command::Sweep {
            max_n,
            orders,
            budget,
            bounds,
            out,
            format,
        } => commands::sweep(
            max_n,
            &orders,
            budget.budget(&cancel),
            bounds.as_deref(),
            out.as_deref(),
            format,
        ),
        Command::Check {
            cert,
            budget,
            no_rerun,
        } => commands::check(&cert, budget.budget(&cancel), !no_rerun),
    };

    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
