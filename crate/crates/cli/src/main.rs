//! `ratcrit`: exact defect ranks, windowed profiles and expansions from the
//! command line.
//!
//! Exit codes: 0 success, 1 internal error, 2 parse error, 3 configuration
//! error, 4 quadruple identity violation, 5 truncated stream, 6 expression
//! not expandable.

mod commands;
mod error;
mod series;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ratcrit::StarConvention;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "ratcrit", version, about = "Finite-rank defect computations over free groups")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Free group, e.g. "F(x,y)". Defaults to F(x) for `profile` and
    /// `hankel`, F(x,y) otherwise.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Action of the group on the extra basis vector `*`.
    #[arg(long, global = true, value_enum, default_value_t = Convention::Zero)]
    pub star_convention: Convention,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Zero,
    Strict,
    Unital,
}

impl From<Convention> for StarConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Zero => StarConvention::Zero,
            Convention::Strict => StarConvention::Strict,
            Convention::Unital => StarConvention::Unital,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ranks of the commutator defects of P with a group algebra element.
    CommutatorRank {
        #[arg(long)]
        elem: String,
    },
    /// Verifies a·t = s·b and reports both defect ranks of a quadruple.
    CheckQuadruple {
        #[arg(long, short)]
        a: String,
        #[arg(long, short)]
        b: String,
        #[arg(long, short)]
        s: String,
        #[arg(long, short)]
        t: String,
    },
    /// Windowed rank profile of the commutation defect of a series.
    Profile {
        /// A family name, `expr:<expression>`, `finite:<expression>`,
        /// `file:<path>` or a path ending in `.json`.
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = 8)]
        window: usize,
        #[arg(long, default_value_t = 4)]
        plateau: usize,
    },
    /// Hankel ranks of the coefficients of a one-variable series.
    Hankel {
        /// Same forms as `profile --series`.
        #[arg(long, alias = "series")]
        family: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, default_value_t = 4)]
        plateau: usize,
    },
    /// Truncated expansion of a rational expression.
    Expand {
        #[arg(long)]
        expr: String,
        /// Exact coefficients on the ball of this radius.
        #[arg(long, default_value_t = 4, conflicts_with = "tol")]
        radius: usize,
        /// Floating coefficients with an ℓ¹ tail bound below this tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Random quadruples through the criterion and the defect identities.
    Survey {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let g = &cli.global;
    match cli.command {
        Command::CommutatorRank { elem } => commands::commutator_rank(g, &elem),
        Command::CheckQuadruple { a, b, s, t } => commands::check_quadruple(g, [&a, &b, &s, &t]),
        Command::Profile { series, window, plateau } => commands::profile(g, &series, window, plateau),
        Command::Hankel { family, order, plateau } => commands::hankel(g, &family, order, plateau),
        Command::Expand { expr, radius, tol } => commands::expand(g, &expr, radius, tol),
        Command::Survey { count } => commands::survey(g, count),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Some(out) = e.report() {
                print!("{out}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
