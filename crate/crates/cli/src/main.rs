//! `quiverinv`: batch front end for the equivalence engine, the degree
//! bounds and the symbolic oracle.
//!
//! Exit status is 0 when a decision was made, 1 on malformed input or a
//! failed check, 2 when a budget or cap left the answer open.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quiverinv::engine::{CharMode, LemmaName};
use quiverinv::symbolic::FieldKind;

#[derive(Parser, Debug)]
#[command(name = "quiverinv", version, about = "Degree bounds for trace invariants of quivers at dimension two")]
pub struct Cli {
    /// Print JSON instead of an aligned table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Node budget for class searches; overrides QUIVERINV_BUDGET.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct QuiverArg {
    /// Quiver JSON file.
    #[arg(long)]
    pub quiver: PathBuf,
}

#[derive(Args, Debug)]
pub struct PathArg {
    /// Comma-separated arrow ids.
    #[arg(long, conflicts_with = "path_file")]
    pub path: Option<String>,
    /// Path JSON file.
    #[arg(long)]
    pub path_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Strongly connected components.
    Scc(QuiverArg),
    /// Longest primitive closed path.
    Mq(QuiverArg),
    /// A closed path with a given multidegree.
    Realize {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Multidegree JSON object, e.g. '{"x":1,"y":1}'.
        #[arg(long)]
        mdeg: String,
    },
    /// Decides whether a closed path is equivalent to zero.
    IsZero {
        #[command(flatten)]
        quiver: QuiverArg,
        #[command(flatten)]
        path: PathArg,
        #[arg(long)]
        mode: CharMode,
    },
    /// Compares two closed paths.
    Equiv {
        #[command(flatten)]
        quiver: QuiverArg,
        #[command(flatten)]
        path: PathArg,
        /// The second path, comma-separated.
        #[arg(long)]
        other: String,
        #[arg(long)]
        mode: CharMode,
    },
    /// Largest degree of a nonzero closed path up to a cap.
    MaxNonzero {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        mode: CharMode,
        #[arg(long)]
        cap: usize,
    },
    /// Checks M(Q) against m·d or 3n.
    VerifyBounds {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        mode: CharMode,
    },
    /// Nonzero certificate from double primitive paths (characteristic 2).
    Sufficiency {
        #[command(flatten)]
        quiver: QuiverArg,
        #[command(flatten)]
        path: PathArg,
    },
    /// Splits a nonzero path into primitive paths taken once or twice.
    Pa291 {
        #[command(flatten)]
        quiver: QuiverArg,
        #[command(flatten)]
        path: PathArg,
    },
    /// Builds the extremal quiver and path for (n, d, m).
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        mode: CharMode,
    },
    /// Decides decomposability of σ_k of a path product.
    Oracle {
        #[command(flatten)]
        quiver: QuiverArg,
        #[command(flatten)]
        path: PathArg,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        k: u8,
        #[arg(long)]
        field: FieldKind,
    },
    /// Compares the engine with the oracle on every closed path up to a cap.
    CrossValidate {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        cap: usize,
        #[arg(long)]
        mode: CharMode,
        /// Defaults to gf2 for char2 and gf3 for not2.
        #[arg(long)]
        field: Option<FieldKind>,
    },
    /// Searches the class of a path for a rewriting statement's shape.
    LemmaCheck {
        #[command(flatten)]
        quiver: QuiverArg,
        #[command(flatten)]
        path: PathArg,
        #[arg(long)]
        lemma: LemmaName,
        /// Role binding `name=arrow,arrow`; repeatable.
        #[arg(long = "role")]
        roles: Vec<String>,
    },
    /// Runs every strongly connected quiver in a size range.
    Sweep {
        #[arg(long, default_value_t = 3)]
        max_vertices: usize,
        #[arg(long, default_value_t = 4)]
        max_arrows: usize,
        /// Both modes when absent.
        #[arg(long)]
        mode: Option<CharMode>,
        /// Replaces the cap bound + m.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = 6)]
        oracle_cap: usize,
        #[arg(long, default_value_t = 4)]
        det_cap: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            println!("{}", outcome.text);
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status())
        }
    }
}
