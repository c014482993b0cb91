//! `netctrl`: structural controllability analysis from the command line.
//!
//! Exit status: 0 on success, 1 when the answer is negative (not
//! controllable, unsolvable, ranks disagree), 2 on usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "netctrl", version, about = "Target controllability of structured linear networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// System description (line format or JSON)
    file: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide functional target controllability for a steering set
    Check {
        #[command(flatten)]
        input: Input,
        /// Steering nodes (default: the available set)
        #[arg(long, num_args = 1..)]
        steering: Option<Vec<usize>>,
        /// Target nodes (default: the file's targets)
        #[arg(long, num_args = 1..)]
        targets: Option<Vec<usize>>,
        #[arg(long)]
        json: bool,
    },
    /// Minimum steering set chosen from the available nodes
    Solve {
        #[command(flatten)]
        input: Input,
        /// Prefer the lexicographically smallest steering set
        #[arg(long)]
        lowest_index: bool,
        #[arg(long)]
        json: bool,
    },
    /// Label available nodes essential, useful or useless
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Maximum set of disjoint paths from available nodes to targets
    Linking {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Minimal separator closest to the available nodes
    Separator {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Full-state structural controllability from the input columns
    Structural {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Compare structural ranks with random numeric realizations
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, env = "NETCTRL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Relative singular-value cutoff for numeric rank
        #[arg(long, default_value_t = netctrl_core::numeric::DEFAULT_REL_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Track a smooth reference output on a random realization
    Track {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 5.0)]
        horizon: f64,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        #[arg(long, env = "NETCTRL_SEED", default_value_t = 0)]
        seed: u64,
        /// Write t, reference, output and input columns as CSV
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Graphviz rendering of the system graph
    ExportDot {
        #[command(flatten)]
        input: Input,
        /// Style available nodes by class
        #[arg(long)]
        classify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("netctrl: {err:#}");
            ExitCode::from(2)
        }
    }
}
