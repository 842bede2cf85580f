//! Command-line front end for `nbrw-core`.
//!
//! Every document carries the tool version and an echo of the resolved
//! configuration, and contains no timestamps, so identical configurations
//! produce byte-identical output.

mod commands;
mod output;

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use nbrw_core::graph::{builtin_graph, load_multigraph, AnyGraph};
use nbrw_core::NbrwError;

pub use output::Document;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug, Clone)]
#[command(name = "nbrw", version, about = "Non-backtracking random walks on multigraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Edge-chain structure: irreducibility, period, classes, turnaround bound.
    Analyze,
    /// n-step laws with Cesàro means and residue-class limits.
    Limits,
    /// Spectral-radius estimates for the NBRW and the simple random walk.
    Spectral,
    /// Cogrowth coefficients and sphere sizes.
    Cogrowth,
    /// Monte Carlo simulation of the vertex walk.
    Simulate,
    /// Isoperimetric and spectral amenability evidence for infinite sources.
    Amenability,
    /// Exact invariant suite; exits 1 on any violation.
    Check,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    Ordinary,
    Weighted,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Edge-list file, or `-` for stdin.
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "builtin")]
    pub graph: Option<String>,
    /// Builtin graph `name[:p1,p2,...]`.
    #[arg(long, global = true, value_name = "NAME")]
    pub builtin: Option<String>,
    /// Exact rational arithmetic.
    #[arg(long, global = true)]
    pub exact: bool,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the document here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<String>,
    #[arg(long, global = true)]
    pub nmax: Option<usize>,
    #[arg(long, global = true)]
    pub rmax: Option<usize>,
    /// Subset-size cap for the isoperimetric search.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_name = "VERTEX")]
    pub from: Option<String>,
    #[arg(long, global = true, value_name = "VERTEX")]
    pub to: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, global = true)]
    pub check_functional_equation: bool,
    /// Cap on materialized vertices and enumerated subsets.
    #[arg(long, global = true, env = "NBRW_BUDGET", default_value_t = 250_000)]
    pub budget: usize,
}

/// Fully resolved configuration, echoed into every document.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub graph_spec: String,
    pub numeric_mode: &'static str,
    pub format: Format,
    pub output: Option<String>,
    pub nmax: usize,
    pub rmax: usize,
    pub k: usize,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub from: Option<String>,
    pub to: Option<String>,
    pub mode: ModeArg,
    pub check_functional_equation: bool,
    pub budget: usize,
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<Self, CliError> {
        let o = &cli.options;
        let graph_spec = match (&o.graph, &o.builtin) {
            (Some(path), None) => format!("file:{path}"),
            (None, Some(name)) => format!("builtin:{name}"),
            _ => return Err(CliError::Input("exactly one of --graph or --builtin is required".into())),
        };
        let default_nmax = match cli.command {
            Command::Analyze => 0,
            Command::Limits => 60,
            Command::Spectral | Command::Amenability => 200,
            Command::Cogrowth | Command::Check => 20,
            Command::Simulate => 10,
        };
        let default_format = match cli.command {
            Command::Limits | Command::Cogrowth => Format::Csv,
            _ => Format::Json,
        };
        if cli.command == Command::Simulate {
            if o.trials == Some(0) {
                return Err(CliError::Input("--trials must be at least 1".into()));
            }
            if o.seed.is_none() {
                return Err(CliError::Input("simulate requires --seed".into()));
            }
        }
        if o.trials.is_some_and(|t| t > 0) && o.seed.is_none() {
            return Err(CliError::Input("--seed is required whenever --trials is given".into()));
        }
        Ok(RunConfig {
            command: cli.command,
            graph_spec,
            numeric_mode: if o.exact { "rational" } else { "float" },
            format: o.format.unwrap_or(default_format),
            output: o.output.clone(),
            nmax: o.nmax.unwrap_or(default_nmax),
            rmax: o.rmax.unwrap_or(40),
            k: o.k.unwrap_or(8),
            trials: if cli.command == Command::Simulate {
                Some(o.trials.unwrap_or(10_000))
            } else {
                o.trials
            },
            seed: o.seed,
            from: o.from.clone(),
            to: o.to.clone(),
            mode: o.mode.unwrap_or(ModeArg::Ordinary),
            check_functional_equation: o.check_functional_equation,
            budget: o.budget,
        })
    }

    pub fn exact(&self) -> bool {
        self.numeric_mode == "rational"
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] NbrwError),
    #[error("{0}")]
    Input(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for input errors, 3 for exceeded budgets, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(NbrwError::BudgetExceeded { .. }) => 3,
            CliError::Core(
                NbrwError::Parse { .. }
                | NbrwError::Degree { .. }
                | NbrwError::Disconnected(_)
                | NbrwError::UnknownVertex(_)
                | NbrwError::BadParams(_)
                | NbrwError::NotRegular(_)
                | NbrwError::FiniteGraph
                | NbrwError::InfiniteGraph,
            )
            | CliError::Input(_)
            | CliError::Io(_) => 2,
            CliError::Core(_) => 1,
        }
    }
}

/// Result of a run: the rendered document and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub document: String,
}

fn load_graph(cli: &Cli, stdin: &mut dyn Read) -> Result<AnyGraph, CliError> {
    let o = &cli.options;
    if let Some(name) = &o.builtin {
        return Ok(builtin_graph(name)?);
    }
    let path = o.graph.as_deref().unwrap_or("-");
    let text = if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    Ok(AnyGraph::Finite(load_multigraph(&text)?))
}

/// Resolves the configuration, loads the graph and runs the command.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    let config = RunConfig::resolve(cli)?;
    let graph = load_graph(cli, stdin)?;
    let report = commands::dispatch(&config, &graph)?;
    let document = output::render(&config, &report)?;
    Ok(Outcome {
        code: if report.violation { 1 } else { 0 },
        document,
    })
}
