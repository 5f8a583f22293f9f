//! `dfwalk`: walk-based centralities and Estrada indices from the command line.
//!
//! Data goes to stdout (CSV with a header row, or JSON lines); diagnostics go
//! to stderr. Exit codes: 0 success, 1 unreadable or malformed input,
//! 2 overflow in linear mode, 3 invalid configuration, 4 numerical failure.

mod commands;
mod output;

use std::fmt;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dfwalk::graph::Format;
use dfwalk::{GraphKind, WeightScheme};

use crate::output::OutputFormat;

#[derive(Debug, Parser)]
#[command(
    name = "dfwalk",
    version,
    about = "Walk-based centralities and Estrada indices"
)]
pub struct Cli {
    /// Output table format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv, global = true)]
    pub output: OutputFormat,

    /// Run on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-node subgraph centrality.
    Centrality {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Estrada and double-factorial Estrada indices, bounds and clustering.
    Index {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long)]
        exact_erf: bool,
        #[arg(long, value_enum, default_value_t = Domain::Log)]
        domain: Domain,
    },
    /// Rank and linear correlation between two weight schemes.
    Compare {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "exp", value_parser = parse_scheme)]
        scheme_a: WeightScheme,
        #[arg(long, default_value = "df", value_parser = parse_scheme)]
        scheme_b: WeightScheme,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long)]
        exact_erf: bool,
        /// Emit the per-node table instead of the summary row.
        #[arg(long)]
        table: bool,
        /// Report whether the two schemes order these nodes differently.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        pair: Option<Vec<String>>,
    },
    /// Weighted closed-walk counts c_k tr(A^k) by walk length.
    Profile {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 300)]
        k_max: u32,
        /// Repeat for several schemes.
        #[arg(long = "scheme", default_values = ["df", "exp"], value_parser = parse_scheme)]
        schemes: Vec<WeightScheme>,
    },
    /// All connected graphs on n nodes, or every graph of a graph6 catalog.
    Enumerate {
        #[arg(long, required_unless_present = "from", conflicts_with = "from")]
        n: Option<usize>,
        /// graph6 catalog, one graph per line.
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Emit::Stats)]
        emit: Emit,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long)]
        exact_erf: bool,
    },
    /// Top-fraction hits of labelled nodes across a grid of beta values.
    ScanBeta {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "df", value_parser = parse_scheme)]
        scheme: WeightScheme,
        #[arg(long)]
        exact_erf: bool,
        /// node_id<TAB>0|1 per line; unlisted nodes count as 0.
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        fraction: f64,
        /// start:stop:step or a comma-separated list.
        #[arg(long, default_value = "0.01:1:0.01")]
        grid: String,
        /// Emit only the peak and its arg-max set.
        #[arg(long)]
        summary: bool,
    },
    /// ROC curve and AUC of a centrality against binary labels.
    Roc {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long)]
        labels: PathBuf,
        /// node_id<TAB>score per line, used instead of a centrality.
        #[arg(long)]
        scores: Option<PathBuf>,
        /// Emit only the AUC row.
        #[arg(long)]
        summary: bool,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file, or `-` for stdin.
    #[arg(required_unless_present = "generate", conflicts_with = "generate")]
    pub input: Option<PathBuf>,
    /// Built-in graph instead of a file: path:N, complete:N, cycle:N,
    /// star:N, trilattice:RxC, er:N:P:SEED.
    #[arg(long, value_parser = parse_kind)]
    pub generate: Option<GraphKind>,
    #[command(flatten)]
    pub parse: ParseArgs,
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    #[arg(long, default_value = "edge-list", value_parser = parse_format)]
    pub format: Format,
    /// Integer node ids start at 1.
    #[arg(long)]
    pub one_indexed: bool,
    /// Node ids are arbitrary tokens.
    #[arg(long, conflicts_with = "one_indexed")]
    pub named: bool,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    /// exp, df, geo:ALPHA or shift:T.
    #[arg(long, default_value = "df", value_parser = parse_scheme)]
    pub scheme: WeightScheme,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Use erf rather than its tanh surrogate.
    #[arg(long)]
    pub exact_erf: bool,
    #[arg(long, value_enum, default_value_t = Domain::Log)]
    pub domain: Domain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Domain {
    /// Signed-log arithmetic; never overflows.
    Log,
    /// Plain floating point; overflow is an error.
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Stats,
    Graph6,
}

fn parse_scheme(s: &str) -> Result<WeightScheme, String> {
    s.parse().map_err(|e: dfwalk::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<GraphKind, String> {
    s.parse().map_err(|e: dfwalk::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: dfwalk::Error| e.to_string())
}

#[derive(Debug)]
pub enum CliError {
    Core(dfwalk::Error),
    /// Input that could not be opened or read.
    Input(String),
    Config(String),
    Output(io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use dfwalk::Error as E;
        match self {
            CliError::Core(E::Parse { .. } | E::SelfLoop { .. }) | CliError::Input(_) => 1,
            CliError::Core(E::Overflow { .. }) => 2,
            CliError::Core(E::NoConvergence { .. }) => 4,
            CliError::Core(_) | CliError::Config(_) => 3,
            CliError::Output(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Input(m) | CliError::Config(m) => f.write_str(m),
            CliError::Output(e) => write!(f, "writing output: {e}"),
        }
    }
}

impl From<dfwalk::Error> for CliError {
    fn from(e: dfwalk::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Output(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dfwalk: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
