use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use noetherres::{run, Command, InputSource, Job, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "noetherres", version, about = "Short resolutions over a Noether normalization")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Field characteristic: 0 or a prime.
    #[arg(long = "char", global = true)]
    characteristic: Option<u64>,
    /// Scale degrees by the common column degree instead of the weight gcd.
    #[arg(long, global = true)]
    standard_graded: bool,
    #[arg(long, value_enum, default_value_t = Format::Ascii, global = true)]
    format: Format,
    /// Also report the Schreyer resolution before minimalization.
    #[arg(long, global = true)]
    keep_nonminimal: bool,
    /// Degree bound for the brute-force series checks.
    #[arg(long, default_value_t = 20, global = true)]
    bound: u64,
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Inline matrix, rows separated by `;`.
    #[arg(long, global = true, conflicts_with = "ideal")]
    matrix: Option<String>,
    /// Inline ideal generators separated by `,`.
    #[arg(long, global = true)]
    ideal: Option<String>,
    /// Weights for `--ideal`.
    #[arg(long, global = true, value_delimiter = ',', requires = "ideal")]
    weights: Option<Vec<u32>>,
    /// Krull dimension for `--ideal`.
    #[arg(long, global = true, requires = "ideal")]
    dim: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Reduced Gröbner basis of the toric ideal.
    Toric { path: Option<PathBuf> },
    /// Schreyer and minimal short resolution with Betti table.
    ShortRes { path: Option<PathBuf> },
    /// Dimension-3 Schreyer sets.
    Schreyer3 { path: Option<PathBuf> },
    /// Pruned dimension-3 sets with Betti table.
    Prune3 { path: Option<PathBuf> },
    /// Apery and exceptional sets.
    Apery { path: Option<PathBuf> },
    /// Hilbert series numerators and multiplicity.
    Hilbert { path: Option<PathBuf> },
    /// Castelnuovo-Mumford regularity.
    Reg { path: Option<PathBuf> },
    /// Runs every invariant check on the input.
    Check { path: Option<PathBuf> },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Ascii,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, path) = match cli.command {
        Cmd::Toric { path } => (Command::Toric, path),
        Cmd::ShortRes { path } => (Command::ShortRes, path),
        Cmd::Schreyer3 { path } => (Command::Schreyer3, path),
        Cmd::Prune3 { path } => (Command::Prune3, path),
        Cmd::Apery { path } => (Command::Apery, path),
        Cmd::Hilbert { path } => (Command::Hilbert, path),
        Cmd::Reg { path } => (Command::Reg, path),
        Cmd::Check { path } => (Command::Check, path),
    };
    let source = match (path, cli.matrix, cli.ideal) {
        (Some(p), None, None) => InputSource::Path(p),
        (None, Some(m), None) => InputSource::InlineMatrix(m),
        (None, None, Some(g)) => InputSource::InlineIdeal { generators: g, weights: cli.weights, d: cli.dim },
        _ => {
            eprintln!("error: give exactly one of a path, --matrix or --ideal");
            return ExitCode::from(1);
        }
    };
    let job = Job {
        command,
        source,
        characteristic: cli.characteristic,
        standard_graded: cli.standard_graded,
        keep_nonminimal: cli.keep_nonminimal,
        bound: cli.bound,
        seed: cli.seed,
    };
    match run(&job) {
        Ok(report) => {
            match cli.format {
                Format::Ascii => print!("{}", report.render_ascii()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
            }
            match &report.checks {
                Some(c) if !c.all_passed() => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error [{}]: {e}", e.kind());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
