use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod inputs;
mod lp;
mod sample;
mod scan;
mod tvdist;

/// Flip and Glauber dynamics on graph colorings: sampling, exact mixing
/// profiles, coupling scans and the flip-parameter linear programs.
#[derive(Parser, Debug)]
#[command(name = "flipcolor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a chain from a start coloring and report the final state.
    Sample(sample::SampleArgs),
    /// Exact total-variation distance to uniform on proper colorings.
    Tvdist(tvdist::TvArgs),
    /// Expected one-step distance changes over adjacent proper pairs.
    NablaScan(scan::ScanArgs),
    /// Build, verify and solve the flip-parameter linear programs.
    Lp(lp::LpArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Edge-list file, or a generator such as `cycle:6`, `path:4`, `complete:3`.
    #[arg(long)]
    pub graph: String,
    /// Number of colors.
    #[arg(long, conflicts_with = "lists")]
    pub k: Option<usize>,
    /// List-assignment file (one line of colors per vertex).
    #[arg(long)]
    pub lists: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Preset {
    Vigoda,
    Optimal,
    Singletons,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    /// Flip-parameter file, one `num/den` per line.
    #[arg(long, conflicts_with = "preset")]
    pub params: Option<PathBuf>,
    /// Built-in flip parameters.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
}

/// Whether every check a command ran passed.
pub enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(args) => sample::run(&args),
        Command::Tvdist(args) => tvdist::run(&args),
        Command::NablaScan(args) => scan::run(&args),
        Command::Lp(args) => lp::run(&args),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
