use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Args;
use flipcolor::dynamics::{run_chain, ChainKind};
use flipcolor::graph::{greedy_coloring, Coloring};

use crate::inputs::{build_dynamics, load_instance, load_params, read, write};
use crate::{GraphArgs, Outcome, ParamArgs, Preset};

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// glauber, flip, glauber-list or flip-list.
    #[arg(long, default_value = "flip")]
    pub chain: ChainKind,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of steps; defaults to kn·⌈ln 4n⌉.
    #[arg(long)]
    pub steps: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Start coloring file; defaults to a greedy coloring.
    #[arg(long)]
    pub start: Option<PathBuf>,
    /// Where to write the final coloring.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `kn·⌈ln 4n⌉` with `k` the palette size.
pub fn horizon(k: usize, n: usize) -> u64 {
    (k * n) as u64 * (4.0 * n as f64).ln().ceil() as u64
}

pub fn run(args: &SampleArgs) -> Result<Outcome> {
    let inst = load_instance(&args.graph)?;
    let params = load_params(&args.params, Preset::Optimal)?;
    let dynamics = build_dynamics(&inst, args.chain, params)?;
    let k = inst.palette.universe();
    let start = match &args.start {
        Some(path) => Coloring::parse(&read(path)?, k).with_context(|| format!("parsing {}", path.display()))?,
        None => greedy_coloring(&inst.graph, &inst.palette),
    };
    let steps = args.steps.unwrap_or_else(|| horizon(k, inst.graph.n()));
    let clock = Instant::now();
    let summary = run_chain(&inst.graph, &start, &dynamics, steps, args.seed)?;
    let wall = clock.elapsed();

    if args.steps.is_none() {
        println!("# steps = kn*ceil(ln 4n) = {steps}");
    }
    println!("chain,n,k,steps,seed,moves,proper,proper_hit_time,coloring");
    let hit = summary.proper_hit_time.map_or("-".to_string(), |t| t.to_string());
    println!(
        "{},{},{},{},{},{},{},{},{}",
        args.chain.name(),
        inst.graph.n(),
        k,
        summary.steps,
        args.seed,
        summary.moves,
        summary.proper,
        hit,
        summary.final_state.to_text()
    );
    eprintln!("wall time: {:.3} ms", wall.as_secs_f64() * 1e3);
    if let Some(path) = &args.out {
        write(path, &format!("{}\n", summary.final_state.to_text()))?;
    }
    Ok(Outcome::Pass)
}
