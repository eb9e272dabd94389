use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use flipcolor::dynamics::ChainKind;
use flipcolor::markov::{transition_matrix, tv_profile_from_matrix, StartSet, DEFAULT_STATE_CAP};
use flipcolor::rational::format_rational;

use crate::inputs::{build_dynamics, load_instance, load_params, rational, write};
use crate::{GraphArgs, Outcome, ParamArgs, Preset};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Starts {
    /// Maximise over proper start colorings; the chain lives on Ω₀.
    Proper,
    /// Maximise over every coloring.
    All,
}

#[derive(Args, Debug)]
pub struct TvArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value = "flip")]
    pub chain: ChainKind,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Last time step reported.
    #[arg(long, default_value_t = 100)]
    pub tmax: usize,
    #[arg(long, value_enum, default_value = "proper")]
    pub starts: Starts,
    /// Threshold for the reported mixing time.
    #[arg(long, default_value = "1/4")]
    pub eps: String,
    /// Largest state space enumerated.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    pub cap: usize,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the transition matrix as `row,col,num/den` triplets.
    #[arg(long)]
    pub matrix_out: Option<PathBuf>,
}

pub fn run(args: &TvArgs) -> Result<Outcome> {
    let inst = load_instance(&args.graph)?;
    let params = load_params(&args.params, Preset::Optimal)?;
    let dynamics = build_dynamics(&inst, args.chain, params)?;
    let eps = rational(&args.eps)?;
    let starts = match args.starts {
        Starts::Proper => StartSet::Proper,
        Starts::All => StartSet::All,
    };
    let matrix = transition_matrix(&inst.graph, &dynamics, starts == StartSet::Proper, args.cap)?;
    if let Some(path) = &args.matrix_out {
        write(path, &matrix.to_csv())?;
    }
    let profile = tv_profile_from_matrix(&inst.graph, &dynamics, &matrix, args.tmax, starts)?;

    let mut csv = String::from("t,tv,tv_decimal\n");
    for t in 0..=args.tmax {
        let exact = profile.exact.as_ref().map_or("-".to_string(), |e| format_rational(&e[t]));
        writeln!(csv, "{t},{exact},{:.12}", profile.tv[t])?;
    }
    match &args.out {
        Some(path) => write(path, &csv)?,
        None => print!("{csv}"),
    }

    let n = inst.graph.n();
    let k = inst.palette.universe();
    let bound = (k * n) as f64 * (4.0 * n as f64).ln();
    let t_mix = match &profile.exact {
        Some(_) => profile.mixing_time_exact(&eps),
        None => profile.mixing_time(flipcolor::rational::to_f64(&eps) - profile.error_bound),
    };
    eprintln!(
        "states: {}, start classes: {}, mode: {}",
        profile.state_count,
        profile.start_count,
        if profile.exact.is_some() {
            "exact".to_string()
        } else {
            format!("float (error <= {:.3e})", profile.error_bound)
        }
    );
    match t_mix {
        Some(t) => eprintln!("t_mix({}) = {t}", args.eps),
        None => eprintln!("t_mix({}) > {}", args.eps, args.tmax),
    }
    eprintln!("kn ln(4n) = {bound:.2}");
    Ok(Outcome::Pass)
}
