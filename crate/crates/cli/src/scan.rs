use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use flipcolor::config::{default_gamma, AdjacentPair};
use flipcolor::coupling::{build_coupling, color_violations, nabla_bound, nabla_exact, NablaMode, NablaReport};
use flipcolor::graph::{proper_colorings, Palette};
use flipcolor::markov::DEFAULT_STATE_CAP;
use flipcolor::metric::MetricSpace;
use flipcolor::rational::{format_rational, Rational};
use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::inputs::{load_instance, load_params, rational, write};
use crate::{GraphArgs, Outcome, ParamArgs, Preset};

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Metric weight γ; defaults to εΔ/(53k).
    #[arg(long)]
    pub gamma: Option<String>,
    /// exact (shortest paths over all colorings) or bound.
    #[arg(long, default_value = "bound")]
    pub mode: NablaMode,
    /// Scan this many seeded random pairs instead of all of them.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    pub cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &ScanArgs) -> Result<Outcome> {
    let inst = load_instance(&args.graph)?;
    let k = inst.k()?;
    let g = &inst.graph;
    let params = load_params(&args.params, Preset::Optimal)?;
    let gamma = match &args.gamma {
        Some(text) => rational(text)?,
        None => default_gamma(g.max_degree(), k),
    };
    let Some(colorings) = proper_colorings(g, &Palette::Uniform(k), args.cap) else {
        bail!("more than {} proper colorings; lower the instance size or raise --cap", args.cap);
    };
    let mut pairs = Vec::new();
    for sigma in &colorings {
        for v in 0..g.n() {
            for c in 0..k {
                if c != sigma.get(v) && g.neighbors(v).iter().all(|&w| sigma.get(w) != c) {
                    pairs.push(AdjacentPair::recolor(sigma, v, c)?);
                }
            }
        }
    }
    if let Some(count) = args.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let mut picked: Vec<usize> = sample(&mut rng, pairs.len(), count.min(pairs.len())).into_vec();
        picked.sort_unstable();
        pairs = picked.into_iter().map(|i| pairs[i].clone()).collect();
    }
    let mut metric = match args.mode {
        NablaMode::Exact => Some(MetricSpace::new(g, Palette::Uniform(k), gamma.clone(), args.cap)?),
        NablaMode::Bound => None,
    };

    let mut csv = format!(
        "sigma,tau,{},marginal_error,color_violations,improvement_slack\n",
        NablaReport::csv_header()
    );
    let mut max_nabla: Option<Rational> = None;
    let mut min_slack: Option<Rational> = None;
    let mut violations = 0usize;
    let mut marginal_total = 0i64;
    for pair in &pairs {
        let coupling = build_coupling(g, pair, k, &params)?;
        let marginal = coupling.marginal_error();
        let bad = color_violations(g, &coupling);
        let report = match &mut metric {
            Some(m) => nabla_exact(g, pair, &params, m)?,
            None => nabla_bound(g, pair, k, &params, &gamma)?,
        };
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            pair.sigma().to_text().replace(' ', ""),
            pair.tau().to_text().replace(' ', ""),
            report.csv_row(),
            marginal,
            bad.len(),
            format_rational(&report.improvement_slack)
        )?;
        violations += bad.len();
        marginal_total += marginal;
        if max_nabla.as_ref().is_none_or(|m| report.nabla > *m) {
            max_nabla = Some(report.nabla.clone());
        }
        if min_slack.as_ref().is_none_or(|m| report.improvement_slack < *m) {
            min_slack = Some(report.improvement_slack.clone());
        }
    }
    let fmt = |x: &Option<Rational>| x.as_ref().map_or("-".to_string(), format_rational);
    writeln!(
        csv,
        "# summary: pairs={} max_nabla={} min_improvement_slack={} color_violations={} marginal_error={} gamma={} mode={:?}",
        pairs.len(),
        fmt(&max_nabla),
        fmt(&min_slack),
        violations,
        marginal_total,
        format_rational(&gamma),
        args.mode
    )?;
    match &args.out {
        Some(path) => write(path, &csv)?,
        None => print!("{csv}"),
    }
    let slack_ok = min_slack.is_none_or(|s| s >= Rational::zero());
    Ok(if violations == 0 && marginal_total == 0 && slack_ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}
