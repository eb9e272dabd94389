use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use flipcolor::dynamics::{ChainKind, Dynamics};
use flipcolor::generators;
use flipcolor::graph::{Graph, ListAssignment, Palette};
use flipcolor::params::FlipParams;
use flipcolor::rational::{parse_rational, Rational};

use crate::{GraphArgs, ParamArgs, Preset};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn load_graph(spec: &str) -> Result<Graph> {
    if let Some((kind, n)) = spec.split_once(':') {
        if !Path::new(spec).exists() {
            let n: usize = n.parse().with_context(|| format!("bad vertex count in {spec:?}"))?;
            return Ok(match kind {
                "cycle" => generators::cycle(n)?,
                "path" => generators::path(n),
                "complete" => generators::complete(n),
                other => bail!("unknown generator {other:?} (expected cycle, path or complete)"),
            });
        }
    }
    let text = read(Path::new(spec))?;
    Graph::parse(&text).with_context(|| format!("parsing {spec}"))
}

pub struct Instance {
    pub graph: Graph,
    pub palette: Palette,
    pub lists: Option<ListAssignment>,
}

impl Instance {
    /// Number of colors for uniform palettes.
    pub fn k(&self) -> Result<usize> {
        match &self.palette {
            Palette::Uniform(k) => Ok(*k),
            Palette::Lists(_) => bail!("this command needs --k rather than --lists"),
        }
    }
}

pub fn load_instance(args: &GraphArgs) -> Result<Instance> {
    let graph = load_graph(&args.graph)?;
    match (&args.k, &args.lists) {
        (Some(k), None) => {
            if *k == 0 {
                bail!("--k must be positive");
            }
            Ok(Instance {
                graph,
                palette: Palette::Uniform(*k),
                lists: None,
            })
        }
        (None, Some(path)) => {
            let lists = ListAssignment::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
            if lists.n() != graph.n() {
                bail!("list file has {} lines but the graph has {} vertices", lists.n(), graph.n());
            }
            Ok(Instance {
                graph,
                palette: Palette::Lists(lists.clone()),
                lists: Some(lists),
            })
        }
        _ => bail!("exactly one of --k and --lists is required"),
    }
}

pub fn load_params(args: &ParamArgs, default: Preset) -> Result<FlipParams> {
    if let Some(path) = &args.params {
        return FlipParams::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()));
    }
    Ok(match args.preset.unwrap_or(default) {
        Preset::Vigoda => FlipParams::vigoda(),
        Preset::Optimal => FlipParams::optimal(),
        Preset::Singletons => FlipParams::singletons(),
    })
}

pub fn build_dynamics(inst: &Instance, chain: ChainKind, params: FlipParams) -> Result<Dynamics> {
    Ok(match (chain, &inst.lists) {
        (ChainKind::Glauber, None) => Dynamics::glauber(inst.k()?),
        (ChainKind::Flip, None) => Dynamics::flip(inst.k()?, params),
        (ChainKind::GlauberList, Some(l)) => Dynamics::glauber_list(l.clone()),
        (ChainKind::FlipList, Some(l)) => Dynamics::flip_list(l.clone(), params),
        (ChainKind::GlauberList, None) => Dynamics::glauber_list(ListAssignment::uniform(inst.graph.n(), inst.k()?)),
        (ChainKind::FlipList, None) => {
            Dynamics::flip_list(ListAssignment::uniform(inst.graph.n(), inst.k()?), params)
        }
        (kind, Some(_)) => bail!("chain {} does not take --lists; use {}-list", kind.name(), kind.name()),
    })
}

pub fn rational(text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| anyhow::anyhow!("{e}"))
}
