//! Glauber and flip dynamics, with and without lists.
//!
//! Randomness contract: one ChaCha8 stream seeded with `seed_from_u64`.
//! Every step draws, in order, a vertex (`random_range(0..n)`), a color
//! index (`random_range(0..k)` or `random_range(0..|L(u)|)`) and, for flip
//! chains only, an acceptance word `next_u64()`. The acceptance word is
//! always drawn, even when the move is rejected early. A flip of a component
//! of size `ℓ` is accepted iff `word < ⌊(p_ℓ/ℓ)·2⁶⁴⌋` (accepted outright
//! when `p_ℓ/ℓ = 1`).

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{check_size, is_proper, Coloring, Graph, ListAssignment, Palette};
use crate::kempe::{component_capped, flip_in_place, is_flippable};
use crate::params::FlipParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainKind {
    Glauber,
    Flip,
    GlauberList,
    FlipList,
}

impl ChainKind {
    pub fn name(self) -> &'static str {
        match self {
            ChainKind::Glauber => "glauber",
            ChainKind::Flip => "flip",
            ChainKind::GlauberList => "glauber-list",
            ChainKind::FlipList => "flip-list",
        }
    }

    pub fn uses_lists(self) -> bool {
        matches!(self, ChainKind::GlauberList | ChainKind::FlipList)
    }

    pub fn uses_params(self) -> bool {
        matches!(self, ChainKind::Flip | ChainKind::FlipList)
    }
}

impl std::str::FromStr for ChainKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "glauber" => ChainKind::Glauber,
            "flip" => ChainKind::Flip,
            "glauber-list" => ChainKind::GlauberList,
            "flip-list" => ChainKind::FlipList,
            other => return Err(format!("unknown chain {other:?}")),
        })
    }
}

/// Acceptance thresholds `⌊(p_ℓ/ℓ)·2⁶⁴⌋`, indexed by `ℓ`.
#[derive(Clone, Debug)]
struct Thresholds(Vec<u128>);

impl Thresholds {
    fn new(params: &FlipParams) -> Self {
        let mut table = vec![0u128];
        for (i, p) in params.values().iter().enumerate() {
            let ell = BigInt::from(i + 1);
            let t: BigInt = (p.numer() << 64u32) / (p.denom() * ell);
            table.push(t.to_u128().expect("threshold is at most 2^64"));
        }
        Thresholds(table)
    }

    fn accepts(&self, ell: usize, word: u64) -> bool {
        self.0.get(ell).is_some_and(|&t| u128::from(word) < t)
    }
}

/// A chain definition: kind, palette or lists, and flip parameters.
#[derive(Clone, Debug)]
pub struct Dynamics {
    kind: ChainKind,
    palette: Palette,
    params: FlipParams,
    thresholds: Thresholds,
}

impl Dynamics {
    pub fn glauber(k: usize) -> Self {
        Self::build(ChainKind::Glauber, Palette::Uniform(k), FlipParams::singletons())
    }

    pub fn flip(k: usize, params: FlipParams) -> Self {
        Self::build(ChainKind::Flip, Palette::Uniform(k), params)
    }

    pub fn glauber_list(lists: ListAssignment) -> Self {
        Self::build(ChainKind::GlauberList, Palette::Lists(lists), FlipParams::singletons())
    }

    pub fn flip_list(lists: ListAssignment, params: FlipParams) -> Self {
        Self::build(ChainKind::FlipList, Palette::Lists(lists), params)
    }

    fn build(kind: ChainKind, palette: Palette, params: FlipParams) -> Self {
        let thresholds = Thresholds::new(&params);
        Dynamics {
            kind,
            palette,
            params,
            thresholds,
        }
    }

    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    /// Flip parameters; `(1, 0, ...)` for Glauber chains.
    pub fn params(&self) -> &FlipParams {
        &self.params
    }

    pub fn lists(&self) -> Option<&ListAssignment> {
        match &self.palette {
            Palette::Lists(l) => Some(l),
            Palette::Uniform(_) => None,
        }
    }

    /// Checks that `sigma` is a state of this chain on `graph`.
    pub fn validate(&self, graph: &Graph, sigma: &Coloring) -> Result<()> {
        check_size(graph, sigma)?;
        if let Some(lists) = self.lists() {
            if lists.n() != graph.n() {
                return Err(Error::InvalidLists(format!(
                    "{} lists for {} vertices",
                    lists.n(),
                    graph.n()
                )));
            }
        }
        match (0..graph.n()).find(|&u| !self.palette.allows(u, sigma.get(u))) {
            Some(u) => Err(Error::InvalidColor {
                vertex: u,
                color: sigma.get(u),
            }),
            None => Ok(()),
        }
    }

    /// One transition applied in place; returns whether the state changed.
    pub fn step<R: RngCore>(&self, graph: &Graph, sigma: &mut Coloring, rng: &mut R) -> bool {
        match self.kind {
            ChainKind::Glauber => {
                let Palette::Uniform(k) = self.palette else { unreachable!() };
                glauber_step(graph, sigma, k, rng)
            }
            ChainKind::GlauberList => glauber_list_step(graph, sigma, self.lists().unwrap(), rng),
            ChainKind::Flip => {
                let Palette::Uniform(k) = self.palette else { unreachable!() };
                flip_step_with(graph, sigma, k, &self.params, &self.thresholds, rng)
            }
            ChainKind::FlipList => {
                flip_list_step_with(graph, sigma, self.lists().unwrap(), &self.params, &self.thresholds, rng)
            }
        }
    }
}

fn blocked(graph: &Graph, sigma: &Coloring, u: usize, c: usize) -> bool {
    graph.neighbors(u).iter().any(|&w| sigma.get(w) == c)
}

/// Uniform vertex, uniform color in `0..k`; recolor unless a neighbor has it.
pub fn glauber_step<R: RngCore>(graph: &Graph, sigma: &mut Coloring, k: usize, rng: &mut R) -> bool {
    if graph.n() == 0 {
        return false;
    }
    let u = rng.random_range(0..graph.n());
    let c = rng.random_range(0..k);
    if c == sigma.get(u) || blocked(graph, sigma, u, c) {
        return false;
    }
    sigma.set(u, c);
    true
}

pub fn glauber_list_step<R: RngCore>(
    graph: &Graph,
    sigma: &mut Coloring,
    lists: &ListAssignment,
    rng: &mut R,
) -> bool {
    if graph.n() == 0 {
        return false;
    }
    let u = rng.random_range(0..graph.n());
    let list = lists.list(u);
    let c = list[rng.random_range(0..list.len())];
    if c == sigma.get(u) || blocked(graph, sigma, u, c) {
        return false;
    }
    sigma.set(u, c);
    true
}

/// Uniform `(u, c)`, then flip `S_σ(u, c)` with probability `p_ℓ/ℓ`.
pub fn flip_step<R: RngCore>(
    graph: &Graph,
    sigma: &mut Coloring,
    k: usize,
    params: &FlipParams,
    rng: &mut R,
) -> bool {
    flip_step_with(graph, sigma, k, params, &Thresholds::new(params), rng)
}

fn flip_step_with<R: RngCore>(
    graph: &Graph,
    sigma: &mut Coloring,
    k: usize,
    params: &FlipParams,
    thresholds: &Thresholds,
    rng: &mut R,
) -> bool {
    if graph.n() == 0 {
        return false;
    }
    let u = rng.random_range(0..graph.n());
    let c = rng.random_range(0..k);
    let word = rng.next_u64();
    let Some(comp) = component_capped(graph, sigma, u, c, params.cutoff()) else {
        return false;
    };
    if comp.is_monochromatic() || !thresholds.accepts(comp.len(), word) {
        return false;
    }
    flip_in_place(sigma, &comp).expect("component computed against the current state");
    true
}

/// List flip dynamics: only flippable components are ever flipped.
pub fn flip_list_step<R: RngCore>(
    graph: &Graph,
    sigma: &mut Coloring,
    lists: &ListAssignment,
    params: &FlipParams,
    rng: &mut R,
) -> bool {
    flip_list_step_with(graph, sigma, lists, params, &Thresholds::new(params), rng)
}

fn flip_list_step_with<R: RngCore>(
    graph: &Graph,
    sigma: &mut Coloring,
    lists: &ListAssignment,
    params: &FlipParams,
    thresholds: &Thresholds,
    rng: &mut R,
) -> bool {
    if graph.n() == 0 {
        return false;
    }
    let u = rng.random_range(0..graph.n());
    let list = lists.list(u);
    let c = list[rng.random_range(0..list.len())];
    let word = rng.next_u64();
    let Some(comp) = component_capped(graph, sigma, u, c, params.cutoff()) else {
        return false;
    };
    if comp.is_monochromatic() || !is_flippable(lists, &comp) || !thresholds.accepts(comp.len(), word) {
        return false;
    }
    flip_in_place(sigma, &comp).expect("component computed against the current state");
    true
}

/// A running chain: current state, its random stream and a step counter.
#[derive(Clone, Debug)]
pub struct ChainState {
    pub current: Coloring,
    pub step_count: u64,
    rng: ChaCha8Rng,
}

impl ChainState {
    pub fn new(start: Coloring, seed: u64) -> Self {
        ChainState {
            current: start,
            step_count: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn advance(&mut self, graph: &Graph, dynamics: &Dynamics) -> bool {
        self.step_count += 1;
        dynamics.step(graph, &mut self.current, &mut self.rng)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSummary {
    pub final_state: Coloring,
    pub steps: u64,
    pub moves: u64,
    /// First step count at which the state was proper (0 if it started so).
    pub proper_hit_time: Option<u64>,
    pub proper: bool,
    pub histogram: Vec<usize>,
}

/// Runs `steps` transitions from `start`; deterministic given `seed`.
pub fn run_chain(
    graph: &Graph,
    start: &Coloring,
    dynamics: &Dynamics,
    steps: u64,
    seed: u64,
) -> Result<ChainSummary> {
    dynamics.validate(graph, start)?;
    let mut state = ChainState::new(start.clone(), seed);
    let mut proper = is_proper(graph, start)?;
    let mut proper_hit_time = proper.then_some(0);
    let mut moves = 0;
    for _ in 0..steps {
        if state.advance(graph, dynamics) {
            moves += 1;
            if !proper {
                proper = is_proper(graph, &state.current)?;
                if proper {
                    proper_hit_time = Some(state.step_count);
                }
            }
        }
    }
    let histogram = state.current.histogram();
    Ok(ChainSummary {
        final_state: state.current,
        steps,
        moves,
        proper_hit_time,
        proper,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::rational::{int, rat};

    #[test]
    fn thresholds_round_down() {
        let t = Thresholds::new(&FlipParams::vigoda());
        assert_eq!(t.0[1], 1u128 << 64);
        assert!(t.accepts(1, u64::MAX));
        // p_2/2 = 13/84
        assert_eq!(t.0[2], ((13u128) << 64) / 84);
        assert!(!t.accepts(7, 0));
    }

    #[test]
    fn zero_steps_returns_start() {
        let g = generators::cycle(5).unwrap();
        let start = Coloring::new(vec![0, 1, 0, 1, 2], 4).unwrap();
        let s = run_chain(&g, &start, &Dynamics::glauber(4), 0, 9).unwrap();
        assert_eq!(s.final_state, start);
        assert_eq!(s.proper_hit_time, Some(0));
    }

    #[test]
    fn same_seed_same_trajectory() {
        let g = generators::cycle(6).unwrap();
        let start = Coloring::new(vec![0; 6], 4).unwrap();
        let d = Dynamics::flip(4, FlipParams::optimal());
        let a = run_chain(&g, &start, &d, 500, 17).unwrap();
        let b = run_chain(&g, &start, &d, 500, 17).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn frozen_triangle_under_glauber() {
        let g = generators::complete(3);
        let start = Coloring::new(vec![0, 1, 2], 3).unwrap();
        let s = run_chain(&g, &start, &Dynamics::glauber(3), 1000, 3).unwrap();
        assert_eq!(s.final_state, start);
        assert_eq!(s.moves, 0);
    }

    #[test]
    fn rejects_states_outside_the_palette() {
        let g = generators::path(2);
        let lists = ListAssignment::new(vec![vec![0, 1], vec![1, 2]]).unwrap();
        let bad = Coloring::new(vec![2, 1], 3).unwrap();
        assert!(run_chain(&g, &bad, &Dynamics::glauber_list(lists), 1, 0).is_err());
    }

    #[test]
    fn params_reject_increasing() {
        assert!(FlipParams::new(vec![int(1), rat(1, 2), rat(2, 3)]).is_err());
    }
}
