//! Exact transition matrices on tiny state spaces and total-variation
//! profiles against the uniform distribution on proper colorings.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dynamics::{ChainKind, Dynamics};
use crate::error::{Error, Result};
use crate::graph::{is_proper, Coloring, Graph, Palette};
use crate::kempe::{enumerate_components, enumerate_components_list, flip, is_flippable};
use crate::rational::{int, Rational};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Above this many states TV profiles switch from exact to `f64` arithmetic.
pub const EXACT_TV_LIMIT: usize = 2_000;

/// An indexed list of colorings.
#[derive(Clone, Debug)]
pub struct StateSpace {
    states: Vec<Coloring>,
    index: HashMap<Vec<usize>, usize>,
}

impl StateSpace {
    fn from_states(states: Vec<Coloring>) -> Self {
        let index = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice().to_vec(), i))
            .collect();
        StateSpace { states, index }
    }

    /// Every coloring allowed by the palette (`Ω` or `Ω^L`), in
    /// lexicographic order.
    pub fn all(graph: &Graph, palette: &Palette, cap: usize) -> Result<Self> {
        let n = graph.n();
        let choices: Vec<Vec<usize>> = (0..n).map(|u| palette.choices(u)).collect();
        let total = choices
            .iter()
            .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
            .unwrap_or(u128::MAX);
        if total > cap as u128 {
            return Err(Error::StateSpaceTooLarge { states: total, cap });
        }
        let k = palette.universe();
        let mut states = Vec::with_capacity(total as usize);
        let mut digits = vec![0usize; n];
        for _ in 0..total {
            let colors = digits.iter().enumerate().map(|(u, &d)| choices[u][d]).collect();
            states.push(Coloring::new(colors, k)?);
            for u in (0..n).rev() {
                digits[u] += 1;
                if digits[u] < choices[u].len() {
                    break;
                }
                digits[u] = 0;
            }
        }
        Ok(Self::from_states(states))
    }

    /// Proper colorings only (`Ω₀`), in lexicographic order.
    pub fn proper(graph: &Graph, palette: &Palette, cap: usize) -> Result<Self> {
        match crate::graph::proper_colorings(graph, palette, cap) {
            Some(states) => Ok(Self::from_states(states)),
            None => Err(Error::StateSpaceTooLarge {
                states: cap as u128 + 1,
                cap,
            }),
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Coloring] {
        &self.states
    }

    pub fn get(&self, i: usize) -> &Coloring {
        &self.states[i]
    }

    pub fn index_of(&self, coloring: &Coloring) -> Option<usize> {
        self.index.get(coloring.as_slice()).copied()
    }
}

/// Sparse row-stochastic matrix with exact entries.
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    space: StateSpace,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl TransitionMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    /// Nonzero entries of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        let row = &self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => row[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn rows_sum_to_one(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.iter().map(|(_, p)| p).sum::<Rational>().is_one())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().all(|(j, p)| self.entry(*j, i) == *p))
    }

    /// True iff `μP = μ` for `μ` uniform on the states satisfying `keep`
    /// (zero elsewhere).
    pub fn fixes_uniform_on(&self, keep: impl Fn(&Coloring) -> bool) -> bool {
        let mask: Vec<bool> = self.space.states().iter().map(keep).collect();
        let mut column = vec![Rational::zero(); self.len()];
        for (i, row) in self.rows.iter().enumerate() {
            if mask[i] {
                for (j, p) in row {
                    column[*j] += p;
                }
            }
        }
        column
            .iter()
            .zip(&mask)
            .all(|(c, &m)| if m { c.is_one() } else { c.is_zero() })
    }

    /// Sparse triplets `row,col,num/den` with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,probability\n");
        for (i, row) in self.rows.iter().enumerate() {
            for (j, p) in row {
                out.push_str(&format!("{i},{j},{}\n", crate::rational::format_rational(p)));
            }
        }
        out
    }

    /// Common denominator `D` and integer rows `D * P`.
    fn to_integer(&self) -> (BigInt, Vec<Vec<(usize, BigInt)>>) {
        let mut den = BigInt::one();
        for row in &self.rows {
            for (_, p) in row {
                den = den.lcm(p.denom());
            }
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(j, p)| (*j, p.numer() * (&den / p.denom())))
                    .collect()
            })
            .collect();
        (den, rows)
    }
}

/// Exact transition matrix of `dynamics` on `graph`.
///
/// The rows are assembled from the component multiset (flip chains) or the
/// list of single-vertex moves (Glauber chains), not from the sampling code.
pub fn transition_matrix(
    graph: &Graph,
    dynamics: &Dynamics,
    restrict_to_proper: bool,
    cap: usize,
) -> Result<TransitionMatrix> {
    let palette = dynamics.palette();
    let space = if restrict_to_proper {
        StateSpace::proper(graph, palette, cap)?
    } else {
        StateSpace::all(graph, palette, cap)?
    };
    let n = graph.n();
    let mut rows = Vec::with_capacity(space.len());
    for sigma in space.states() {
        let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut moved = Rational::zero();
        let mut push = |target: Coloring, p: Rational| -> Result<()> {
            let j = space
                .index_of(&target)
                .ok_or_else(|| Error::InvalidGraph(format!("transition leaves the state space: {target}")))?;
            moved += &p;
            *row.entry(j).or_insert_with(Rational::zero) += p;
            Ok(())
        };
        match dynamics.kind() {
            ChainKind::Glauber | ChainKind::GlauberList => {
                for u in 0..n {
                    let choices = palette.choices(u);
                    let weight = Rational::new(BigInt::one(), BigInt::from(n * choices.len()));
                    for c in choices {
                        let blocked = graph.neighbors(u).iter().any(|&w| sigma.get(w) == c);
                        if c != sigma.get(u) && !blocked {
                            let mut target = sigma.clone();
                            target.set(u, c);
                            push(target, weight.clone())?;
                        }
                    }
                }
            }
            ChainKind::Flip | ChainKind::FlipList => {
                let params = dynamics.params();
                let (multiset, lists) = match palette {
                    Palette::Uniform(k) => (enumerate_components(graph, sigma, *k), None),
                    Palette::Lists(l) => (enumerate_components_list(graph, sigma, l), Some(l)),
                };
                for entry in multiset.entries() {
                    let comp = &entry.component;
                    let ell = comp.len();
                    let p = params.get(ell);
                    if comp.is_monochromatic() || p.is_zero() || lists.is_some_and(|l| !is_flippable(l, comp)) {
                        continue;
                    }
                    let select: Rational = entry
                        .generators
                        .iter()
                        .map(|&(u, _)| Rational::new(BigInt::one(), BigInt::from(n * palette.choice_count(u))))
                        .sum();
                    push(flip(sigma, comp)?, select * p / int(ell as i64))?;
                }
            }
        }
        let i = space.index_of(sigma).expect("state indexed");
        let stay = Rational::one() - moved;
        if !stay.is_zero() {
            *row.entry(i).or_insert_with(Rational::zero) += stay;
        }
        rows.push(row.into_iter().collect());
    }
    Ok(TransitionMatrix { space, rows })
}

/// Total-variation distance to uniform-on-`Ω₀` after `t = 0..=t_max` steps,
/// maximised over start states.
#[derive(Clone, Debug)]
pub struct TvProfile {
    /// `tv[t]` for `t = 0..=t_max`.
    pub tv: Vec<f64>,
    /// Exact values when the computation was exact.
    pub exact: Option<Vec<Rational>>,
    /// Upper bound on the absolute floating-point error of every `tv[t]`
    /// in the inexact mode; 0 in exact mode.
    pub error_bound: f64,
    pub start_count: usize,
    pub state_count: usize,
}

impl TvProfile {
    /// Smallest `t` with `max TV <= eps`.
    pub fn mixing_time(&self, eps: f64) -> Option<usize> {
        self.tv.iter().position(|&d| d <= eps)
    }

    /// Exact variant of [`Self::mixing_time`]; `None` when not exact.
    pub fn mixing_time_exact(&self, eps: &Rational) -> Option<usize> {
        self.exact.as_ref()?.iter().position(|d| d <= eps)
    }
}

/// Which start states the maximum in the TV profile ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StartSet {
    Proper,
    All,
}

fn automorphisms(graph: &Graph) -> Vec<Vec<usize>> {
    let n = graph.n();
    if n > 8 {
        return vec![(0..n).collect()];
    }
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(g: &Graph, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let u = perm.len();
        if u == g.n() {
            out.push(perm.clone());
            return;
        }
        for img in 0..g.n() {
            if used[img] || g.degree(img) != g.degree(u) {
                continue;
            }
            let consistent = (0..u).all(|w| g.has_edge(u, w) == g.has_edge(img, perm[w]));
            if consistent {
                used[img] = true;
                perm.push(img);
                go(g, perm, used, out);
                perm.pop();
                used[img] = false;
            }
        }
    }
    go(graph, &mut perm, &mut used, &mut out);
    out
}

/// Representatives of the start states up to graph automorphisms and, for
/// uniform palettes, color permutations. Both symmetries commute with every
/// chain here and preserve the uniform target, so the maximum TV is unchanged.
fn start_representatives(graph: &Graph, dynamics: &Dynamics, space: &StateSpace, starts: StartSet) -> Result<Vec<usize>> {
    let uniform = matches!(dynamics.palette(), Palette::Uniform(_));
    let auts = if uniform { automorphisms(graph) } else { vec![(0..graph.n()).collect()] };
    let mut seen = std::collections::BTreeSet::new();
    let mut reps = Vec::new();
    for (i, sigma) in space.states().iter().enumerate() {
        if starts == StartSet::Proper && !is_proper(graph, sigma)? {
            continue;
        }
        let canon = auts
            .iter()
            .map(|perm| {
                let mut colors = vec![0; sigma.len()];
                for (u, &img) in perm.iter().enumerate() {
                    colors[img] = sigma.get(u);
                }
                let image = Coloring::new(colors, sigma.k()).expect("same palette");
                if uniform {
                    image.canonical_relabel()
                } else {
                    image
                }
            })
            .min()
            .expect("identity automorphism");
        if seen.insert(canon) {
            reps.push(i);
        }
    }
    Ok(reps)
}

/// Builds the matrix (restricted to `Ω₀` when only proper starts are used)
/// and evolves every representative start state for `t_max` steps.
pub fn tv_profile(
    graph: &Graph,
    dynamics: &Dynamics,
    t_max: usize,
    starts: StartSet,
    cap: usize,
) -> Result<TvProfile> {
    let matrix = transition_matrix(graph, dynamics, starts == StartSet::Proper, cap)?;
    tv_profile_from_matrix(graph, dynamics, &matrix, t_max, starts)
}

pub fn tv_profile_from_matrix(
    graph: &Graph,
    dynamics: &Dynamics,
    matrix: &TransitionMatrix,
    t_max: usize,
    starts: StartSet,
) -> Result<TvProfile> {
    let space = matrix.space();
    let target: Vec<bool> = space
        .states()
        .iter()
        .map(|s| is_proper(graph, s))
        .collect::<Result<_>>()?;
    let proper_count = target.iter().filter(|&&b| b).count();
    if proper_count == 0 {
        return Err(Error::InvalidGraph("no proper coloring exists".into()));
    }
    let reps = start_representatives(graph, dynamics, space, starts)?;
    if space.len() <= EXACT_TV_LIMIT {
        let exact = exact_profile(matrix, &reps, &target, proper_count, t_max);
        let tv = exact.iter().map(crate::rational::to_f64).collect();
        Ok(TvProfile {
            tv,
            exact: Some(exact),
            error_bound: 0.0,
            start_count: reps.len(),
            state_count: space.len(),
        })
    } else {
        let (tv, error_bound) = float_profile(matrix, &reps, &target, proper_count, t_max);
        Ok(TvProfile {
            tv,
            exact: None,
            error_bound,
            start_count: reps.len(),
            state_count: space.len(),
        })
    }
}

fn exact_profile(
    matrix: &TransitionMatrix,
    reps: &[usize],
    target: &[bool],
    proper_count: usize,
    t_max: usize,
) -> Vec<Rational> {
    let (den, rows) = matrix.to_integer();
    let z = BigInt::from(proper_count);
    let mut best = vec![Rational::zero(); t_max + 1];
    for &start in reps {
        // x = D^t * P^t(start, .)
        let mut x = vec![BigInt::zero(); matrix.len()];
        x[start] = BigInt::one();
        let mut scale = BigInt::one();
        for (t, slot) in best.iter_mut().enumerate() {
            if t > 0 {
                let mut next = vec![BigInt::zero(); x.len()];
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (j, m) in &rows[i] {
                        next[*j] += xi * m;
                    }
                }
                x = next;
                scale *= &den;
            }
            let total: BigInt = x
                .iter()
                .zip(target)
                .map(|(xi, &proper)| {
                    let diff = xi * &z - if proper { scale.clone() } else { BigInt::zero() };
                    diff.abs()
                })
                .sum();
            let tv = Rational::new(total, BigInt::from(2) * &z * &scale);
            if tv > *slot {
                *slot = tv;
            }
        }
    }
    best
}

fn float_profile(
    matrix: &TransitionMatrix,
    reps: &[usize],
    target: &[bool],
    proper_count: usize,
    t_max: usize,
) -> (Vec<f64>, f64) {
    let rows: Vec<Vec<(usize, f64)>> = (0..matrix.len())
        .map(|i| {
            matrix
                .row(i)
                .iter()
                .map(|(j, p)| (*j, p.to_f64().expect("finite probability")))
                .collect()
        })
        .collect();
    let width = rows.iter().map(Vec::len).max().unwrap_or(1) as f64;
    let pi = 1.0 / proper_count as f64;
    let mut best = vec![0.0f64; t_max + 1];
    for &start in reps {
        let mut x = vec![0.0f64; matrix.len()];
        x[start] = 1.0;
        for (t, slot) in best.iter_mut().enumerate() {
            if t > 0 {
                let mut next = vec![0.0f64; x.len()];
                for (i, &xi) in x.iter().enumerate() {
                    if xi != 0.0 {
                        for &(j, m) in &rows[i] {
                            next[j] += xi * m;
                        }
                    }
                }
                x = next;
            }
            let tv = 0.5
                * x.iter()
                    .zip(target)
                    .map(|(&xi, &proper)| (xi - if proper { pi } else { 0.0 }).abs())
                    .sum::<f64>();
            *slot = slot.max(tv);
        }
    }
    // Each step perturbs the l1 mass by at most (width + 2) unit roundoffs,
    // plus the entry conversion error; the final sum adds len roundoffs.
    let u = f64::EPSILON;
    let bound = (t_max as f64 * (width + 2.0) + matrix.len() as f64 + 2.0) * u;
    (best, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::params::FlipParams;
    use crate::rational::rat;

    #[test]
    fn triangle_glauber_is_frozen_at_three_colors() {
        let g = generators::complete(3);
        let m = transition_matrix(&g, &Dynamics::glauber(3), true, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(m.len(), 6);
        for i in 0..m.len() {
            assert_eq!(m.row(i), &[(i, int(1))]);
        }
    }

    #[test]
    fn singleton_flip_matches_glauber_on_proper_states() {
        let g = generators::cycle(4).unwrap();
        let a = transition_matrix(&g, &Dynamics::glauber(3), true, 1000).unwrap();
        let b = transition_matrix(&g, &Dynamics::flip(3, FlipParams::singletons()), true, 1000).unwrap();
        assert_eq!(a.rows, b.rows);
    }

    #[test]
    fn isolated_vertex_rows() {
        let g = Graph::empty(1);
        let m = transition_matrix(&g, &Dynamics::glauber(3), false, 10).unwrap();
        assert_eq!(m.entry(0, 1), rat(1, 3));
        assert_eq!(m.entry(0, 0), rat(1, 3));
    }

    #[test]
    fn cap_is_enforced() {
        let g = generators::cycle(6).unwrap();
        assert!(matches!(
            transition_matrix(&g, &Dynamics::glauber(4), false, 100),
            Err(Error::StateSpaceTooLarge { states: 4096, cap: 100 })
        ));
    }

    #[test]
    fn tv_starts_at_one_minus_inverse_count() {
        let g = generators::cycle(4).unwrap();
        let p = tv_profile(&g, &Dynamics::glauber(3), 3, StartSet::Proper, 1000).unwrap();
        // 18 proper 3-colorings of C4
        assert_eq!(p.exact.as_ref().unwrap()[0], rat(17, 18));
        assert!(p.tv.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&generators::cycle(5).unwrap()).len(), 10);
        assert_eq!(automorphisms(&generators::complete(4)).len(), 24);
        assert_eq!(automorphisms(&generators::path(3)).len(), 2);
    }
}
