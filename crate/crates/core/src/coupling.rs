//! One-step coupling of flip dynamics from two colorings that differ at a
//! single vertex, and the exact rescaled expected changes `∇_H`, `∇_B`, `∇`.
//!
//! Probabilities are stored as integer masses in units of `1/(kn·D)` where
//! `D` is the common denominator of the flip parameters, so a component of
//! size `ℓ` carries mass `D·p_ℓ` on its own side.

use std::collections::HashMap;

use num_traits::Zero;

use crate::bounds::{improvement2_rhs, improvement_rhs, vig2_rhs_for};
use crate::config::{configuration, extremal_profile, AdjacentPair, ExtremalityClass};
use crate::error::{Error, Result};
use crate::graph::{is_proper, Coloring, Graph, Palette};
use crate::kempe::{component, enumerate_components, flip, ComponentMultiset};
use crate::metric::MetricSpace;
use crate::params::FlipParams;
use crate::rational::{int, rat, Rational};

/// Where a joint outcome came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    /// `A_σ(c) × A_τ(c)` for one color.
    Color(usize),
    /// Colors whose component sets overlap and were coupled jointly.
    Merged(Vec<usize>),
    /// Components outside every `A`-set, coupled with themselves.
    Complement,
    /// `(∅, ∅)`.
    Idle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointEntry {
    /// Index into the `σ` multiset, `None` for `∅`.
    pub sigma: Option<usize>,
    pub tau: Option<usize>,
    pub mass: i64,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub struct JointCoupling {
    pair: AdjacentPair,
    k: usize,
    scale: i64,
    params: FlipParams,
    sigma_components: ComponentMultiset,
    tau_components: ComponentMultiset,
    entries: Vec<JointEntry>,
    /// Colors coupled by the greedy fallback rather than the explicit rule.
    pub fallback_colors: Vec<usize>,
    /// Complement components that had no identical partner on the other side.
    pub complement_fallback: bool,
}

fn mass_of(params: &FlipParams, scale: i64, size: usize) -> i64 {
    params.scaled(size, scale)
}

struct Builder<'a> {
    pair: &'a AdjacentPair,
    params: &'a FlipParams,
    scale: i64,
    ks: &'a ComponentMultiset,
    kt: &'a ComponentMultiset,
    entries: Vec<JointEntry>,
}

impl Builder<'_> {
    fn push(&mut self, sigma: Option<usize>, tau: Option<usize>, mass: i64, origin: &Origin) {
        if mass > 0 {
            self.entries.push(JointEntry {
                sigma,
                tau,
                mass,
                origin: origin.clone(),
            });
        }
    }

    fn sigma_mass(&self, i: usize) -> i64 {
        mass_of(self.params, self.scale, self.ks.entries()[i].component.len())
    }

    fn tau_mass(&self, i: usize) -> i64 {
        mass_of(self.params, self.scale, self.kt.entries()[i].component.len())
    }

    fn outcome_distance(&self, s: Option<usize>, t: Option<usize>) -> usize {
        let a = match s {
            Some(i) => flip(self.pair.sigma(), &self.ks.entries()[i].component).expect("current"),
            None => self.pair.sigma().clone(),
        };
        let b = match t {
            Some(j) => flip(self.pair.tau(), &self.kt.entries()[j].component).expect("current"),
            None => self.pair.tau().clone(),
        };
        a.hamming(&b)
    }

    /// Greedy matching: candidate pairs by resulting Hamming distance, then
    /// by vertex overlap, then by index; leftovers go to `∅`.
    fn greedy(&mut self, sigma: &[usize], tau: &[usize], origin: &Origin) {
        let mut left: HashMap<usize, i64> = sigma.iter().map(|&i| (i, self.sigma_mass(i))).collect();
        let mut right: HashMap<usize, i64> = tau.iter().map(|&j| (j, self.tau_mass(j))).collect();
        let mut candidates = Vec::new();
        for &i in sigma {
            for &j in tau {
                let si = &self.ks.entries()[i].component;
                let tj = &self.kt.entries()[j].component;
                let overlap = si.vertices.iter().filter(|&&u| tj.contains(u)).count();
                candidates.push((self.outcome_distance(Some(i), Some(j)), usize::MAX - overlap, i, j));
            }
        }
        candidates.sort_unstable();
        for (_, _, i, j) in candidates {
            let m = left[&i].min(right[&j]);
            if m > 0 {
                *left.get_mut(&i).unwrap() -= m;
                *right.get_mut(&j).unwrap() -= m;
                self.push(Some(i), Some(j), m, origin);
            }
        }
        for &i in sigma {
            let m = left[&i];
            self.push(Some(i), None, m, origin);
        }
        for &j in tau {
            let m = right[&j];
            self.push(None, Some(j), m, origin);
        }
    }
}

/// Per-color component sets `A_σ(c)` and `A_τ(c)` as multiset indices.
struct ColorSets {
    s_v: usize,
    t_v: usize,
    s_w: Vec<usize>,
    t_w: Vec<usize>,
}

impl ColorSets {
    fn sigma_set(&self) -> Vec<usize> {
        let mut out = vec![self.s_v];
        out.extend(&self.s_w);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn tau_set(&self) -> Vec<usize> {
        let mut out = vec![self.t_v];
        out.extend(&self.t_w);
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    if parent[x] != x {
        let root = find(parent, parent[x]);
        parent[x] = root;
    }
    parent[x]
}

/// Builds the coupling for `pair` under flip dynamics on `k` colors.
pub fn build_coupling(graph: &Graph, pair: &AdjacentPair, k: usize, params: &FlipParams) -> Result<JointCoupling> {
    let (sigma, tau, v) = (pair.sigma(), pair.tau(), pair.v());
    crate::graph::check_size(graph, sigma)?;
    if sigma.k() > k || tau.k() > k {
        return Err(Error::InvalidColor {
            vertex: v,
            color: sigma.get(v).max(tau.get(v)),
        });
    }
    let scale = params.denominator()?;
    let (sv, tv) = (sigma.get(v), tau.get(v));
    let ks = enumerate_components(graph, sigma, k);
    let kt = enumerate_components(graph, tau, k);
    let locate = |m: &ComponentMultiset, state: &Coloring, u: usize, c: usize| {
        m.position(&component(graph, state, u, c).key())
            .expect("every component over the palette is enumerated")
    };

    let sets: Vec<ColorSets> = (0..k)
        .map(|c| {
            let w: Vec<usize> = graph.neighbors(v).iter().copied().filter(|&x| sigma.get(x) == c).collect();
            ColorSets {
                s_v: locate(&ks, sigma, v, c),
                t_v: locate(&kt, tau, v, c),
                s_w: w.iter().map(|&x| locate(&ks, sigma, x, tv)).collect(),
                t_w: w.iter().map(|&x| locate(&kt, tau, x, sv)).collect(),
            }
        })
        .collect();

    // Colors sharing a component on either side are coupled together.
    let mut parent: Vec<usize> = (0..k).collect();
    let mut owner_s: HashMap<usize, usize> = HashMap::new();
    let mut owner_t: HashMap<usize, usize> = HashMap::new();
    for (c, set) in sets.iter().enumerate() {
        for i in set.sigma_set() {
            if let Some(&d) = owner_s.get(&i) {
                let (x, y) = (find(&mut parent, c), find(&mut parent, d));
                parent[x] = y;
            } else {
                owner_s.insert(i, c);
            }
        }
        for j in set.tau_set() {
            if let Some(&d) = owner_t.get(&j) {
                let (x, y) = (find(&mut parent, c), find(&mut parent, d));
                parent[x] = y;
            } else {
                owner_t.insert(j, c);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of: HashMap<usize, usize> = HashMap::new();
    for c in 0..k {
        let root = find(&mut parent, c);
        let g = *group_of.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(c);
    }

    let mut b = Builder {
        pair,
        params,
        scale,
        ks: &ks,
        kt: &kt,
        entries: Vec::new(),
    };
    let mut fallback_colors = Vec::new();
    for group in &groups {
        let c = group[0];
        let set = &sets[c];
        let r = set.s_w.len();
        let special = c == sv || c == tv;
        if group.len() == 1 && (r == 0 || !special) {
            couple_color(&mut b, c, set);
        } else {
            let origin = if group.len() == 1 {
                Origin::Color(c)
            } else {
                Origin::Merged(group.clone())
            };
            let mut s_all: Vec<usize> = group.iter().flat_map(|&d| sets[d].sigma_set()).collect();
            let mut t_all: Vec<usize> = group.iter().flat_map(|&d| sets[d].tau_set()).collect();
            s_all.sort_unstable();
            s_all.dedup();
            t_all.sort_unstable();
            t_all.dedup();
            b.greedy(&s_all, &t_all, &origin);
            fallback_colors.extend(group);
        }
    }

    // Complement: identical components on both sides move together.
    let mut left_s = Vec::new();
    let mut matched_t = vec![false; kt.len()];
    for (i, entry) in ks.entries().iter().enumerate() {
        if owner_s.contains_key(&i) {
            continue;
        }
        match kt.position(&entry.component.key()) {
            Some(j) if !owner_t.contains_key(&j) => {
                matched_t[j] = true;
                let m = b.sigma_mass(i);
                b.push(Some(i), Some(j), m, &Origin::Complement);
            }
            _ => left_s.push(i),
        }
    }
    let left_t: Vec<usize> = (0..kt.len())
        .filter(|&j| !owner_t.contains_key(&j) && !matched_t[j])
        .collect();
    let complement_fallback = !left_s.is_empty() || !left_t.is_empty();
    if complement_fallback {
        b.greedy(&left_s, &left_t, &Origin::Complement);
    }

    let total = (k * graph.n()) as i64 * scale;
    let used: i64 = b.entries.iter().map(|e| e.mass).sum();
    let mut entries = b.entries;
    if used < total {
        entries.push(JointEntry {
            sigma: None,
            tau: None,
            mass: total - used,
            origin: Origin::Idle,
        });
    }
    fallback_colors.sort_unstable();
    let coupling = JointCoupling {
        pair: pair.clone(),
        k,
        scale,
        params: params.clone(),
        sigma_components: ks,
        tau_components: kt,
        entries,
        fallback_colors,
        complement_fallback,
    };
    coupling.audit()?;
    Ok(coupling)
}

/// The explicit rule for one color.
fn couple_color(b: &mut Builder<'_>, c: usize, set: &ColorSets) {
    let origin = Origin::Color(c);
    let r = set.s_w.len();
    let pa = b.sigma_mass(set.s_v);
    let pb = b.tau_mass(set.t_v);
    if r == 0 {
        b.push(Some(set.s_v), Some(set.t_v), pa.max(pb), &origin);
        return;
    }
    let first = |ids: &[usize], i: usize| !ids[..i].contains(&ids[i]);
    let a: Vec<usize> = (0..r)
        .map(|i| if first(&set.t_w, i) { b.kt.entries()[set.t_w[i]].component.len() } else { 0 })
        .collect();
    let bb: Vec<usize> = (0..r)
        .map(|i| if first(&set.s_w, i) { b.ks.entries()[set.s_w[i]].component.len() } else { 0 })
        .collect();
    let a_max = *a.iter().max().unwrap();
    let b_max = *bb.iter().max().unwrap();
    let i_a = a.iter().position(|&x| x == a_max).unwrap();
    let i_b = bb.iter().position(|&x| x == b_max).unwrap();
    let (params, scale) = (b.params, b.scale);
    let p = |size: usize| mass_of(params, scale, size);

    b.push(Some(set.s_v), Some(set.t_w[i_a]), pa, &origin);
    b.push(Some(set.s_w[i_b]), Some(set.t_v), pb, &origin);
    for i in 0..r {
        let q = if i == i_a { p(a_max) - pa } else { p(a[i]) };
        let q2 = if i == i_b { p(b_max) - pb } else { p(bb[i]) };
        let m = q.min(q2);
        b.push(Some(set.s_w[i]), Some(set.t_w[i]), m, &origin);
        b.push(None, Some(set.t_w[i]), q - m, &origin);
        b.push(Some(set.s_w[i]), None, q2 - m, &origin);
    }
}

impl JointCoupling {
    pub fn pair(&self) -> &AdjacentPair {
        &self.pair
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn params(&self) -> &FlipParams {
        &self.params
    }

    pub fn entries(&self) -> &[JointEntry] {
        &self.entries
    }

    pub fn sigma_components(&self) -> &ComponentMultiset {
        &self.sigma_components
    }

    pub fn tau_components(&self) -> &ComponentMultiset {
        &self.tau_components
    }

    /// `D`: masses are in units of `1/(kn·D)`.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn total_mass(&self) -> i64 {
        (self.k * self.pair.sigma().len()) as i64 * self.scale
    }

    pub fn probability(&self, entry: &JointEntry) -> Rational {
        rat(entry.mass, self.total_mass())
    }

    /// `(σ_S, τ_{S'})` for one joint outcome.
    pub fn outcome(&self, entry: &JointEntry) -> (Coloring, Coloring) {
        let a = match entry.sigma {
            Some(i) => flip(self.pair.sigma(), &self.sigma_components.entries()[i].component).expect("current"),
            None => self.pair.sigma().clone(),
        };
        let b = match entry.tau {
            Some(j) => flip(self.pair.tau(), &self.tau_components.entries()[j].component).expect("current"),
            None => self.pair.tau().clone(),
        };
        (a, b)
    }

    /// Row sums per `σ` component (last slot is `∅`), in mass units.
    pub fn sigma_marginal(&self) -> Vec<i64> {
        let mut out = vec![0; self.sigma_components.len() + 1];
        for e in &self.entries {
            out[e.sigma.unwrap_or(self.sigma_components.len())] += e.mass;
        }
        out
    }

    pub fn tau_marginal(&self) -> Vec<i64> {
        let mut out = vec![0; self.tau_components.len() + 1];
        for e in &self.entries {
            out[e.tau.unwrap_or(self.tau_components.len())] += e.mass;
        }
        out
    }

    fn expected_marginal(&self, m: &ComponentMultiset) -> Vec<i64> {
        let mut expected: Vec<i64> = m
            .entries()
            .iter()
            .map(|e| mass_of(&self.params, self.scale, e.component.len()))
            .collect();
        expected.push(self.total_mass() - expected.iter().sum::<i64>());
        expected
    }

    /// Total absolute deviation of both marginals from the single-chain
    /// transition probabilities, in mass units.
    pub fn marginal_error(&self) -> i64 {
        let dev = |got: Vec<i64>, want: Vec<i64>| got.iter().zip(&want).map(|(a, b)| (a - b).abs()).sum::<i64>();
        dev(self.sigma_marginal(), self.expected_marginal(&self.sigma_components))
            + dev(self.tau_marginal(), self.expected_marginal(&self.tau_components))
    }

    fn audit(&self) -> Result<()> {
        if self.entries.iter().any(|e| e.mass < 0) {
            return Err(Error::MarginalMismatch("negative mass".into()));
        }
        match self.marginal_error() {
            0 => Ok(()),
            err => Err(Error::MarginalMismatch(format!(
                "marginals off by {err}/{} for pair at vertex {}",
                self.total_mass(),
                self.pair.v()
            ))),
        }
    }

    fn hamming_change(&self, entry: &JointEntry) -> i64 {
        let (a, b) = self.outcome(entry);
        a.hamming(&b) as i64 - 1
    }

    /// `∇_H` restricted to the outcomes with the given origin.
    pub fn nabla_h_origin(&self, origin: &Origin) -> Rational {
        let sum: i64 = self
            .entries
            .iter()
            .filter(|e| e.origin == *origin)
            .map(|e| e.mass * self.hamming_change(e))
            .sum();
        rat(sum, self.scale)
    }

    /// `∇_H(σ, τ, c)`, or `None` when `c` was coupled jointly with other colors.
    pub fn nabla_h_color(&self, c: usize) -> Option<Rational> {
        let merged = self
            .entries
            .iter()
            .any(|e| matches!(&e.origin, Origin::Merged(cs) if cs.contains(&c)));
        (!merged).then(|| self.nabla_h_origin(&Origin::Color(c)))
    }

    pub fn nabla_h(&self) -> Rational {
        let sum: i64 = self.entries.iter().map(|e| e.mass * self.hamming_change(e)).sum();
        rat(sum, self.scale)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NablaMode {
    /// `d_B` of every outcome from exact shortest paths.
    Exact,
    /// `d_B` exact on outcomes at Hamming distance 1, replaced by its lower
    /// bound 0 elsewhere; yields an upper bound on `∇_B`.
    Bound,
}

impl std::str::FromStr for NablaMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(NablaMode::Exact),
            "bound" => Ok(NablaMode::Bound),
            other => Err(format!("unknown mode {other:?} (expected exact or bound)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NablaReport {
    pub n: usize,
    pub max_degree: usize,
    pub k: usize,
    pub v: usize,
    pub beta: Rational,
    pub nabla_h: Rational,
    /// `∇_H(σ, τ, c)` per color; `None` for jointly coupled colors.
    pub nabla_h_by_color: Vec<Option<Rational>>,
    pub nabla_b: Rational,
    pub nabla: Rational,
    pub mode: NablaMode,
    pub improper: bool,
    pub fallback_colors: Vec<usize>,
    pub complement_fallback: bool,
    /// `(11/6 − ε(1 − β))Δ − k − ∇_H`.
    pub improvement_slack: Rational,
    /// Right-hand side of the `∇_B` bound, when `Δ > 0`.
    pub improvement2_rhs: Option<Rational>,
}

impl NablaReport {
    pub fn flags(&self) -> String {
        let mut flags = Vec::new();
        if self.improper {
            flags.push("improper".to_string());
        }
        if !self.fallback_colors.is_empty() {
            let cs: Vec<String> = self.fallback_colors.iter().map(|c| c.to_string()).collect();
            flags.push(format!("fallback:{}", cs.join("/")));
        }
        if self.complement_fallback {
            flags.push("complement-fallback".into());
        }
        if flags.is_empty() {
            "-".into()
        } else {
            flags.join("|")
        }
    }

    pub fn csv_header() -> &'static str {
        "n,delta,k,v,beta,nabla_h,nabla_b,nabla,flags"
    }

    pub fn csv_row(&self) -> String {
        use crate::rational::format_rational as f;
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.max_degree,
            self.k,
            self.v,
            f(&self.beta),
            f(&self.nabla_h),
            f(&self.nabla_b),
            f(&self.nabla),
            self.flags()
        )
    }
}

/// `d_B(σ, τ) = γ(1 − β)` for an adjacent pair, 0 for equal colorings.
fn adjacent_d_b(graph: &Graph, a: &Coloring, b: &Coloring, k: usize, gamma: &Rational) -> Result<Rational> {
    if a == b {
        return Ok(Rational::zero());
    }
    let pair = AdjacentPair::new(a.clone(), b.clone())?;
    let beta = extremal_profile(graph, &pair, &Palette::Uniform(k))?.beta();
    Ok(gamma * (int(1) - beta))
}

fn report(
    graph: &Graph,
    coupling: &JointCoupling,
    gamma: &Rational,
    mode: NablaMode,
    mut d_b: impl FnMut(&Coloring, &Coloring) -> Result<Rational>,
) -> Result<NablaReport> {
    let pair = coupling.pair();
    let k = coupling.k();
    let beta = extremal_profile(graph, pair, &Palette::Uniform(k))?.beta();
    let base = gamma * (int(1) - &beta);
    let mut nabla_b = Rational::zero();
    for e in coupling.entries() {
        if e.origin == Origin::Idle {
            continue;
        }
        let (a, b) = coupling.outcome(e);
        let after = d_b(&a, &b)?;
        nabla_b -= rat(e.mass, coupling.scale()) * (after - &base);
    }
    let nabla_h = coupling.nabla_h();
    let improper = !is_proper(graph, pair.sigma())? || !is_proper(graph, pair.tau())?;
    Ok(NablaReport {
        n: graph.n(),
        max_degree: graph.max_degree(),
        k,
        v: pair.v(),
        nabla_h_by_color: (0..k).map(|c| coupling.nabla_h_color(c)).collect(),
        nabla: &nabla_h + &nabla_b,
        improvement_slack: improvement_rhs(&beta, graph.max_degree(), k) - &nabla_h,
        improvement2_rhs: improvement2_rhs(gamma, &beta, graph.max_degree(), k),
        nabla_h,
        nabla_b,
        beta,
        mode,
        improper,
        fallback_colors: coupling.fallback_colors.clone(),
        complement_fallback: coupling.complement_fallback,
    })
}

/// `∇` with `d_B` of every outcome taken from `metric`.
pub fn nabla_exact(graph: &Graph, pair: &AdjacentPair, params: &FlipParams, metric: &mut MetricSpace) -> Result<NablaReport> {
    let k = metric.space().get(0).k();
    let gamma = metric.gamma().clone();
    let coupling = build_coupling(graph, pair, k, params)?;
    report(graph, &coupling, &gamma, NablaMode::Exact, |a, b| metric.d_b(a, b))
}

/// `∇` with the `d_B ≥ 0` surrogate for outcomes at Hamming distance ≥ 2.
pub fn nabla_bound(graph: &Graph, pair: &AdjacentPair, k: usize, params: &FlipParams, gamma: &Rational) -> Result<NablaReport> {
    crate::config::check_gamma(gamma)?;
    let coupling = build_coupling(graph, pair, k, params)?;
    report(graph, &coupling, gamma, NablaMode::Bound, |a, b| {
        if a.hamming(b) <= 1 {
            adjacent_d_b(graph, a, b, k, gamma)
        } else {
            Ok(Rational::zero())
        }
    })
}

/// Either mode; exact mode enumerates all `k^n` colorings, bounded by `cap`.
pub fn nabla(
    graph: &Graph,
    pair: &AdjacentPair,
    k: usize,
    params: &FlipParams,
    gamma: &Rational,
    mode: NablaMode,
    cap: usize,
) -> Result<NablaReport> {
    match mode {
        NablaMode::Bound => nabla_bound(graph, pair, k, params, gamma),
        NablaMode::Exact => {
            let mut metric = MetricSpace::new(graph, Palette::Uniform(k), gamma.clone(), cap).map_err(|e| match e {
                Error::StateSpaceTooLarge { states, cap } => Error::InvalidParams(format!(
                    "exact mode needs all {states} colorings (cap {cap}); use bound mode"
                )),
                other => other,
            })?;
            nabla_exact(graph, pair, params, &mut metric)
        }
    }
}

/// A color whose `∇_H(σ, τ, c)` breaks its bound: `−1` exactly when `r = 0`,
/// the configuration bound for other colors, `r − 1` for `σ(v)` and `τ(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorViolation {
    pub color: usize,
    pub r: usize,
    pub value: Rational,
    pub bound: Rational,
}

/// Colors coupled jointly with others are skipped.
pub fn color_violations(graph: &Graph, coupling: &JointCoupling) -> Vec<ColorViolation> {
    let pair = coupling.pair();
    let mut out = Vec::new();
    for c in 0..coupling.k() {
        let Some(value) = coupling.nabla_h_color(c) else { continue };
        let conf = configuration(graph, pair, c, None);
        let r = conf.r();
        let (bound, ok) = if r == 0 {
            (int(-1), value == int(-1))
        } else if pair.is_special(c) {
            let b = int(r as i64 - 1);
            (b.clone(), value <= b)
        } else {
            let b = vig2_rhs_for(&conf, coupling.params());
            (b.clone(), value <= b)
        };
        if !ok {
            out.push(ColorViolation { color: c, r, value, bound });
        }
    }
    out
}

/// Result of the `∇_H ≤ (11/6 − ε(1 − β))Δ − k` check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImprovementCheck {
    pub holds: bool,
    pub slack: Rational,
    pub nabla_h: Rational,
    pub beta: Rational,
}

pub fn check_improvement(graph: &Graph, pair: &AdjacentPair, k: usize, params: &FlipParams) -> Result<ImprovementCheck> {
    let coupling = build_coupling(graph, pair, k, params)?;
    let beta = extremal_profile(graph, pair, &Palette::Uniform(k))?.beta();
    let nabla_h = coupling.nabla_h();
    let slack = improvement_rhs(&beta, graph.max_degree(), k) - &nabla_h;
    Ok(ImprovementCheck {
        holds: slack >= Rational::zero(),
        slack,
        nabla_h,
        beta,
    })
}

/// `(γ/Δ) Σ_S p_|S| ξ(c, S)` over the identically coupled complement, per
/// color, where `ξ(c, S)` is the change in the extremal order of `c` after
/// flipping `S` in both colorings. Empty on edgeless graphs.
pub fn complement_contributions(graph: &Graph, coupling: &JointCoupling, gamma: &Rational) -> Result<Vec<Rational>> {
    let k = coupling.k();
    let delta = graph.max_degree();
    if delta == 0 {
        return Ok(Vec::new());
    }
    let palette = Palette::Uniform(k);
    let before = extremal_profile(graph, coupling.pair(), &palette)?;
    let mut out = vec![Rational::zero(); k];
    for e in coupling.entries() {
        if e.origin != Origin::Complement {
            continue;
        }
        let (Some(i), Some(j)) = (e.sigma, e.tau) else { continue };
        if coupling.sigma_components().entries()[i].component.key() != coupling.tau_components().entries()[j].component.key() {
            continue;
        }
        let (a, b) = coupling.outcome(e);
        let after = extremal_profile(graph, &AdjacentPair::new(a, b)?, &palette)?;
        let size = coupling.sigma_components().entries()[i].component.len();
        let p = coupling.params().get(size);
        for c in 0..k {
            let xi = after.classes[c].weight() as i64 - before.classes[c].weight() as i64;
            if xi != 0 {
                out[c] += gamma * &p * int(xi) / int(delta as i64);
            }
        }
    }
    Ok(out)
}

/// Extremal order (0, 1 or 2) of every color for a pair.
pub fn extremal_orders(graph: &Graph, pair: &AdjacentPair, k: usize) -> Result<Vec<usize>> {
    Ok(extremal_profile(graph, pair, &Palette::Uniform(k))?
        .classes
        .iter()
        .map(|c: &ExtremalityClass| c.weight())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn pair(a: &[usize], b: &[usize], k: usize) -> AdjacentPair {
        AdjacentPair::new(Coloring::new(a.to_vec(), k).unwrap(), Coloring::new(b.to_vec(), k).unwrap()).unwrap()
    }

    #[test]
    fn r_zero_colors_coalesce() {
        let g = generators::path(3);
        let pr = pair(&[0, 2, 0], &[1, 2, 0], 4);
        let cp = build_coupling(&g, &pr, 4, &FlipParams::optimal()).unwrap();
        assert_eq!(cp.nabla_h_color(3), Some(int(-1)));
        assert_eq!(cp.nabla_h_color(0), Some(int(-1)));
        assert_eq!(cp.nabla_h_color(1), Some(int(-1)));
        assert!(cp.fallback_colors.is_empty());
        assert!(!cp.complement_fallback);
    }

    #[test]
    fn extremal_color_meets_its_bound() {
        let g = generators::path(3);
        let pr = pair(&[0, 2, 0], &[1, 2, 0], 4);
        let p = FlipParams::optimal();
        let cp = build_coupling(&g, &pr, 4, &p).unwrap();
        let conf = configuration(&g, &pr, 2, None);
        assert_eq!(cp.nabla_h_color(2).unwrap(), vig2_rhs_for(&conf, &p));
    }

    #[test]
    fn complement_keeps_distance() {
        let g = generators::cycle(5).unwrap();
        let pr = pair(&[0, 1, 2, 1, 2], &[3, 1, 2, 1, 2], 4);
        let cp = build_coupling(&g, &pr, 4, &FlipParams::vigoda()).unwrap();
        assert_eq!(cp.nabla_h_origin(&Origin::Complement), Rational::zero());
        let total: i64 = cp.entries().iter().map(|e| e.mass).sum();
        assert_eq!(total, cp.total_mass());
    }

    #[test]
    fn improper_pair_stays_marginal_correct() {
        let g = generators::complete(3);
        let pr = pair(&[0, 0, 1], &[2, 0, 1], 3);
        let cp = build_coupling(&g, &pr, 3, &FlipParams::optimal()).unwrap();
        assert!(!cp.fallback_colors.is_empty());
    }

    #[test]
    fn exact_and_bound_agree_on_hamming_part() {
        let g = generators::path(3);
        let pr = pair(&[0, 1, 0], &[2, 1, 0], 3);
        let p = FlipParams::optimal();
        let gamma = rat(1, 10);
        let exact = nabla(&g, &pr, 3, &p, &gamma, NablaMode::Exact, 1000).unwrap();
        let bound = nabla(&g, &pr, 3, &p, &gamma, NablaMode::Bound, 1000).unwrap();
        assert_eq!(exact.nabla_h, bound.nabla_h);
        assert!(exact.nabla_b <= bound.nabla_b);
        assert_eq!(exact.nabla, &exact.nabla_h + &exact.nabla_b);
    }
}
