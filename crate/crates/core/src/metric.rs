//! The path metric `d` induced by the weights `ω` on the Hamming graph `Γ`
//! of all colorings, and `d_B = d_H − d`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_traits::Zero;

use crate::config::{check_gamma, extremal_profile, omega, AdjacentPair};
use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph, Palette};
use crate::markov::StateSpace;
use crate::rational::{int, Rational};

/// Shortest-path distances on `Γ` over every coloring allowed by a palette.
///
/// Edge weights and single-source distance rows are computed on demand and
/// cached.
#[derive(Clone, Debug)]
pub struct MetricSpace {
    graph: Graph,
    palette: Palette,
    gamma: Rational,
    space: StateSpace,
    weights: HashMap<(usize, usize), Rational>,
    rows: HashMap<usize, Vec<Rational>>,
}

impl MetricSpace {
    pub fn new(graph: &Graph, palette: Palette, gamma: Rational, cap: usize) -> Result<Self> {
        check_gamma(&gamma)?;
        let space = StateSpace::all(graph, &palette, cap)?;
        Ok(MetricSpace {
            graph: graph.clone(),
            palette,
            gamma,
            space,
            weights: HashMap::new(),
            rows: HashMap::new(),
        })
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    fn index(&self, x: &Coloring) -> Result<usize> {
        self.space
            .index_of(x)
            .ok_or_else(|| Error::InvalidLists(format!("{x} is not a state of this space")))
    }

    fn edge_weight(&mut self, i: usize, j: usize) -> Result<Rational> {
        let key = (i.min(j), i.max(j));
        if let Some(w) = self.weights.get(&key) {
            return Ok(w.clone());
        }
        let pair = AdjacentPair::new(self.space.get(i).clone(), self.space.get(j).clone())?;
        let beta = extremal_profile(&self.graph, &pair, &self.palette)?.beta();
        let w = omega(&beta, &self.gamma)?;
        self.weights.insert(key, w.clone());
        Ok(w)
    }

    /// `ω(σ, τ)` for an adjacent pair.
    pub fn weight(&mut self, sigma: &Coloring, tau: &Coloring) -> Result<Rational> {
        let (i, j) = (self.index(sigma)?, self.index(tau)?);
        AdjacentPair::new(sigma.clone(), tau.clone())?;
        self.edge_weight(i, j)
    }

    fn row(&mut self, source: usize) -> Result<&[Rational]> {
        if !self.rows.contains_key(&source) {
            let row = self.dijkstra(source)?;
            self.rows.insert(source, row);
        }
        Ok(&self.rows[&source])
    }

    fn dijkstra(&mut self, source: usize) -> Result<Vec<Rational>> {
        let n = self.graph.n();
        let mut dist: Vec<Option<Rational>> = vec![None; self.space.len()];
        let mut done = vec![false; self.space.len()];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(Rational::zero());
        heap.push(Reverse((Rational::zero(), source)));
        while let Some(Reverse((d, i))) = heap.pop() {
            if done[i] {
                continue;
            }
            done[i] = true;
            let state = self.space.get(i).clone();
            for u in 0..n {
                for c in self.palette.choices(u) {
                    if c == state.get(u) {
                        continue;
                    }
                    let mut next = state.clone();
                    next.set(u, c);
                    let j = self.index(&next)?;
                    if done[j] {
                        continue;
                    }
                    let candidate = &d + self.edge_weight(i, j)?;
                    if dist[j].as_ref().is_none_or(|old| candidate < *old) {
                        dist[j] = Some(candidate.clone());
                        heap.push(Reverse((candidate, j)));
                    }
                }
            }
        }
        Ok(dist
            .into_iter()
            .map(|d| d.expect("Γ is connected"))
            .collect())
    }

    /// `d(σ′, τ′)`.
    pub fn distance(&mut self, a: &Coloring, b: &Coloring) -> Result<Rational> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        Ok(self.row(i)?[j].clone())
    }

    /// `d_B(σ′, τ′) = d_H(σ′, τ′) − d(σ′, τ′)`.
    pub fn d_b(&mut self, a: &Coloring, b: &Coloring) -> Result<Rational> {
        let d = self.distance(a, b)?;
        Ok(int(a.hamming(b) as i64) - d)
    }
}

pub fn exact_distance(
    graph: &Graph,
    k: usize,
    gamma: &Rational,
    a: &Coloring,
    b: &Coloring,
    cap: usize,
) -> Result<Rational> {
    MetricSpace::new(graph, Palette::Uniform(k), gamma.clone(), cap)?.distance(a, b)
}

pub fn d_b(graph: &Graph, k: usize, gamma: &Rational, a: &Coloring, b: &Coloring, cap: usize) -> Result<Rational> {
    MetricSpace::new(graph, Palette::Uniform(k), gamma.clone(), cap)?.d_b(a, b)
}
