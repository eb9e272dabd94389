//! Configurations at the disagreement vertex of an adjacent pair, extremal
//! colors, `β` and the edge weight `ω`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{check_size, Coloring, Graph, ListAssignment, Palette};
use crate::kempe::{component, is_flippable};
use crate::rational::{int, rat, Rational};

/// Two colorings that differ at exactly one vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdjacentPair {
    sigma: Coloring,
    tau: Coloring,
    v: usize,
}

impl AdjacentPair {
    pub fn new(sigma: Coloring, tau: Coloring) -> Result<Self> {
        if sigma.len() != tau.len() {
            return Err(Error::SizeMismatch {
                expected: sigma.len(),
                found: tau.len(),
            });
        }
        let diff: Vec<usize> = (0..sigma.len()).filter(|&u| sigma.get(u) != tau.get(u)).collect();
        match diff.as_slice() {
            [v] => Ok(AdjacentPair { v: *v, sigma, tau }),
            _ => Err(Error::NotAdjacent(diff.len())),
        }
    }

    /// `(σ, σ with v recolored to c)`.
    pub fn recolor(sigma: &Coloring, v: usize, c: usize) -> Result<Self> {
        let mut tau = sigma.clone();
        if v >= sigma.len() {
            return Err(Error::VertexOutOfRange { vertex: v, n: sigma.len() });
        }
        if c >= sigma.k() {
            return Err(Error::InvalidColor { vertex: v, color: c });
        }
        tau.set(v, c);
        AdjacentPair::new(sigma.clone(), tau)
    }

    pub fn sigma(&self) -> &Coloring {
        &self.sigma
    }

    pub fn tau(&self) -> &Coloring {
        &self.tau
    }

    pub fn v(&self) -> usize {
        self.v
    }

    /// The same pair with the roles of `σ` and `τ` exchanged.
    pub fn swapped(&self) -> Self {
        AdjacentPair {
            sigma: self.tau.clone(),
            tau: self.sigma.clone(),
            v: self.v,
        }
    }

    /// `c ∈ {σ(v), τ(v)}`.
    pub fn is_special(&self, c: usize) -> bool {
        c == self.sigma.get(self.v) || c == self.tau.get(self.v)
    }
}

/// The `r`-configuration `(a_1..a_r; b_1..b_r)` for one color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub color: usize,
    /// `W = N(v) ∩ σ⁻¹(c)`, ascending.
    pub neighbors: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// `a = 1 + Σ a_i`, or 0 in list mode when `S_σ(v, c)` is not flippable.
    pub a_total: usize,
    pub b_total: usize,
    pub special: bool,
}

impl Configuration {
    pub fn r(&self) -> usize {
        self.neighbors.len()
    }

    pub fn a_max(&self) -> usize {
        self.a.iter().copied().max().unwrap_or(0)
    }

    pub fn b_max(&self) -> usize {
        self.b.iter().copied().max().unwrap_or(0)
    }

    /// Smallest index attaining `a_max`.
    pub fn i_a(&self) -> Option<usize> {
        argmax(&self.a)
    }

    pub fn i_b(&self) -> Option<usize> {
        argmax(&self.b)
    }

    pub fn class(&self) -> ExtremalityClass {
        classify(&self.a, &self.b)
    }
}

fn argmax(values: &[usize]) -> Option<usize> {
    let max = values.iter().copied().max()?;
    values.iter().position(|&x| x == max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtremalityClass {
    None,
    Ext1,
    Ext2,
}

impl ExtremalityClass {
    /// Number of neighbors of `v` the class accounts for in `β`.
    pub fn weight(self) -> usize {
        match self {
            ExtremalityClass::None => 0,
            ExtremalityClass::Ext1 => 1,
            ExtremalityClass::Ext2 => 2,
        }
    }
}

/// `(2;1)` and `(1;2)` are `Ext1`, `(3,3;1,1)` and `(1,1;3,3)` are `Ext2`.
pub fn classify(a: &[usize], b: &[usize]) -> ExtremalityClass {
    match (a, b) {
        ([2], [1]) | ([1], [2]) => ExtremalityClass::Ext1,
        ([3, 3], [1, 1]) | ([1, 1], [3, 3]) => ExtremalityClass::Ext2,
        _ => ExtremalityClass::None,
    }
}

/// Configuration of `pair` for color `c`, with `φ = σ`.
///
/// With `lists`, sizes of non-flippable components are replaced by 0, and
/// `a`/`b` are 0 when `S_σ(v, c)`/`S_τ(v, c)` is not flippable.
pub fn configuration(
    graph: &Graph,
    pair: &AdjacentPair,
    c: usize,
    lists: Option<&ListAssignment>,
) -> Configuration {
    let (sigma, tau, v) = (pair.sigma(), pair.tau(), pair.v());
    let (sv, tv) = (sigma.get(v), tau.get(v));
    let neighbors: Vec<usize> = graph
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| sigma.get(w) == c)
        .collect();

    let sizes = |state: &Coloring, other: usize| -> Vec<usize> {
        let mut covered: Vec<usize> = Vec::new();
        neighbors
            .iter()
            .map(|&w| {
                if covered.contains(&w) {
                    return 0;
                }
                let comp = component(graph, state, w, other);
                covered.extend(&comp.vertices);
                if lists.is_some_and(|l| !is_flippable(l, &comp)) {
                    0
                } else {
                    comp.len()
                }
            })
            .collect()
    };
    let a = sizes(tau, sv);
    let b = sizes(sigma, tv);

    let total = |state: &Coloring, sizes: &[usize]| -> usize {
        let own = component(graph, state, v, c);
        if lists.is_some_and(|l| !is_flippable(l, &own)) {
            0
        } else {
            1 + sizes.iter().sum::<usize>()
        }
    };
    let a_total = total(sigma, &a);
    let b_total = total(tau, &b);
    Configuration {
        color: c,
        neighbors,
        a,
        b,
        a_total,
        b_total,
        special: pair.is_special(c),
    }
}

/// Extremality class of every color in the palette universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalProfile {
    pub classes: Vec<ExtremalityClass>,
    pub max_degree: usize,
}

impl ExtremalProfile {
    /// `B¹`: colors with an extremal 1-configuration.
    pub fn b1(&self) -> Vec<usize> {
        self.colors_of(ExtremalityClass::Ext1)
    }

    pub fn b2(&self) -> Vec<usize> {
        self.colors_of(ExtremalityClass::Ext2)
    }

    fn colors_of(&self, class: ExtremalityClass) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.classes[c] == class).collect()
    }

    /// `(|B¹| + 2|B²|)/Δ`, and 0 on edgeless graphs.
    pub fn beta(&self) -> Rational {
        if self.max_degree == 0 {
            return Rational::zero();
        }
        let weight: usize = self.classes.iter().map(|c| c.weight()).sum();
        rat(weight as i64, self.max_degree as i64)
    }
}

pub fn extremal_profile(graph: &Graph, pair: &AdjacentPair, palette: &Palette) -> Result<ExtremalProfile> {
    check_size(graph, pair.sigma())?;
    let lists = match palette {
        Palette::Lists(l) => Some(l),
        Palette::Uniform(_) => None,
    };
    let universe = palette.universe().max(pair.sigma().k()).max(pair.tau().k());
    let classes = (0..universe)
        .map(|c| configuration(graph, pair, c, lists).class())
        .collect();
    Ok(ExtremalProfile {
        classes,
        max_degree: graph.max_degree(),
    })
}

pub fn beta(graph: &Graph, pair: &AdjacentPair, palette: &Palette) -> Result<Rational> {
    Ok(extremal_profile(graph, pair, palette)?.beta())
}

pub fn check_gamma(gamma: &Rational) -> Result<()> {
    if *gamma <= Rational::zero() || *gamma >= rat(1, 2) {
        return Err(Error::GammaOutOfRange(crate::rational::format_rational(gamma)));
    }
    Ok(())
}

/// `ω = 1 − γ(1 − β)`.
pub fn omega(beta: &Rational, gamma: &Rational) -> Result<Rational> {
    check_gamma(gamma)?;
    Ok(Rational::one() - gamma * (Rational::one() - beta))
}

/// `ε = 11/6 − 161/88 = 1/264`.
pub fn epsilon() -> Rational {
    rat(11, 6) - rat(161, 88)
}

/// `γ = εΔ/(53k)`; for `Δ = 0` the smallest positive degree 1 is used.
pub fn default_gamma(max_degree: usize, k: usize) -> Rational {
    epsilon() * int(max_degree.max(1) as i64) / int(53 * k.max(1) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn col(c: &[usize], k: usize) -> Coloring {
        Coloring::new(c.to_vec(), k).unwrap()
    }

    #[test]
    fn path_example_is_ext1() {
        // v = 0, w = 1, x = 2
        let g = generators::path(3);
        let pair = AdjacentPair::new(col(&[0, 2, 0], 3), col(&[1, 2, 0], 3)).unwrap();
        let conf = configuration(&g, &pair, 2, None);
        assert_eq!((conf.a.clone(), conf.b.clone()), (vec![2], vec![1]));
        assert_eq!(conf.class(), ExtremalityClass::Ext1);
        assert_eq!((conf.a_total, conf.b_total), (3, 2));
        assert_eq!(beta(&g, &pair, &Palette::Uniform(3)).unwrap(), rat(1, 2));
    }

    #[test]
    fn absent_color_gives_r_zero() {
        let g = generators::path(3);
        let pair = AdjacentPair::new(col(&[0, 2, 0], 4), col(&[1, 2, 0], 4)).unwrap();
        let conf = configuration(&g, &pair, 3, None);
        assert_eq!(conf.r(), 0);
        assert_eq!((conf.a_total, conf.b_total), (1, 1));
        assert_eq!(conf.i_a(), None);
    }

    #[test]
    fn shared_component_is_counted_once() {
        // v = 0 adjacent to 1 and 2, both colored 2, joined through 3 colored 0
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let pair = AdjacentPair::new(col(&[0, 2, 2, 0], 3), col(&[1, 2, 2, 0], 3)).unwrap();
        let conf = configuration(&g, &pair, 2, None);
        assert_eq!(conf.a, vec![3, 0]);
        assert_eq!(conf.b, vec![1, 1]);
        assert_eq!(conf.a_total, 4);
    }

    #[test]
    fn swapping_exchanges_sides() {
        let g = generators::cycle(5).unwrap();
        let pair = AdjacentPair::new(col(&[0, 1, 2, 1, 2], 4), col(&[3, 1, 2, 1, 2], 4)).unwrap();
        for c in 0..4 {
            let x = configuration(&g, &pair, c, None);
            let y = configuration(&g, &pair.swapped(), c, None);
            assert_eq!((x.a, x.b), (y.b, y.a));
        }
    }

    #[test]
    fn omega_range() {
        let g = rat(1, 10);
        assert_eq!(omega(&Rational::zero(), &g).unwrap(), rat(9, 10));
        assert_eq!(omega(&Rational::one(), &g).unwrap(), Rational::one());
        assert!(omega(&Rational::zero(), &rat(1, 2)).is_err());
        assert_eq!(epsilon(), rat(1, 264));
    }

    #[test]
    fn list_mode_zeroes_unflippable() {
        let g = generators::path(3);
        let pair = AdjacentPair::new(col(&[0, 2, 0], 3), col(&[1, 2, 0], 3)).unwrap();
        let full = ListAssignment::uniform(3, 3);
        assert_eq!(
            configuration(&g, &pair, 2, Some(&full)),
            configuration(&g, &pair, 2, None)
        );
        // vertex 2 cannot take color 2, so S_τ(1, 0) = {1, 2} is not flippable
        let lists = ListAssignment::new(vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1]]).unwrap();
        let conf = configuration(&g, &pair, 2, Some(&lists));
        assert_eq!(conf.a, vec![0]);
        assert_eq!(conf.a_total, 0);
    }
}
