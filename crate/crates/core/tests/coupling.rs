use std::collections::BTreeMap;

use flipcolor::bounds::vig2_rhs_for;
use flipcolor::config::{configuration, AdjacentPair};
use flipcolor::coupling::{build_coupling, check_improvement};
use flipcolor::generators;
use flipcolor::graph::{proper_colorings, Coloring, Graph, Palette};
use flipcolor::kempe::component;
use flipcolor::params::FlipParams;
use flipcolor::rational::{int, rat, Rational};

/// Probability of every distinct flip outcome, summed over the `(u, c)` draws.
fn flip_law(g: &Graph, sigma: &Coloring, k: usize, p: &FlipParams) -> BTreeMap<Vec<usize>, Rational> {
    let mut law = BTreeMap::new();
    for u in 0..g.n() {
        for c in 0..k {
            let s = component(g, sigma, u, c);
            let ell = s.vertices.len() as i64;
            let draw = rat(1, (k * g.n()) as i64);
            let w = p.get(s.vertices.len()) / int(ell) * &draw;
            *law.entry(sigma.as_slice().to_vec()).or_insert_with(|| int(0)) += &draw - &w;
            let mut after = sigma.as_slice().to_vec();
            for &x in &s.vertices {
                let (a, b) = (sigma.get(u), c);
                after[x] = if sigma.get(x) == a { b } else { a };
            }
            *law.entry(after).or_insert_with(|| int(0)) += w;
        }
    }
    law
}

fn coupled_law(cp: &flipcolor::coupling::JointCoupling, side: bool) -> BTreeMap<Vec<usize>, Rational> {
    let mut law = BTreeMap::new();
    for e in cp.entries() {
        let (a, b) = cp.outcome(e);
        let x = if side { b } else { a };
        *law.entry(x.as_slice().to_vec()).or_insert_with(|| int(0)) += cp.probability(e);
    }
    law
}

fn proper_pairs(g: &Graph, k: usize) -> Vec<AdjacentPair> {
    let cols = proper_colorings(g, &Palette::Uniform(k), 1 << 20).unwrap();
    let mut out = Vec::new();
    for s in &cols {
        for v in 0..g.n() {
            for c in 0..k {
                if c == s.get(v) || g.neighbors(v).iter().any(|&w| s.get(w) == c) {
                    continue;
                }
                out.push(AdjacentPair::recolor(s, v, c).unwrap());
            }
        }
    }
    out
}

fn family() -> Vec<Graph> {
    (1..=4).flat_map(generators::all_graphs).collect()
}

#[test]
fn marginals_match_flip_law() {
    let p = FlipParams::optimal();
    for g in family() {
        for k in 3..=4 {
            for pair in proper_pairs(&g, k) {
                let cp = build_coupling(&g, &pair, k, &p).unwrap();
                assert_eq!(coupled_law(&cp, false), flip_law(&g, pair.sigma(), k, &p), "{g:?} {pair:?}");
                assert_eq!(coupled_law(&cp, true), flip_law(&g, pair.tau(), k, &p));
            }
        }
    }
}

#[test]
fn per_color_bounds_hold() {
    for p in [FlipParams::optimal(), FlipParams::vigoda()] {
        for g in family() {
            for k in 3..=4 {
                for pair in proper_pairs(&g, k) {
                    let cp = build_coupling(&g, &pair, k, &p).unwrap();
                    for c in 0..k {
                        let conf = configuration(&g, &pair, c, None);
                        let got = cp.nabla_h_color(c).expect("no merged colors on proper pairs");
                        if conf.r() == 0 {
                            assert_eq!(got, int(-1));
                        } else {
                            assert!(!pair.is_special(c));
                            assert!(got <= vig2_rhs_for(&conf, &p), "{g:?} {pair:?} {c}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn improvement_on_small_graphs() {
    let p = FlipParams::optimal();
    for g in family() {
        for k in 3..=4 {
            for pair in proper_pairs(&g, k) {
                assert!(check_improvement(&g, &pair, k, &p).unwrap().holds);
            }
        }
    }
}

#[test]
fn improper_pairs_still_couple() {
    let p = FlipParams::optimal();
    let g = generators::complete(4);
    for colors in [[0, 0, 1, 1], [0, 0, 0, 1], [0, 1, 2, 0]] {
        let sigma = Coloring::new(colors.to_vec(), 3).unwrap();
        for c in 0..3 {
            if c == sigma.get(0) {
                continue;
            }
            let pair = AdjacentPair::recolor(&sigma, 0, c).unwrap();
            let cp = build_coupling(&g, &pair, 3, &p).unwrap();
            assert_eq!(coupled_law(&cp, false), flip_law(&g, pair.sigma(), 3, &p));
            assert_eq!(coupled_law(&cp, true), flip_law(&g, pair.tau(), 3, &p));
        }
    }
}
