//! Deterministic test-graph supply.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

const REGULAR_ATTEMPTS: u64 = 100_000;

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidGraph(format!("a cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path edges are simple")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges).expect("complete graph edges are simple")
}

/// Uniform-ish random `degree`-regular graph from the pairing model.
///
/// Attempt `i` shuffles the `n * degree` half-edges with ChaCha8 seeded by
/// `seed` on stream `i`; attempts producing a loop or a repeated edge are
/// discarded.
pub fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Graph> {
    if (n * degree) % 2 != 0 {
        return Err(Error::InvalidGraph(format!(
            "n * degree must be even (n = {n}, degree = {degree})"
        )));
    }
    if n > 0 && degree >= n {
        return Err(Error::InvalidGraph(format!(
            "degree {degree} must be below n = {n}"
        )));
    }
    let points: Vec<usize> = (0..n).flat_map(|u| std::iter::repeat_n(u, degree)).collect();
    for attempt in 0..REGULAR_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        let mut shuffled = points.clone();
        shuffled.shuffle(&mut rng);
        let mut seen = BTreeSet::new();
        let ok = shuffled.chunks(2).all(|pair| {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            u != v && seen.insert((u, v))
        });
        if ok {
            let edges: Vec<_> = seen.into_iter().collect();
            return Graph::from_edges(n, &edges);
        }
    }
    Err(Error::InvalidGraph(format!(
        "no simple {degree}-regular pairing found on {n} vertices after {REGULAR_ATTEMPTS} attempts"
    )))
}

/// Erdős–Rényi style graph where each pair is an edge with probability
/// `num/den`, deterministic given `seed`.
pub fn random_gnp(n: usize, num: u32, den: u32, seed: u64) -> Graph {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_range(0..den) < num {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("pairs are distinct")
}

/// One representative of every isomorphism class of simple graphs on `n`
/// vertices. Brute force over all labelings, so only for `n <= 6`.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "all_graphs is exhaustive and limited to n <= 6");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let canon = perms
            .iter()
            .map(|p| {
                let mut relabeled: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                    .collect();
                relabeled.sort_unstable();
                relabeled
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canon.clone()) {
            out.push(Graph::from_edges(n, &canon).expect("relabeled edges are simple"));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_and_complete_shapes() {
        let c5 = cycle(5).unwrap();
        assert_eq!((c5.max_degree(), c5.edge_count()), (2, 5));
        let k4 = complete(4);
        assert_eq!((k4.max_degree(), k4.edge_count()), (3, 6));
        assert!(cycle(2).is_err());
    }

    #[test]
    fn random_regular_is_deterministic_and_regular() {
        let a = random_regular(8, 3, 42).unwrap();
        let b = random_regular(8, 3, 42).unwrap();
        assert_eq!(a, b);
        assert!((0..8).all(|u| a.degree(u) == 3));
        assert!(random_regular(5, 3, 1).is_err());
        assert!(random_regular(4, 4, 1).is_err());
    }

    #[test]
    fn isomorphism_class_counts() {
        // OEIS A000088
        let counts: Vec<usize> = (1..=5).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }
}
