use std::collections::BTreeSet;

use num_traits::Signed;

use super::program::{config_label, realizable, tuples};
use crate::bounds::vig2_rhs;
use crate::error::{Error, Result};
use crate::params::FlipParams;
use crate::rational::{format_rational, int, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripsCheck {
    /// `i·p_i ≤ 1` for every `i`.
    pub size_bound: bool,
    /// `(i−1)p_i ≤ 2p_3` for every `i`.
    pub triple_bound: bool,
    /// `p_1 + 2p_3 = 4/3 < κ`.
    pub sum_condition: bool,
    /// `(i−2)p_i` below the threshold for every `i`.
    pub tail_condition: bool,
    /// `1/4 − (3/2)(11/6 − κ)`.
    pub threshold: Rational,
}

impl TripsCheck {
    pub fn passes(&self) -> bool {
        self.size_bound && self.triple_bound && self.sum_condition && self.tail_condition
    }

    pub fn report(&self) -> String {
        let line = |name: &str, ok: bool| format!("{name}: {}\n", if ok { "ok" } else { "FAILS" });
        let mut out = String::new();
        out.push_str(&line("i*p_i <= 1", self.size_bound));
        out.push_str(&line("(i-1)*p_i <= 2*p_3", self.triple_bound));
        out.push_str(&line("p_1 + 2*p_3 = 4/3 < kappa", self.sum_condition));
        out.push_str(&line("(i-2)*p_i < threshold", self.tail_condition));
        out.push_str(&format!("threshold: {}\n", format_rational(&self.threshold)));
        out
    }
}

/// `i·p_i ≤ 1` and `(i−1)p_i ≤ 2p_3` over the support of `p`.
pub fn size_hypotheses(p: &FlipParams) -> (bool, bool) {
    let support = 1..=p.values().len();
    let size = support.clone().all(|i| int(i as i64) * p.get(i) <= int(1));
    let triple = support.into_iter().all(|i| int(i as i64 - 1) * p.get(i) <= int(2) * p.get(3));
    (size, triple)
}

pub fn check_trips(p: &FlipParams, kappa: &Rational) -> TripsCheck {
    let threshold = rat(1, 4) - rat(3, 2) * (rat(11, 6) - kappa);
    let (size_bound, triple_bound) = size_hypotheses(p);
    let sum = p.get(1) + int(2) * p.get(3);
    let sum_condition = sum == rat(4, 3) && sum < *kappa;
    let tail_condition = (1..=p.values().len()).all(|i| int(i as i64 - 2) * p.get(i) < threshold);
    TripsCheck {
        size_bound,
        triple_bound,
        sum_condition,
        tail_condition,
        threshold,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExtremalConfig {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// Whether the mirror `(b;a)` was also found tight.
    pub symmetric_pair: bool,
}

impl ExtremalConfig {
    pub fn label(&self) -> String {
        config_label(&self.a, &self.b)
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for perm in permutations(r - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, r - 1);
            out.push(p);
        }
    }
    out
}

/// Representative of `(a;b)` under index permutations and the `a ↔ b` swap:
/// the lexicographically largest image.
pub fn canonical(a: &[usize], b: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for perm in permutations(a.len()) {
        let pa: Vec<usize> = perm.iter().map(|&i| a[i]).collect();
        let pb: Vec<usize> = perm.iter().map(|&i| b[i]).collect();
        for cand in [(pa.clone(), pb.clone()), (pb, pa)] {
            if best.as_ref().is_none_or(|x| cand > *x) {
                best = Some(cand);
            }
        }
    }
    best.expect("at least one permutation")
}

/// Configurations with `r ∈ {1, 2}` whose bound on `∇_H` equals `κ_ref·r − 1`,
/// one per symmetry class. Errors when `p` violates `i·p_i ≤ 1` or
/// `(i−1)p_i ≤ 2p_3`.
pub fn enumerate_extremal(p: &FlipParams, kappa_ref: &Rational, size_cap: usize) -> Result<Vec<ExtremalConfig>> {
    let (size, triple) = size_hypotheses(p);
    if !(size && triple) {
        return Err(Error::Lp(
            "flip parameters violate i*p_i <= 1 or (i-1)*p_i <= 2*p_3".into(),
        ));
    }
    let mut tight = BTreeSet::new();
    for r in 1..=2 {
        let target = kappa_ref * int(r as i64) - int(1);
        let all = tuples(r, size_cap);
        for a in &all {
            for b in &all {
                if !realizable(a, b) {
                    continue;
                }
                let at = 1 + a.iter().sum::<usize>();
                let bt = 1 + b.iter().sum::<usize>();
                if vig2_rhs(a, b, at, bt, p) == target {
                    tight.insert((a.clone(), b.clone()));
                }
            }
        }
    }
    let mut classes = BTreeSet::new();
    for (a, b) in &tight {
        let (ca, cb) = canonical(a, b);
        let mirror = canonical(&cb, &ca) == (ca.clone(), cb.clone()) && tight.contains(&(b.clone(), a.clone()));
        classes.insert(ExtremalConfig {
            a: ca,
            b: cb,
            symmetric_pair: mirror,
        });
    }
    let mut out: Vec<ExtremalConfig> = classes.into_iter().collect();
    out.sort_by(|x, y| (x.r(), &x.a, &x.b).cmp(&(y.r(), &y.a, &y.b)));
    Ok(out)
}

/// Largest value of `∇_H` bound minus `κ·r − 1` over the scanned configurations,
/// with the configuration attaining it; positive means `κ` is too small.
pub fn worst_configuration(p: &FlipParams, kappa: &Rational, r_max: usize, size_cap: usize) -> (Rational, Vec<usize>, Vec<usize>) {
    let mut worst: Option<(Rational, Vec<usize>, Vec<usize>)> = None;
    for r in 1..=r_max {
        let target = kappa * int(r as i64) - int(1);
        let all = tuples(r, size_cap);
        for a in &all {
            for b in &all {
                if !realizable(a, b) {
                    continue;
                }
                let at = 1 + a.iter().sum::<usize>();
                let bt = 1 + b.iter().sum::<usize>();
                let gap = vig2_rhs(a, b, at, bt, p) - &target;
                if worst.as_ref().is_none_or(|(w, _, _)| gap > *w) {
                    worst = Some((gap, a.clone(), b.clone()));
                }
            }
        }
    }
    worst.expect("r_max >= 1")
}

/// Whether every scanned configuration stays strictly below `κ·r − 1`.
pub fn strictly_below(p: &FlipParams, kappa: &Rational, r: usize, size_cap: usize) -> bool {
    let target = kappa * int(r as i64) - int(1);
    let all = tuples(r, size_cap);
    all.iter().all(|a| {
        all.iter().all(|b| {
            !realizable(a, b) || {
                let at = 1 + a.iter().sum::<usize>();
                let bt = 1 + b.iter().sum::<usize>();
                (vig2_rhs(a, b, at, bt, p) - &target).is_negative()
            }
        })
    })
}
