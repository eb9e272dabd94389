use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::simplex::{self, Sense, SimplexOutcome, StandardLp};
use crate::error::{Error, Result};
use crate::params::FlipParams;
use crate::rational::{format_rational, int, rat, Rational};

/// Highest flip-parameter index carried as a variable; `p_ℓ = 0` beyond it.
pub const MAX_SIZE: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Expanded bound for an `r`-configuration with the given argmax and min choices.
    Configuration {
        a: Vec<usize>,
        b: Vec<usize>,
        i_a: usize,
        i_b: usize,
        /// `true` where the min was resolved to the `b` side.
        min_b: Vec<bool>,
    },
    OneConfiguration { i: usize, j: usize },
    TwoConfiguration { ell: usize },
    Monotone(usize),
    NonNegative(usize),
    Fixed(usize),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Configuration { a, b, i_a, i_b, min_b } => {
                let side: String = min_b.iter().map(|&x| if x { 'b' } else { 'a' }).collect();
                write!(f, "config {} i_a={} i_b={} min={}", config_label(a, b), i_a + 1, i_b + 1, side)
            }
            Provenance::OneConfiguration { i, j } => write!(f, "one-config i={i} j={j}"),
            Provenance::TwoConfiguration { ell } => write!(f, "two-config l={ell}"),
            Provenance::Monotone(l) => write!(f, "monotone p{} <= p{}", l + 1, l),
            Provenance::NonNegative(l) => write!(f, "nonnegative p{l}"),
            Provenance::Fixed(l) => write!(f, "fixed p{l}"),
        }
    }
}

/// `(a_1,…,a_r;b_1,…,b_r)`.
pub fn config_label(a: &[usize], b: &[usize]) -> String {
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    format!("({};{})", join(a), join(b))
}

/// `Σ_ℓ α_ℓ p_ℓ + κ_coef·κ (≤ | =) rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coefficients: BTreeMap<usize, Rational>,
    pub kappa: Rational,
    pub sense: Sense,
    pub rhs: Rational,
    pub provenance: Provenance,
}

impl LinearConstraint {
    fn new(coefficients: BTreeMap<usize, Rational>, kappa: Rational, sense: Sense, rhs: Rational, provenance: Provenance) -> Self {
        let coefficients = coefficients.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LinearConstraint {
            coefficients,
            kappa,
            sense,
            rhs,
            provenance,
        }
    }

    /// `rhs − lhs`; nonnegative when an inequality holds.
    pub fn slack(&self, p: &FlipParams, kappa: &Rational) -> Rational {
        let lhs: Rational = self.coefficients.iter().map(|(&l, c)| c * p.get(l)).sum::<Rational>() + &self.kappa * kappa;
        &self.rhs - lhs
    }

    pub fn holds(&self, p: &FlipParams, kappa: &Rational) -> bool {
        let s = self.slack(p, kappa);
        match self.sense {
            Sense::Le => !s.is_negative(),
            Sense::Eq => s.is_zero(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (l, c) in &self.coefficients {
            push_term(&mut out, c, &format!("p{l}"));
        }
        if !self.kappa.is_zero() {
            push_term(&mut out, &self.kappa, "kappa");
        }
        if out.is_empty() {
            out.push('0');
        }
        let op = match self.sense {
            Sense::Le => "<=",
            Sense::Eq => "=",
        };
        format!("{out} {op} {}", format_rational(&self.rhs))
    }
}

fn push_term(out: &mut String, c: &Rational, name: &str) {
    let sign = if c.is_negative() { "-" } else { "+" };
    if out.is_empty() {
        if c.is_negative() {
            out.push('-');
        }
    } else {
        out.push_str(&format!(" {sign} "));
    }
    let mag = c.abs();
    if mag.is_one() {
        out.push_str(name);
    } else {
        out.push_str(&format!("{} {name}", format_rational(&mag)));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProgramKind {
    /// All configuration constraints.
    Full,
    Reduced,
    /// `Full` with the `(2;1)` and `(3,3;1,1)` constraints replaced by `p_3 = 1/6`, `p_7 = 0`.
    FullStar,
    ReducedStar,
}

impl ProgramKind {
    pub fn name(self) -> &'static str {
        match self {
            ProgramKind::Full => "P",
            ProgramKind::Reduced => "P_red",
            ProgramKind::FullStar => "P*",
            ProgramKind::ReducedStar => "P*_red",
        }
    }

    pub fn is_reduced(self) -> bool {
        matches!(self, ProgramKind::Reduced | ProgramKind::ReducedStar)
    }

    pub fn is_starred(self) -> bool {
        matches!(self, ProgramKind::FullStar | ProgramKind::ReducedStar)
    }
}

impl std::str::FromStr for ProgramKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" => Ok(ProgramKind::Full),
            "P_red" => Ok(ProgramKind::Reduced),
            "P*" => Ok(ProgramKind::FullStar),
            "P*_red" => Ok(ProgramKind::ReducedStar),
            other => Err(Error::Lp(format!("unknown program {other:?} (expected P, P_red, P* or P*_red)"))),
        }
    }
}

/// Minimise `κ` over `(p_2, …, p_7, κ)` with `p_1 = 1`.
#[derive(Clone, Debug)]
pub struct LpProgram {
    pub kind: ProgramKind,
    pub constraints: Vec<LinearConstraint>,
}

fn structural(kind: ProgramKind) -> Vec<LinearConstraint> {
    let mut out = Vec::new();
    for l in 1..MAX_SIZE {
        let coeffs = BTreeMap::from([(l + 1, int(1)), (l, int(-1))]);
        out.push(LinearConstraint::new(coeffs, int(0), Sense::Le, int(0), Provenance::Monotone(l)));
    }
    for l in 2..=MAX_SIZE {
        let coeffs = BTreeMap::from([(l, int(-1))]);
        out.push(LinearConstraint::new(coeffs, int(0), Sense::Le, int(0), Provenance::NonNegative(l)));
    }
    out.push(LinearConstraint::new(
        BTreeMap::from([(1, int(1))]),
        int(0),
        Sense::Eq,
        int(1),
        Provenance::Fixed(1),
    ));
    if kind.is_starred() {
        out.push(LinearConstraint::new(
            BTreeMap::from([(3, int(1))]),
            int(0),
            Sense::Eq,
            rat(1, 6),
            Provenance::Fixed(3),
        ));
        out.push(LinearConstraint::new(
            BTreeMap::from([(7, int(1))]),
            int(0),
            Sense::Eq,
            int(0),
            Provenance::Fixed(7),
        ));
    }
    out
}

/// The reduced programs: one-configuration rows
/// `i(p_i − p_{i+1}) + (j−1)(p_j − p_{j+1}) ≤ κ − 1` for `1 ≤ i, j ≤ 6`, `j ≠ 1`,
/// and two-configuration rows `2(ℓ−1)p_ℓ + p_{2ℓ+1} ≤ 2κ − 3` for `ℓ ∈ {2, 3}`.
pub fn gen_reduced(star: bool) -> LpProgram {
    let kind = if star { ProgramKind::ReducedStar } else { ProgramKind::Reduced };
    let mut constraints = Vec::new();
    for i in 1..=6 {
        for j in 2..=6 {
            if star && (i, j) == (1, 2) {
                continue;
            }
            let mut coeffs: BTreeMap<usize, Rational> = BTreeMap::new();
            *coeffs.entry(i).or_insert_with(Rational::zero) += int(i as i64);
            *coeffs.entry(i + 1).or_insert_with(Rational::zero) -= int(i as i64);
            *coeffs.entry(j).or_insert_with(Rational::zero) += int(j as i64 - 1);
            *coeffs.entry(j + 1).or_insert_with(Rational::zero) -= int(j as i64 - 1);
            constraints.push(LinearConstraint::new(
                coeffs,
                int(-1),
                Sense::Le,
                int(-1),
                Provenance::OneConfiguration { i, j },
            ));
        }
    }
    for ell in [2usize, 3] {
        if star && ell == 3 {
            continue;
        }
        let coeffs = BTreeMap::from([(ell, int(2 * (ell as i64 - 1))), (2 * ell + 1, int(1))]);
        constraints.push(LinearConstraint::new(
            coeffs,
            int(-2),
            Sense::Le,
            int(-3),
            Provenance::TwoConfiguration { ell },
        ));
    }
    constraints.extend(structural(kind));
    LpProgram { kind, constraints }
}

/// Whether `(a;b)` can arise: every zero entry repeats an earlier component,
/// which then has at least 3 vertices, and the first entry is never zero.
pub fn realizable(a: &[usize], b: &[usize]) -> bool {
    let side_ok = |v: &[usize]| {
        v.iter()
            .enumerate()
            .all(|(i, &x)| x > 0 || (i > 0 && v[..i].iter().any(|&y| y >= 3)))
    };
    a.len() == b.len() && side_ok(a) && side_ok(b)
}

/// Every `r`-tuple with entries in `0..=size_cap`, in lexicographic order.
pub(crate) fn tuples(r: usize, size_cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=size_cap).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Integer coefficients of `p_0 … p_{MAX_SIZE}` for one resolution of the
/// argmax indices and of every min.
fn expanded(a: &[usize], b: &[usize], i_a: usize, i_b: usize, min_b: &[bool]) -> [i64; MAX_SIZE + 1] {
    let mut c = [0i64; MAX_SIZE + 1];
    let mut add = |l: usize, v: i64| {
        if (1..=MAX_SIZE).contains(&l) {
            c[l] += v;
        }
    };
    let at = 1 + a.iter().sum::<usize>();
    let bt = 1 + b.iter().sum::<usize>();
    let (am, bm) = (a[i_a], b[i_b]);
    add(at, at as i64 - am as i64 - 1);
    add(bt, bt as i64 - bm as i64 - 1);
    for i in 0..a.len() {
        // q_i as (positive index, negative index or none)
        let q: (usize, Option<usize>) = if i == i_a { (am, Some(at)) } else { (a[i], None) };
        let q2: (usize, Option<usize>) = if i == i_b { (bm, Some(bt)) } else { (b[i], None) };
        let mut put = |(pos, neg): (usize, Option<usize>), w: i64| {
            add(pos, w);
            if let Some(n) = neg {
                add(n, -w);
            }
        };
        put(q, a[i] as i64);
        put(q2, b[i] as i64);
        put(if min_b[i] { q2 } else { q }, -1);
    }
    c
}

fn is_replaced(a: &[usize], b: &[usize]) -> bool {
    matches!((a, b), ([2], [1]) | ([1], [2]) | ([3, 3], [1, 1]) | ([1, 1], [3, 3]))
}

/// Configuration constraints `Σ α_ℓ p_ℓ − rκ ≤ −1` for `1 ≤ r ≤ r_max`, with
/// entries up to `size_cap` and every argmax and min resolution; duplicates dropped.
pub fn gen_config_constraints(r_max: usize, size_cap: usize) -> Vec<LinearConstraint> {
    config_constraints(r_max, size_cap, false)
}

fn config_constraints(r_max: usize, size_cap: usize, star: bool) -> Vec<LinearConstraint> {
    let mut seen: HashSet<(usize, [i64; MAX_SIZE + 1])> = HashSet::new();
    let mut out = Vec::new();
    for r in 1..=r_max {
        let all = tuples(r, size_cap);
        for a in &all {
            for b in &all {
                if !realizable(a, b) || (star && is_replaced(a, b)) {
                    continue;
                }
                let am = *a.iter().max().unwrap();
                let bm = *b.iter().max().unwrap();
                for i_a in (0..r).filter(|&i| a[i] == am) {
                    for i_b in (0..r).filter(|&i| b[i] == bm) {
                        for mask in 0..(1u32 << r) {
                            let min_b: Vec<bool> = (0..r).map(|i| mask >> i & 1 == 1).collect();
                            let c = expanded(a, b, i_a, i_b, &min_b);
                            if seen.insert((r, c)) {
                                let coeffs = (1..=MAX_SIZE).map(|l| (l, int(c[l]))).collect();
                                out.push(LinearConstraint::new(
                                    coeffs,
                                    int(-(r as i64)),
                                    Sense::Le,
                                    int(-1),
                                    Provenance::Configuration {
                                        a: a.clone(),
                                        b: b.clone(),
                                        i_a,
                                        i_b,
                                        min_b,
                                    },
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// `(P)` or `(P*)` truncated to configurations with `r ≤ r_max`.
pub fn gen_full(star: bool, r_max: usize, size_cap: usize) -> LpProgram {
    let kind = if star { ProgramKind::FullStar } else { ProgramKind::Full };
    let mut constraints = config_constraints(r_max, size_cap, star);
    constraints.extend(structural(kind));
    LpProgram { kind, constraints }
}

pub fn gen_program(kind: ProgramKind, r_max: usize, size_cap: usize) -> LpProgram {
    match kind {
        ProgramKind::Reduced => gen_reduced(false),
        ProgramKind::ReducedStar => gen_reduced(true),
        ProgramKind::Full => gen_full(false, r_max, size_cap),
        ProgramKind::FullStar => gen_full(true, r_max, size_cap),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSlack {
    pub id: usize,
    pub provenance: Provenance,
    pub slack: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub rows: Vec<RowSlack>,
}

impl FeasibilityReport {
    pub fn violations(&self) -> Vec<&RowSlack> {
        self.rows.iter().filter(|r| !r.holds).collect()
    }

    /// Inequality rows met with equality.
    pub fn tight(&self) -> Vec<&RowSlack> {
        self.rows
            .iter()
            .filter(|r| r.slack.is_zero() && !matches!(r.provenance, Provenance::Fixed(_)))
            .collect()
    }

    pub fn feasible(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,constraint,slack,holds\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.id, r.provenance, format_rational(&r.slack), r.holds));
        }
        out
    }
}

pub fn check_feasible(p: &FlipParams, kappa: &Rational, program: &LpProgram) -> FeasibilityReport {
    let rows = program
        .constraints
        .iter()
        .enumerate()
        .map(|(id, c)| RowSlack {
            id,
            provenance: c.provenance.clone(),
            slack: c.slack(p, kappa),
            holds: c.holds(p, kappa),
        })
        .collect();
    FeasibilityReport { rows }
}

impl LpProgram {
    pub fn to_text(&self) -> String {
        let mut out = format!("# program {}\nminimize kappa\nsubject to\n", self.kind.name());
        for (i, c) in self.constraints.iter().enumerate() {
            out.push_str(&format!("c{i}: {}  # {}\n", c.to_text(), c.provenance));
        }
        out
    }

    /// Columns `p_2, …, p_7, κ`; the fixed `p_1 = 1` moves to the right-hand side.
    fn standard_form(&self) -> StandardLp {
        let nvars = MAX_SIZE;
        let mut objective = vec![Rational::zero(); nvars];
        objective[nvars - 1] = Rational::one();
        let rows = self
            .constraints
            .iter()
            .filter(|c| c.provenance != Provenance::Fixed(1) && !matches!(c.provenance, Provenance::NonNegative(_)))
            .map(|c| {
                let mut coeffs = vec![Rational::zero(); nvars];
                let mut rhs = c.rhs.clone();
                for (&l, a) in &c.coefficients {
                    if l == 1 {
                        rhs -= a;
                    } else {
                        coeffs[l - 2] = a.clone();
                    }
                }
                coeffs[nvars - 1] = c.kappa.clone();
                (coeffs, c.sense, rhs)
            })
            .collect();
        StandardLp { objective, rows }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub params: FlipParams,
    pub kappa: Rational,
    /// Dual multiplier per standard-form row.
    pub duals: Vec<Rational>,
    /// The dual certificate proves optimality of `κ`.
    pub certified: bool,
}

/// Exact optimum of a reduced program.
pub fn solve_exact(program: &LpProgram) -> Result<LpSolution> {
    if !program.kind.is_reduced() {
        return Err(Error::Lp(format!(
            "{} has too many rows for the dense solver; use verify instead",
            program.kind.name()
        )));
    }
    let lp = program.standard_form();
    match simplex::solve(&lp) {
        SimplexOutcome::Optimal { x, value, duals, .. } => {
            let certified = simplex::verify_certificate(&lp, &x, &duals);
            let mut values = vec![Rational::one()];
            values.extend(x[..MAX_SIZE - 1].iter().cloned());
            while values.last().is_some_and(|v| v.is_zero()) {
                values.pop();
            }
            let params = FlipParams::new(values)?;
            Ok(LpSolution {
                params,
                kappa: value,
                duals,
                certified,
            })
        }
        SimplexOutcome::Infeasible => Err(Error::Lp(format!("{} is infeasible", program.kind.name()))),
        SimplexOutcome::Unbounded => Err(Error::Lp(format!("{} is unbounded", program.kind.name()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find<'a>(program: &'a LpProgram, prov: &Provenance) -> &'a LinearConstraint {
        program.constraints.iter().find(|c| c.provenance == *prov).unwrap()
    }

    #[test]
    fn reduced_rows_have_expected_shape() {
        let p = gen_reduced(false);
        assert_eq!(find(&p, &Provenance::OneConfiguration { i: 1, j: 2 }).to_text(), "p1 - p3 - kappa <= -1/1");
        assert_eq!(find(&p, &Provenance::TwoConfiguration { ell: 2 }).to_text(), "2/1 p2 + p5 - 2/1 kappa <= -3/1");
        assert_eq!(find(&p, &Provenance::TwoConfiguration { ell: 3 }).to_text(), "4/1 p3 + p7 - 2/1 kappa <= -3/1");
        let s = gen_reduced(true);
        assert!(s.constraints.iter().all(|c| c.provenance != Provenance::OneConfiguration { i: 1, j: 2 }));
        assert!(s.constraints.iter().any(|c| c.provenance == Provenance::Fixed(7)));
    }

    #[test]
    fn config_constraints_contain_worked_examples() {
        let cs = gen_config_constraints(2, 8);
        let texts: HashSet<String> = cs.iter().map(|c| c.to_text()).collect();
        assert!(texts.contains("p1 - p3 - kappa <= -1/1"));
        assert!(texts.contains("2/1 p1 + 4/1 p3 + p7 - 2/1 kappa <= -1/1"));
        assert!(cs.iter().all(|c| c.kappa.is_negative()));
    }

    #[test]
    fn realizability() {
        assert!(realizable(&[3, 0], &[1, 1]));
        assert!(!realizable(&[2, 0], &[1, 1]));
        assert!(!realizable(&[0, 3], &[1, 1]));
        assert!(!realizable(&[1], &[0]));
    }

    #[test]
    fn trivial_program() {
        let program = LpProgram {
            kind: ProgramKind::Reduced,
            constraints: vec![LinearConstraint::new(
                BTreeMap::new(),
                int(-1),
                Sense::Le,
                int(-1),
                Provenance::TwoConfiguration { ell: 0 },
            )],
        };
        let sol = solve_exact(&program).unwrap();
        assert_eq!(sol.kappa, int(1));
        assert!(sol.certified);
    }
}
