//! Dense two-phase primal simplex over exact rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
}

/// `min c·x` subject to `A x (≤ | =) b`, `x ≥ 0`.
#[derive(Clone, Debug)]
pub struct StandardLp {
    pub objective: Vec<Rational>,
    pub rows: Vec<(Vec<Rational>, Sense, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplexOutcome {
    Optimal {
        x: Vec<Rational>,
        value: Rational,
        /// One multiplier per row: `≤ 0` for inequality rows, free for equalities.
        duals: Vec<Rational>,
        /// Column of each basic variable; columns past the structural ones are
        /// slacks and artificials.
        basis: Vec<usize>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// `m` rows of `cols + 1` entries; the last entry is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        for x in self.t[row].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.t[row].clone();
        for (r, line) in self.t.iter_mut().enumerate() {
            if r == row || line[col].is_zero() {
                continue;
            }
            let f = line[col].clone();
            for (x, y) in line.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[row] = col;
    }

    fn reduced_costs(&self, cost: &[Rational], allowed: &[bool]) -> Vec<Option<Rational>> {
        (0..self.cols)
            .map(|j| {
                if !allowed[j] {
                    return None;
                }
                let mut d = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !self.t[r][j].is_zero() && !cost[b].is_zero() {
                        d -= &cost[b] * &self.t[r][j];
                    }
                }
                Some(d)
            })
            .collect()
    }

    /// Runs to optimality under `cost`; `false` when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let d = self.reduced_costs(cost, allowed);
            let Some(enter) = d.iter().position(|x| x.as_ref().is_some_and(|v| v.is_negative())) else {
                return true;
            };
            let mut leave: Option<(Rational, usize, usize)> = None;
            for r in 0..self.t.len() {
                let a = &self.t[r][enter];
                if a.is_positive() {
                    let ratio = &self.t[r][self.cols] / a;
                    let better = match &leave {
                        None => true,
                        Some((best, _, b)) => ratio < *best || (ratio == *best && self.basis[r] < *b),
                    };
                    if better {
                        leave = Some((ratio, r, self.basis[r]));
                    }
                }
            }
            match leave {
                Some((_, r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

pub fn solve(lp: &StandardLp) -> SimplexOutcome {
    let n = lp.objective.len();
    let m = lp.rows.len();
    // Columns: structural, one slack per inequality row, one artificial per row.
    let slack_of: Vec<Option<usize>> = {
        let mut next = n;
        lp.rows
            .iter()
            .map(|(_, s, _)| {
                (*s == Sense::Le).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let slacks = slack_of.iter().flatten().count();
    let art0 = n + slacks;
    let cols = art0 + m;
    let mut t = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut signs = Vec::with_capacity(m);
    // The column holding +e_i initially; B⁻¹ is read off these at the end.
    let mut unit_col = Vec::with_capacity(m);
    for (i, (coeffs, _, rhs)) in lp.rows.iter().enumerate() {
        let sign = if rhs.is_negative() { -Rational::one() } else { Rational::one() };
        let mut line = vec![Rational::zero(); cols + 1];
        for (j, a) in coeffs.iter().enumerate() {
            line[j] = a * &sign;
        }
        if let Some(s) = slack_of[i] {
            line[s] = sign.clone();
        }
        line[art0 + i] = Rational::one();
        line[cols] = rhs * &sign;
        match slack_of[i] {
            Some(s) if sign.is_positive() => {
                basis.push(s);
                unit_col.push(s);
            }
            _ => {
                basis.push(art0 + i);
                unit_col.push(art0 + i);
            }
        }
        signs.push(sign);
        t.push(line);
    }
    let mut tab = Tableau { t, basis, cols };

    let mut phase1 = vec![Rational::zero(); cols];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b >= art0 {
            phase1[art0 + i] = Rational::one();
        }
    }
    let all = vec![true; cols];
    tab.optimize(&phase1, &all);
    let infeasibility: Rational = tab
        .basis
        .iter()
        .enumerate()
        .filter(|&(_, &b)| b >= art0)
        .map(|(r, _)| tab.t[r][cols].clone())
        .sum();
    if infeasibility.is_positive() {
        return SimplexOutcome::Infeasible;
    }
    // Drive zero-level artificials out of the basis where a real column allows it;
    // rows where none does are redundant and keep their artificial at zero.
    for r in 0..m {
        if tab.basis[r] >= art0 {
            if let Some(j) = (0..art0).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, j);
            }
        }
    }

    let mut cost = vec![Rational::zero(); cols];
    cost[..n].clone_from_slice(&lp.objective);
    let mut allowed = vec![true; cols];
    for a in allowed.iter_mut().skip(art0) {
        *a = false;
    }
    if !tab.optimize(&cost, &allowed) {
        return SimplexOutcome::Unbounded;
    }

    let mut x = vec![Rational::zero(); n];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.t[r][cols].clone();
        }
    }
    let value: Rational = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    let duals = (0..m)
        .map(|i| {
            let y: Rational = tab
                .basis
                .iter()
                .enumerate()
                .map(|(r, &b)| &cost[b] * &tab.t[r][unit_col[i]])
                .sum();
            y * &signs[i]
        })
        .collect();
    SimplexOutcome::Optimal {
        x,
        value,
        duals,
        basis: tab.basis,
    }
}

/// Checks `(x, y)` as a primal-dual optimal pair: primal feasibility, dual
/// sign conditions, `Aᵀy ≤ c`, and `b·y = c·x`.
pub fn verify_certificate(lp: &StandardLp, x: &[Rational], duals: &[Rational]) -> bool {
    let n = lp.objective.len();
    if x.len() != n || duals.len() != lp.rows.len() || x.iter().any(|v| v.is_negative()) {
        return false;
    }
    for ((coeffs, sense, rhs), y) in lp.rows.iter().zip(duals) {
        let lhs: Rational = coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        let ok = match sense {
            Sense::Le => lhs <= *rhs && !y.is_positive(),
            Sense::Eq => lhs == *rhs,
        };
        if !ok {
            return false;
        }
    }
    for j in 0..n {
        let col: Rational = lp.rows.iter().zip(duals).map(|((c, _, _), y)| &c[j] * y).sum();
        if col > lp.objective[j] {
            return false;
        }
    }
    let primal: Rational = lp.objective.iter().zip(x).map(|(c, v)| c * v).sum();
    let dual: Rational = lp.rows.iter().zip(duals).map(|((_, _, b), y)| b * y).sum();
    primal == dual
}
