//! Closed-form per-color bounds on the expected Hamming change.

use num_traits::One;

use crate::config::Configuration;
use crate::params::FlipParams;
use crate::rational::{int, Rational};

/// `(a − a_max − 1)p_a + (b − b_max − 1)p_b + Σ (a_i q_i + b_i q'_i − min(q_i, q'_i))`,
/// with `i_a`, `i_b` the smallest maximising indices; `−1` when `r = 0`.
pub fn vig2_rhs(a: &[usize], b: &[usize], a_total: usize, b_total: usize, p: &FlipParams) -> Rational {
    let r = a.len();
    if r == 0 {
        return -Rational::one();
    }
    let a_max = *a.iter().max().expect("r >= 1");
    let b_max = *b.iter().max().expect("r >= 1");
    let i_a = a.iter().position(|&x| x == a_max).expect("max attained");
    let i_b = b.iter().position(|&x| x == b_max).expect("max attained");
    let pa = p.get(a_total);
    let pb = p.get(b_total);
    let mut total = int(a_total as i64 - a_max as i64 - 1) * &pa + int(b_total as i64 - b_max as i64 - 1) * &pb;
    for i in 0..r {
        let q = if i == i_a { p.get(a_max) - &pa } else { p.get(a[i]) };
        let q2 = if i == i_b { p.get(b_max) - &pb } else { p.get(b[i]) };
        let m = if q <= q2 { q.clone() } else { q2.clone() };
        total += int(a[i] as i64) * q + int(b[i] as i64) * q2 - m;
    }
    total
}

pub fn vig2_rhs_for(conf: &Configuration, p: &FlipParams) -> Rational {
    vig2_rhs(&conf.a, &conf.b, conf.a_total, conf.b_total, p)
}

/// `(11/6 − ε(1 − β))Δ − k`.
pub fn improvement_rhs(beta: &Rational, max_degree: usize, k: usize) -> Rational {
    let eps = crate::config::epsilon();
    (Rational::new(11.into(), 6.into()) - eps * (Rational::one() - beta)) * int(max_degree as i64) - int(k as i64)
}

/// `−γ(k/Δ − 3/2)β + 2γ(10 + 16k/Δ)(1 − β)`; `None` on edgeless graphs.
pub fn improvement2_rhs(gamma: &Rational, beta: &Rational, max_degree: usize, k: usize) -> Option<Rational> {
    if max_degree == 0 {
        return None;
    }
    let ratio = Rational::new((k as i64).into(), (max_degree as i64).into());
    let three_halves = Rational::new(3.into(), 2.into());
    Some(
        -(gamma * (&ratio - three_halves) * beta)
            + int(2) * gamma * (int(10) + int(16) * &ratio) * (Rational::one() - beta),
    )
}

/// Upper bound on the complement contribution of one color:
/// `−iγ(k/Δ − 3/2)` for extremal colors of order `i`, `2γ(9 + 15k/Δ)` otherwise.
pub fn complement_rhs(gamma: &Rational, order: usize, max_degree: usize, k: usize) -> Option<Rational> {
    if max_degree == 0 {
        return None;
    }
    let ratio = Rational::new((k as i64).into(), (max_degree as i64).into());
    Some(if order == 0 {
        int(2) * gamma * (int(9) + int(15) * ratio)
    } else {
        -(int(order as i64) * gamma * (ratio - Rational::new(3.into(), 2.into())))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn extremal_values_under_vigoda() {
        let p = FlipParams::vigoda();
        let kappa = rat(11, 6);
        let tight = |a: &[usize], b: &[usize]| {
            let at = 1 + a.iter().sum::<usize>();
            let bt = 1 + b.iter().sum::<usize>();
            vig2_rhs(a, b, at, bt, &p) == &kappa * int(a.len() as i64) - int(1)
        };
        assert!(tight(&[2], &[1]));
        assert!(tight(&[5], &[1]));
        assert!(tight(&[3, 3], &[1, 1]));
        assert!(!tight(&[6], &[1]));
        assert!(!tight(&[1], &[1]));
    }

    #[test]
    fn r_zero_is_minus_one() {
        assert_eq!(vig2_rhs(&[], &[], 1, 1, &FlipParams::optimal()), int(-1));
    }
}
