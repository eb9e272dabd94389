//! Flip parameters `p = (p_1, p_2, ...)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{common_denominator, format_rational, int, parse_rational, rat, Rational};

/// Bounded, non-increasing flip parameters with `p_1 = 1`.
///
/// Stored from `p_1`; `p_0` and every index past the stored tail read as 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipParams {
    values: Vec<Rational>,
}

impl FlipParams {
    pub fn new(mut values: Vec<Rational>) -> Result<Self> {
        while values.last().is_some_and(Zero::is_zero) {
            values.pop();
        }
        match values.first() {
            Some(p1) if p1.is_one() => {}
            Some(p1) => {
                return Err(Error::InvalidParams(format!(
                    "p_1 must be 1, got {}",
                    format_rational(p1)
                )))
            }
            None => return Err(Error::InvalidParams("p_1 must be 1, got nothing".into())),
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| **v < Rational::zero() || **v > Rational::one())
        {
            return Err(Error::InvalidParams(format!(
                "p_{} = {} lies outside [0, 1]",
                i + 1,
                format_rational(v)
            )));
        }
        if let Some(i) = values.windows(2).position(|w| w[1] > w[0]) {
            return Err(Error::InvalidParams(format!(
                "p_{} > p_{}: parameters must be non-increasing",
                i + 2,
                i + 1
            )));
        }
        Ok(FlipParams { values })
    }

    /// Single-vertex recoloring only: `p = (1, 0, 0, ...)`.
    pub fn singletons() -> Self {
        FlipParams { values: vec![int(1)] }
    }

    /// `(1, 13/42, 1/6, 2/21, 1/21, 1/84)`.
    pub fn vigoda() -> Self {
        FlipParams {
            values: vec![int(1), rat(13, 42), rat(1, 6), rat(2, 21), rat(1, 21), rat(1, 84)],
        }
    }

    /// `(1, 185/616, 1/6, 47/462, 9/154, 2/77)`, the optimum of the reduced
    /// program with `p_3 = 1/6` and `p_7 = 0` fixed.
    pub fn optimal() -> Self {
        FlipParams {
            values: vec![
                int(1),
                rat(185, 616),
                rat(1, 6),
                rat(47, 462),
                rat(9, 154),
                rat(2, 77),
            ],
        }
    }

    /// `p_ℓ`, with `p_0 = 0` and zeros past the stored tail.
    pub fn get(&self, ell: usize) -> Rational {
        self.get_ref(ell).cloned().unwrap_or_else(Rational::zero)
    }

    fn get_ref(&self, ell: usize) -> Option<&Rational> {
        if ell == 0 {
            None
        } else {
            self.values.get(ell - 1)
        }
    }

    /// The cutoff `ℓ₀`: `p_ℓ = 0` for every `ℓ >= ℓ₀`.
    pub fn cutoff(&self) -> usize {
        self.values.len() + 1
    }

    /// `p_1, ..., p_{ℓ₀-1}`.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Least common denominator of all entries.
    pub fn denominator(&self) -> Result<i64> {
        common_denominator(self.values.iter())
    }

    /// `p_ℓ * scale` as an integer; `scale` must be a multiple of
    /// [`Self::denominator`].
    pub fn scaled(&self, ell: usize, scale: i64) -> i64 {
        self.get_ref(ell).map_or(0, |v| {
            crate::rational::scaled_integer(v, scale).expect("scale is a multiple of the denominator")
        })
    }

    /// One rational per line; line `ℓ` holds `p_ℓ`. Blank lines and `#`
    /// comments are ignored, trailing zeros implied.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            values.push(parse_rational(line).map_err(|message| Error::Parse {
                line: i + 1,
                message,
            })?);
        }
        FlipParams::new(values)
    }

    pub fn to_text(&self) -> String {
        self.values
            .iter()
            .map(|v| format_rational(v) + "\n")
            .collect()
    }

    /// `i p_i <= 1` and `(i-1) p_i <= 2 p_3` for every `i`.
    pub fn satisfies_size_hypotheses(&self) -> bool {
        let two_p3 = self.get(3) * int(2);
        self.values.iter().enumerate().all(|(idx, p)| {
            let i = idx as i64 + 1;
            p * int(i) <= Rational::one() && p * int(i - 1) <= two_p3
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_valid() {
        for p in [FlipParams::vigoda(), FlipParams::optimal(), FlipParams::singletons()] {
            assert_eq!(FlipParams::new(p.values().to_vec()).unwrap(), p);
        }
        assert_eq!(FlipParams::optimal().cutoff(), 7);
        assert_eq!(FlipParams::singletons().cutoff(), 2);
        assert_eq!(FlipParams::optimal().get(0), int(0));
        assert_eq!(FlipParams::optimal().get(9), int(0));
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(FlipParams::new(vec![rat(1, 2)]).is_err());
        assert!(FlipParams::new(vec![int(1), rat(1, 3), rat(1, 2)]).is_err());
        assert!(FlipParams::new(vec![int(1), rat(-1, 3)]).is_err());
        assert!(FlipParams::new(vec![]).is_err());
    }

    #[test]
    fn text_round_trip_and_trailing_zeros() {
        let p = FlipParams::parse("1\n185/616\n1/6\n47/462\n9/154\n2/77\n0\n0\n").unwrap();
        assert_eq!(p, FlipParams::optimal());
        assert_eq!(FlipParams::parse(&p.to_text()).unwrap(), p);
        assert!(matches!(FlipParams::parse("1\nfoo"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn scaled_values() {
        let p = FlipParams::optimal();
        let d = p.denominator().unwrap();
        assert_eq!(d, 1848);
        assert_eq!(p.scaled(1, d), 1848);
        assert_eq!(p.scaled(3, d), 308);
        assert_eq!(p.scaled(7, d), 0);
    }

    #[test]
    fn size_hypotheses() {
        assert!(FlipParams::vigoda().satisfies_size_hypotheses());
        assert!(FlipParams::optimal().satisfies_size_hypotheses());
        let p = FlipParams::new(vec![int(1), rat(9, 10), rat(1, 6)]).unwrap();
        assert!(!p.satisfies_size_hypotheses());
    }
}
