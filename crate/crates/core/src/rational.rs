//! Exact rational helpers.
//!
//! Every analysis path in the crate works over [`Rational`], an
//! arbitrary-precision reduced fraction. Text I/O always uses the
//! `num/den` form, including for integers (`1/1`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `num/den` as a reduced rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `num/den`, a bare integer, or a signed variant of either.
pub fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("bad numerator in {text:?}"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("bad denominator in {text:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(Rational::new(num, den))
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of the denominators, as a machine integer.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Result<i64> {
    let mut lcm = BigInt::one();
    for v in values {
        lcm = lcm.lcm(v.denom());
    }
    lcm.to_i64()
        .ok_or_else(|| Error::InvalidParams(format!("common denominator {lcm} exceeds 64 bits")))
}

/// `value * scale` as an `i64`, when that product is integral.
pub fn scaled_integer(value: &Rational, scale: i64) -> Option<i64> {
    let scaled = value * BigInt::from(scale);
    if scaled.is_integer() {
        scaled.to_integer().to_i64()
    } else {
        None
    }
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

pub fn is_zero(value: &Rational) -> bool {
    value.is_zero()
}
