//! Big rationals and their string forms.
//!
//! `num::BigRational` already keeps values normalised (positive denominator,
//! lowest terms, zero as `0/1`), so it is used directly.

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num::BigRational;

/// Shorthand for small literal rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"num/den"` rendering; the denominator is always present.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Nearest-double conversion.
pub fn rational_to_f64(q: &Rational) -> f64 {
    num::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn rational_pow(q: &Rational, n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * q)
}

pub(crate) fn is_strictly_between_zero_and_one(q: &Rational) -> bool {
    q.is_positive() && *q < Rational::one()
}
