//! Exact rational scalars and small vector helpers.
//!
//! Every numeric quantity in this crate is a [`Rational`]: an
//! arbitrary-precision fraction kept in canonical form (fully reduced,
//! denominator positive). The text form is `p/q`, with `/q` omitted when the
//! denominator is one, e.g. `-3/4`, `2`, `0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Rational = num_rational::BigRational;

/// `n/d` as a canonical rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

/// Parse the `p/q` text form. Accepts an optional sign and a `/q` suffix;
/// U+2212 is tolerated as a minus sign. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    Rational::from_str(&cleaned).map_err(|_| ParseRationalError(s.to_string()))
}

/// Canonical `p/q` text form (`/q` omitted when the denominator is one).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn zeros(len: usize) -> Vec<Rational> {
    vec![Rational::zero(); len]
}

pub fn ones(len: usize) -> Vec<Rational> {
    vec![Rational::one(); len]
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    assert_eq!(u.len(), v.len(), "dot product of unequal lengths");
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn vec_sum(v: &[Rational]) -> Rational {
    v.iter().sum()
}

pub fn vec_add(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn vec_sub(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn vec_scale(c: &Rational, v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|a| c * a).collect()
}

pub fn vec_neg(v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|a| -a).collect()
}

/// Is `v` a point of the standard simplex (nonnegative, sums to one)?
pub fn is_stochastic(v: &[Rational]) -> bool {
    !v.is_empty() && v.iter().all(|c| !c.is_negative()) && vec_sum(v).is_one()
}
