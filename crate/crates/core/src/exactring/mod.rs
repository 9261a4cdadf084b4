//! Exact arithmetic for Laurent polynomials and their fractions over the
//! fixed variable set `t < tau < U < V`.
//!
//! Fractional powers are handled by a per-computation scaling integer `m`:
//! `t^m = L`, `tau^m = T` (with `T = L^-s`), `U^m = u` and `V^m = v`. All
//! exponents stored here are therefore plain integers.

mod elem;
mod monomial;
mod poly;
mod render;
mod univariate;

pub use elem::{Assignment, RingElem, Scalar};
pub use monomial::{Monomial, Var, NVARS};
pub use poly::LaurentPoly;
pub use render::{MachineElem, MachineTerm, Style};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational coefficient.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator vanishes after substituting {var}")]
    DenominatorVanishes { var: Var },
    #[error("pole at evaluation point")]
    PoleAtPoint,
    #[error("no value assigned to variable {0}")]
    Unassigned(Var),
    #[error("malformed machine term list: {0}")]
    Machine(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-1/2"` or `"−1/2"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let cleaned: String = text
        .trim()
        .chars()
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .filter(|c| !c.is_whitespace())
        .collect();
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n, d),
        None => (cleaned.as_str(), "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `q * m` as an integer, if it is one.
pub fn scaled(q: &Rational, m: i64) -> Option<i64> {
    let s = q * rat_int(m);
    if s.denom().is_one() {
        i64::try_from(s.numer().clone()).ok()
    } else {
        None
    }
}

/// The exact nonnegative `k`-th root of `q`, if it is rational.
pub fn exact_root(q: &Rational, k: u32) -> Option<Rational> {
    if q.is_negative() || k == 0 {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

pub(crate) fn rat_pow(base: &Rational, exp: i64) -> Option<Rational> {
    if exp >= 0 {
        Some(num_traits::pow(base.clone(), exp as usize))
    } else if base.is_zero() {
        None
    } else {
        Some(num_traits::pow(base.recip(), exp.unsigned_abs() as usize))
    }
}
