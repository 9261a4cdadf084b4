use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{rational_to_f64, EvalFailure};
use super::univariate::cancel_common;
use super::{LaurentPoly, Monomial, Rational, RingError, Var};

/// A fraction of Laurent polynomials.
///
/// Stored normalized: numerator and denominator share no monomial factor,
/// both have nonnegative exponents, and the denominator is a primitive
/// integer polynomial with positive leading coefficient. Equality
/// (`PartialEq`) is semantic: `a == b` iff `a.num * b.den == b.num * a.den`.
#[derive(Debug, Clone)]
pub struct RingElem {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// A value for one variable in [`RingElem::evaluate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => rational_to_f64(q),
            Scalar::Float(x) => *x,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => f.write_str(&super::format_rational(q)),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

pub type Assignment = BTreeMap<Var, Scalar>;

impl RingElem {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::ZeroDenominator);
        }
        Ok(normalize(num, den))
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(c))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        normalize(p, LaurentPoly::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_poly(LaurentPoly::monomial(m))
    }

    pub fn var(v: Var, exp: i64) -> Self {
        Self::monomial(Monomial::var(v, exp))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn equals(&self, other: &RingElem) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.num.uses(*v) || self.den.uses(*v))
            .collect()
    }

    pub fn uses(&self, v: Var) -> bool {
        self.num.uses(v) || self.den.uses(v)
    }

    /// The element as a Laurent polynomial, when the denominator is a
    /// monomial.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        let (m, c) = self.den.as_term()?;
        Some(self.num.mul_monomial(&m.inv()).scale(&c.recip()))
    }

    pub fn inv(&self) -> Result<RingElem, RingError> {
        if self.is_zero() {
            return Err(RingError::InversionOfZero);
        }
        Ok(normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RingElem) -> Result<RingElem, RingError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<RingElem, RingError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs() as u32;
        Ok(normalize(base.num.pow(k), base.den.pow(k)))
    }

    pub fn scale(&self, c: &Rational) -> RingElem {
        normalize(self.num.scale(c), self.den.clone())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> RingElem {
        normalize(self.num.mul_monomial(m), self.den.clone())
    }

    /// Replaces `var` by the monomial `target`.
    pub fn substitute(&self, var: Var, target: &Monomial) -> Result<RingElem, RingError> {
        let den = self.den.substitute(var, target);
        if den.is_zero() {
            return Err(RingError::DenominatorVanishes { var });
        }
        Ok(normalize(self.num.substitute(var, target), den))
    }

    /// Applies a monomial map to numerator and denominator.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Result<RingElem, RingError> {
        let den = self.den.map_monomials(&f);
        if den.is_zero() {
            return Err(RingError::ZeroDenominator);
        }
        Ok(normalize(self.num.map_monomials(&f), den))
    }

    /// Replaces every variable by its inverse.
    pub fn invert_variables(&self) -> RingElem {
        normalize(
            self.num.map_monomials(Monomial::inv),
            self.den.map_monomials(Monomial::inv),
        )
    }

    /// Numeric evaluation: exact when every assigned value is exact.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Scalar, RingError> {
        let map_err = |e| match e {
            EvalFailure::Unassigned(v) => RingError::Unassigned(v),
            EvalFailure::Pole => RingError::PoleAtPoint,
        };
        let all_exact = assignment.values().all(|s| matches!(s, Scalar::Exact(_)));
        if all_exact {
            let mut point: [Option<Rational>; 4] = Default::default();
            for (v, s) in assignment {
                if let Scalar::Exact(q) = s {
                    point[v.index()] = Some(q.clone());
                }
            }
            let den = self.den.evaluate_exact(&point).map_err(map_err)?;
            if den.is_zero() {
                return Err(RingError::PoleAtPoint);
            }
            let num = self.num.evaluate_exact(&point).map_err(map_err)?;
            Ok(Scalar::Exact(num / den))
        } else {
            let mut point = [None; 4];
            for (v, s) in assignment {
                point[v.index()] = Some(s.to_f64());
            }
            let den = self.den.evaluate_f64(&point).map_err(map_err)?;
            if den == 0.0 {
                return Err(RingError::PoleAtPoint);
            }
            let num = self.num.evaluate_f64(&point).map_err(map_err)?;
            Ok(Scalar::Float(num / den))
        }
    }
}

fn normalize(num: LaurentPoly, den: LaurentPoly) -> RingElem {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return RingElem {
            num,
            den: LaurentPoly::one(),
        };
    }
    let (a, p) = num.split_monomial();
    let (b, q) = den.split_monomial();
    let (p, q) = cancel(p, q);
    let (up, down) = a.div(&b).split_sign();
    let (num, den) = (p.mul_monomial(&up), q.mul_monomial(&down));
    let factor = primitive_factor(&den);
    RingElem {
        num: num.scale(&factor),
        den: den.scale(&factor),
    }
}

fn cancel(p: LaurentPoly, q: LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if q.is_constant() || p.is_constant() {
        return (p, q);
    }
    if let Some(pair) = cancel_common(&p, &q) {
        return pair;
    }
    if let Some(quotient) = p.div_exact(&q) {
        return (quotient, LaurentPoly::one());
    }
    if let Some(quotient) = q.div_exact(&p) {
        return (LaurentPoly::one(), quotient);
    }
    (p, q)
}

/// The rational `f` making `f * den` a primitive integer polynomial with a
/// positive leading coefficient.
fn primitive_factor(den: &LaurentPoly) -> Rational {
    let lcm = den.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let gcd = den
        .terms()
        .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(&(c.numer() * &lcm / c.denom())));
    let mut f = Rational::new(lcm, gcd);
    if den.leading().is_some_and(|(_, c)| c.is_negative()) {
        f = -f;
    }
    f
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        if self.den == rhs.den {
            return normalize(&self.num + &rhs.num, self.den.clone());
        }
        normalize(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self + &(-rhs)
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RingElem {
            type Output = RingElem;
            fn $f(self, rhs: RingElem) -> RingElem {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

impl std::iter::Sum for RingElem {
    fn sum<I: Iterator<Item = RingElem>>(iter: I) -> RingElem {
        iter.fold(RingElem::zero(), |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{rat, rat_int};

    fn t(e: i64) -> RingElem {
        RingElem::var(Var::T, e)
    }

    fn c(k: i64) -> RingElem {
        RingElem::from_int(k)
    }

    fn frac(a: RingElem, b: RingElem) -> RingElem {
        a.div(&b).unwrap()
    }

    #[test]
    fn telescoping_sum() {
        let a = frac(&t(1) - &c(1), &t(1) + &c(1));
        let b = frac(c(2), &t(1) + &c(1));
        let s = &a + &b;
        assert_eq!(s, RingElem::one());
        assert_eq!(s.den(), &LaurentPoly::one());
    }

    #[test]
    fn monomial_inverse() {
        let x = t(2).inv().unwrap();
        assert_eq!(x, t(-2));
        assert_eq!(x.num(), &LaurentPoly::one());
        assert_eq!(x.den(), &LaurentPoly::var(Var::T, 2));
    }

    #[test]
    fn product_reduces_by_cross_multiplication() {
        let x = &(&t(2) - &c(1)) * &frac(c(1), &t(1) - &c(1));
        // cross-multiplication oracle: (t^2 - 1) * 1 == (t + 1)(t - 1)
        let lhs = &t(2) - &c(1);
        let rhs = &(&t(1) + &c(1)) * &(&t(1) - &c(1));
        assert_eq!(lhs.num(), rhs.num());
        assert!(x.equals(&(&t(1) + &c(1))));
    }

    #[test]
    fn equality_is_semantic() {
        let a = frac(&t(2) - &c(1), &t(1) - &c(1));
        assert!(a.equals(&(&t(1) + &c(1))));
        assert!(!t(1).equals(&t(-1)));
    }

    #[test]
    fn inversion_of_zero_fails() {
        assert_eq!(RingElem::zero().inv().unwrap_err(), RingError::InversionOfZero);
    }

    #[test]
    fn substitution_examples() {
        let tau = |e| Monomial::var(Var::Tau, e);
        let a = RingElem::monomial(Monomial::var(Var::T, 2).with(Var::Tau, -2)) - c(1);
        let s = a.substitute(Var::Tau, &Monomial::var(Var::T, -1)).unwrap();
        assert_eq!(s, &t(4) - &c(1));

        // ((UV)^2 - 1) tau^2 / ((UV) - tau^2), tau -> 1
        let uv = Monomial::var(Var::U, 1).with(Var::V, 1);
        let num = &(&RingElem::monomial(uv.pow(2)) - &c(1)) * &RingElem::monomial(tau(2));
        let den = &RingElem::monomial(uv) - &RingElem::monomial(tau(2));
        let z = frac(num, den);
        let s = z.substitute(Var::Tau, &Monomial::ONE).unwrap();
        assert_eq!(s, &RingElem::monomial(uv) + &c(1));
        assert_eq!(s.den(), &LaurentPoly::one());

        let pole = frac(c(1), &RingElem::monomial(tau(2)) - &t(-2));
        assert_eq!(
            pole.substitute(Var::Tau, &Monomial::var(Var::T, -1)).unwrap_err(),
            RingError::DenominatorVanishes { var: Var::Tau }
        );
    }

    #[test]
    fn evaluation() {
        let x = frac(&t(2) - &c(1), &t(1) - &c(1));
        let at2: Assignment = [(Var::T, Scalar::Exact(rat_int(2)))].into();
        assert_eq!(x.evaluate(&at2).unwrap(), Scalar::Exact(rat_int(3)));

        // -t^-3 (t^2 + t + 1) at t = 2 is -(4 + 2 + 1)/8
        let pv = -(&t(-3) * &(&(&t(2) + &t(1)) + &c(1)));
        assert_eq!(pv.evaluate(&at2).unwrap(), Scalar::Exact(rat(-7, 8)));

        let at1: Assignment = [(Var::T, Scalar::Exact(rat_int(1)))].into();
        let pole = frac(c(1), &t(1) - &c(1));
        assert_eq!(pole.evaluate(&at1).unwrap_err(), RingError::PoleAtPoint);

        let float: Assignment = [(Var::T, Scalar::Float(2.0))].into();
        match pv.evaluate(&float).unwrap() {
            Scalar::Float(v) => assert!((v + 0.875).abs() < 1e-12),
            other => panic!("expected float, got {other:?}"),
        }
        assert_eq!(
            pv.evaluate(&Assignment::new()).unwrap_err(),
            RingError::Unassigned(Var::T)
        );
    }

    #[test]
    fn denominator_is_primitive_with_positive_lead() {
        let x = frac(c(3), &t(1).scale(&rat(-2, 3)) + &c(4));
        let lead = x.den().leading().unwrap().1.clone();
        assert!(lead.is_positive());
        assert!(x.den().terms().all(|(_, c)| c.denom().is_one()));
        assert_eq!(x, frac(c(9), &t(1).scale(&rat_int(-2)) + &c(12)));
    }

    #[test]
    fn invert_variables_is_involutive() {
        let x = frac(&t(3) + &c(2), &t(1) - &c(5));
        assert_eq!(x.invert_variables().invert_variables(), x);
        assert_eq!(t(2).invert_variables(), t(-2));
    }
}
