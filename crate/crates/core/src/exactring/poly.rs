use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rat_int, rat_pow, Monomial, Rational, Var};

/// Sparse Laurent polynomial with exact rational coefficients.
///
/// No zero coefficient is ever stored, so the zero polynomial is the empty
/// map and structural equality is polynomial equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat_int(c))
    }

    pub fn term(c: Rational, mono: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(mono, c);
        p
    }

    pub fn monomial(mono: Monomial) -> Self {
        Self::term(Rational::one(), mono)
    }

    pub fn var(v: Var, exp: i64) -> Self {
        Self::monomial(Monomial::var(v, exp))
    }

    /// `mono - 1`, the shape of every denominator factor in the zeta sums.
    pub fn monomial_minus_one(mono: Monomial) -> Self {
        Self::monomial(mono) - Self::one()
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.coefficient(&Monomial::ONE))
        } else {
            None
        }
    }

    /// The single term, if there is exactly one.
    pub fn as_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.get(v) != 0)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|v| self.uses(*v)).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Applies a monomial map; terms that collide are combined.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Replaces `var` by the monomial `target`.
    pub fn substitute(&self, var: Var, target: &Monomial) -> Self {
        self.map_monomials(|m| m.with(var, 0).mul(&target.pow(m.get(var))))
    }

    /// Componentwise minimum exponent over all terms (`ONE` for zero).
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(*first, |acc, m| acc.meet(m)),
        }
    }

    /// Writes `self = x^a * p` with `p` free of monomial factors.
    pub fn split_monomial(&self) -> (Monomial, LaurentPoly) {
        let a = self.min_exponents();
        (a, self.mul_monomial(&a.inv()))
    }

    /// Exact division in the Laurent ring, `None` when `divisor` does not
    /// divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a, p) = self.split_monomial();
        let (b, q) = divisor.split_monomial();
        let quotient = poly_div_exact(&p, &q)?;
        Some(quotient.mul_monomial(&a.div(&b)))
    }

    pub fn evaluate_exact(&self, point: &[Option<Rational>; 4]) -> Result<Rational, EvalFailure> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in m.vars() {
                let x = point[v.index()].as_ref().ok_or(EvalFailure::Unassigned(v))?;
                term *= rat_pow(x, m.get(v)).ok_or(EvalFailure::Pole)?;
            }
            total += term;
        }
        Ok(total)
    }

    pub fn evaluate_f64(&self, point: &[Option<f64>; 4]) -> Result<f64, EvalFailure> {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut term = rational_to_f64(c);
            for v in m.vars() {
                let x = point[v.index()].ok_or(EvalFailure::Unassigned(v))?;
                let e = m.get(v);
                if x == 0.0 && e < 0 {
                    return Err(EvalFailure::Pole);
                }
                term *= x.powi(e as i32);
            }
            total += term;
        }
        Ok(total)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalFailure {
    Unassigned(Var),
    Pole,
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Division with remainder in the polynomial ring under lex order; both
/// arguments must have nonnegative exponents.
fn poly_div_exact(p: &LaurentPoly, q: &LaurentPoly) -> Option<LaurentPoly> {
    let (lq_mono, lq_coef) = q.leading()?;
    let (lq_mono, lq_coef) = (*lq_mono, lq_coef.clone());
    let mut rem = p.clone();
    let mut quotient = LaurentPoly::zero();
    while let Some((lr_mono, lr_coef)) = rem.leading() {
        if !lq_mono.divides(lr_mono) {
            return None;
        }
        let mono = lr_mono.div(&lq_mono);
        let coef = lr_coef / &lq_coef;
        rem = &rem - &q.mul_monomial(&mono).scale(&coef);
        quotient.add_term(mono, coef);
    }
    Some(quotient)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;

    fn t(e: i64) -> LaurentPoly {
        LaurentPoly::var(Var::T, e)
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = &t(1) - &t(1);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn exact_division_handles_negative_exponents() {
        // (t^2 - 1) t^-3 / (t - 1) = (t + 1) t^-3
        let num = (&t(2) - &LaurentPoly::one()).mul_monomial(&Monomial::var(Var::T, -3));
        let den = &t(1) - &LaurentPoly::one();
        let q = num.div_exact(&den).unwrap();
        assert_eq!(
            q,
            (&t(1) + &LaurentPoly::one()).mul_monomial(&Monomial::var(Var::T, -3))
        );
    }

    #[test]
    fn exact_division_reports_failure() {
        let num = &t(2) + &LaurentPoly::one();
        let den = &t(1) - &LaurentPoly::one();
        assert!(num.div_exact(&den).is_none());
    }

    #[test]
    fn multivariate_division() {
        let a = &LaurentPoly::var(Var::U, 1) + &LaurentPoly::var(Var::V, 2);
        let b = &LaurentPoly::var(Var::Tau, 1) - &LaurentPoly::from_int(3);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b));
    }

    #[test]
    fn substitution_combines_terms() {
        // t^2 tau^-2 - 1 with tau -> t^-1 gives t^4 - 1
        let p = &LaurentPoly::monomial(Monomial::var(Var::T, 2).with(Var::Tau, -2)) - &LaurentPoly::one();
        let s = p.substitute(Var::Tau, &Monomial::var(Var::T, -1));
        assert_eq!(s, &t(4) - &LaurentPoly::one());
    }

    #[test]
    fn exact_evaluation() {
        let p = &t(-2) + &LaurentPoly::constant(rat(1, 2));
        let v = p.evaluate_exact(&[Some(rat(2, 1)), None, None, None]).unwrap();
        assert_eq!(v, rat(3, 4));
        assert_eq!(
            p.evaluate_exact(&[Some(rat(0, 1)), None, None, None]),
            Err(EvalFailure::Pole)
        );
        assert_eq!(
            p.evaluate_exact(&[None, None, None, None]),
            Err(EvalFailure::Unassigned(Var::T))
        );
    }
}
