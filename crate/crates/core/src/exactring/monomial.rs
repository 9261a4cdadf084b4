use std::fmt;

pub const NVARS: usize = 4;

/// The four ring variables, in their fixed monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// `t^m = L`
    T,
    /// `tau^m = T = L^-s`
    Tau,
    /// `U^m = u`
    U,
    /// `V^m = v`
    V,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::T, Var::Tau, Var::U, Var::V];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::Tau => "tau",
            Var::U => "U",
            Var::V => "V",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exponent vector with (possibly negative) integer entries.
///
/// The derived `Ord` is lexicographic with `t` most significant; this is the
/// monomial order used everywhere in the crate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [i64; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, exp: i64) -> Self {
        Monomial::ONE.with(v, exp)
    }

    pub fn get(&self, v: Var) -> i64 {
        self.0[v.index()]
    }

    pub fn with(mut self, v: Var, exp: i64) -> Self {
        self.0[v.index()] = exp;
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0) {
            *o += e;
        }
        out
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.map(|e| -e))
    }

    pub fn pow(&self, k: i64) -> Monomial {
        Monomial(self.0.map(|e| e * k))
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0) {
            *o = (*o).min(e);
        }
        out
    }

    /// True when `other / self` has no negative exponent.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(&a, b)| a <= b)
    }

    /// Splits into the parts with positive and negative exponents, both
    /// returned with nonnegative exponents.
    pub fn split_sign(&self) -> (Monomial, Monomial) {
        (
            Monomial(self.0.map(|e| e.max(0))),
            Monomial(self.0.map(|e| (-e).max(0))),
        )
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        Var::ALL.into_iter().filter(|v| self.get(*v) != 0)
    }
}
