//! Stratified normal-crossings configurations.
//!
//! A configuration lists the components `E_i` of a normal-crossings divisor
//! with their multiplicity data and the classes of the open strata
//! `E_I° = (∩_{i∈I} E_i) \ (∪_{l∉I} E_l)`. Nothing here checks that the data
//! comes from an actual variety; the formulas only consume the combinatorics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::exactring::{format_rational, rat_int, scaled, LaurentPoly, Monomial, Rational, Var};

pub type ComponentId = String;

/// A set of component ids indexing a stratum.
pub type Subset = BTreeSet<ComponentId>;

pub fn subset<S: AsRef<str>>(ids: &[S]) -> Subset {
    ids.iter().map(|s| s.as_ref().to_string()).collect()
}

pub fn format_subset(s: &Subset) -> String {
    format!("{{{}}}", s.iter().cloned().collect::<Vec<_>>().join(","))
}

/// Which homomorphic image of the Grothendieck ring a computation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Realization {
    /// Laurent polynomials in `t = L^(1/m)`.
    Motivic,
    /// Hodge polynomials in `U = u^(1/m)`, `V = v^(1/m)`.
    Hodge,
}

impl Realization {
    /// The monomial standing for `L^(1/m)`: `t`, or `UV` for Hodge.
    pub fn step(self) -> Monomial {
        match self {
            Realization::Motivic => Monomial::var(Var::T, 1),
            Realization::Hodge => Monomial::var(Var::U, 1).with(Var::V, 1),
        }
    }

    /// `L^(k/m)` (resp. `(uv)^(k/m)`) for an m-scaled exponent `k`.
    pub fn power(self, k: i64) -> Monomial {
        self.step().pow(k)
    }

    pub fn name(self) -> &'static str {
        match self {
            Realization::Motivic => "motivic",
            Realization::Hodge => "hodge",
        }
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `t^k -> (UV)^k`.
pub fn l_to_hodge(p: &LaurentPoly) -> LaurentPoly {
    p.map_monomials(|mono| Realization::Hodge.power(mono.get(Var::T)))
}

/// `(UV)^k -> t^k`, defined when `p` depends on `U` and `V` only through
/// their product.
pub fn hodge_to_l(p: &LaurentPoly) -> Option<LaurentPoly> {
    let ok = p
        .terms()
        .all(|(mono, _)| mono.get(Var::U) == mono.get(Var::V) && mono.get(Var::T) == 0 && mono.get(Var::Tau) == 0);
    ok.then(|| p.map_monomials(|mono| Realization::Motivic.power(mono.get(Var::U))))
}

/// The class of a stratum in one or both realizations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotClass {
    pub lpoly: Option<LaurentPoly>,
    pub hodge: Option<LaurentPoly>,
}

impl MotClass {
    pub fn zero() -> Self {
        MotClass {
            lpoly: Some(LaurentPoly::zero()),
            hodge: Some(LaurentPoly::zero()),
        }
    }

    pub fn integer(k: i64) -> Self {
        Self::from_l(LaurentPoly::from_int(k))
    }

    /// A class given in `t`, with its Hodge image obtained by `L -> uv`.
    pub fn from_l(lpoly: LaurentPoly) -> Self {
        MotClass {
            hodge: Some(l_to_hodge(&lpoly)),
            lpoly: Some(lpoly),
        }
    }

    /// `c0 + c1 L + c2 L^2 + ...` under scaling `m`.
    pub fn from_l_coeffs(m: i64, coeffs: &[i64]) -> Self {
        Self::from_l(LaurentPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (Realization::Motivic.power(m * i as i64), rat_int(c))),
        ))
    }

    pub fn motivic_only(lpoly: LaurentPoly) -> Self {
        MotClass {
            lpoly: Some(lpoly),
            hodge: None,
        }
    }

    pub fn hodge_only(hodge: LaurentPoly) -> Self {
        MotClass {
            lpoly: None,
            hodge: Some(hodge),
        }
    }

    pub fn get(&self, r: Realization) -> Option<&LaurentPoly> {
        match r {
            Realization::Motivic => self.lpoly.as_ref(),
            Realization::Hodge => self.hodge.as_ref(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lpoly.iter().chain(self.hodge.iter()).all(LaurentPoly::is_zero)
    }

    fn combine(&self, other: &MotClass, f: impl Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly) -> MotClass {
        let pair = |a: &Option<LaurentPoly>, b: &Option<LaurentPoly>| match (a, b) {
            (Some(x), Some(y)) => Some(f(x, y)),
            _ => None,
        };
        MotClass {
            lpoly: pair(&self.lpoly, &other.lpoly),
            hodge: pair(&self.hodge, &other.hodge),
        }
    }

    pub fn add(&self, other: &MotClass) -> MotClass {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &MotClass) -> MotClass {
        self.combine(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &MotClass) -> MotClass {
        self.combine(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Rational) -> MotClass {
        MotClass {
            lpoly: self.lpoly.as_ref().map(|p| p.scale(c)),
            hodge: self.hodge.as_ref().map(|p| p.scale(c)),
        }
    }

    /// True when the Hodge part depends only on `uv`, i.e. when the two
    /// realizations can be compared.
    pub fn comparable(&self) -> bool {
        self.lpoly.is_some() && self.hodge.as_ref().is_some_and(|h| hodge_to_l(h).is_some())
    }

    /// `false` only when the realizations are comparable and disagree.
    pub fn realizations_consistent(&self) -> bool {
        match (&self.lpoly, self.hodge.as_ref().and_then(hodge_to_l)) {
            (Some(l), Some(h)) => *l == h,
            _ => true,
        }
    }

    pub fn render(&self, m: i64) -> String {
        let parts: Vec<String> = [
            self.lpoly.as_ref().map(|p| format!("L: {}", p.render(m))),
            self.hodge.as_ref().map(|p| format!("hodge: {}", p.render(m))),
        ]
        .into_iter()
        .flatten()
        .collect();
        parts.join(", ")
    }
}

/// Multiplicity data of one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Multiplicity {
    /// `alpha - 1` is the multiplicity in `div ω^(1/d)`.
    Alpha(Rational),
    /// `nu - 1` and `N` are the multiplicities in `K_{Y|X}` and `h^*D`.
    Resolution { nu: Rational, big_n: Rational },
}

impl Multiplicity {
    /// `alpha`, or `nu + N` for resolution data.
    pub fn alpha(&self) -> Rational {
        match self {
            Multiplicity::Alpha(a) => a.clone(),
            Multiplicity::Resolution { nu, big_n } => nu + big_n,
        }
    }

    /// `(nu, N)`; alpha data is read as `nu = 1`, `N = alpha - 1`, the
    /// exponents `1 + (alpha - 1)s` of the zeta function of `div ω^(1/d)`.
    pub fn nu_n(&self) -> (Rational, Rational) {
        match self {
            Multiplicity::Alpha(a) => (Rational::one(), a - Rational::one()),
            Multiplicity::Resolution { nu, big_n } => (nu.clone(), big_n.clone()),
        }
    }

    pub fn is_resolution(&self) -> bool {
        matches!(self, Multiplicity::Resolution { .. })
    }

    fn values(&self) -> Vec<&Rational> {
        match self {
            Multiplicity::Alpha(a) => vec![a],
            Multiplicity::Resolution { nu, big_n } => vec![nu, big_n],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentData {
    pub id: ComponentId,
    pub mult: Multiplicity,
}

impl ComponentData {
    pub fn alpha(id: &str, alpha: Rational) -> Self {
        ComponentData {
            id: id.to_string(),
            mult: Multiplicity::Alpha(alpha),
        }
    }

    pub fn resolution(id: &str, nu: Rational, big_n: Rational) -> Self {
        ComponentData {
            id: id.to_string(),
            mult: Multiplicity::Resolution { nu, big_n },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedConfig {
    /// Dimension of the ambient variety.
    pub n: usize,
    /// Scaling integer: every exponent is stored multiplied by `m`.
    pub m: i64,
    pub components: Vec<ComponentData>,
    /// Classes of the nonempty open strata; absent subsets are empty.
    pub open_strata: BTreeMap<Subset, MotClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StratError {
    #[error("unknown stratum {}", format_subset(.0))]
    UnknownStratum(Subset),
    #[error("unknown component {0}")]
    UnknownComponent(ComponentId),
}

impl StratifiedConfig {
    pub fn new(n: usize, m: i64) -> Self {
        StratifiedConfig {
            n,
            m,
            components: Vec::new(),
            open_strata: BTreeMap::new(),
        }
    }

    pub fn with_component(mut self, c: ComponentData) -> Self {
        self.components.push(c);
        self
    }

    /// Adds `class` to the stratum `ids`, dropping it if the sum is zero.
    pub fn add_stratum<S: AsRef<str>>(mut self, ids: &[S], class: MotClass) -> Self {
        self.add_to_stratum(subset(ids), &class);
        self
    }

    pub fn add_to_stratum(&mut self, key: Subset, class: &MotClass) {
        let sum = match self.open_strata.get(&key) {
            Some(old) => old.add(class),
            None => class.clone(),
        };
        if sum.is_zero() {
            self.open_strata.remove(&key);
        } else {
            self.open_strata.insert(key, sum);
        }
    }

    pub fn component(&self, id: &str) -> Option<&ComponentData> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn ids(&self) -> Vec<ComponentId> {
        self.components.iter().map(|c| c.id.clone()).collect()
    }

    pub fn alpha(&self, id: &str) -> Result<Rational, StratError> {
        self.component(id)
            .map(|c| c.mult.alpha())
            .ok_or_else(|| StratError::UnknownComponent(id.to_string()))
    }

    pub fn class(&self, key: &Subset) -> Option<&MotClass> {
        self.open_strata.get(key)
    }

    /// True when every stratum carries the given realization.
    pub fn has_realization(&self, r: Realization) -> bool {
        self.open_strata.values().all(|c| c.get(r).is_some())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.n == 0 {
            violations.push(Violation::NonPositiveDimension);
        }
        if self.m <= 0 {
            violations.push(Violation::NonPositiveScaling(self.m));
        }
        let mut seen = BTreeSet::new();
        for c in &self.components {
            if !seen.insert(c.id.clone()) {
                violations.push(Violation::DuplicateComponent(c.id.clone()));
            }
            if self.m > 0 {
                for v in c.mult.values() {
                    if scaled(v, self.m).is_none() {
                        violations.push(Violation::ScalingMismatch {
                            id: c.id.clone(),
                            value: v.clone(),
                        });
                    }
                }
            }
            if let Multiplicity::Resolution { nu, .. } = &c.mult {
                if *nu < Rational::one() {
                    violations.push(Violation::NuBelowOne(c.id.clone()));
                }
            }
        }
        for (key, class) in &self.open_strata {
            for id in key {
                if !seen.contains(id) {
                    violations.push(Violation::UnknownComponent {
                        subset: key.clone(),
                        id: id.clone(),
                    });
                }
            }
            if key.len() > self.n {
                violations.push(Violation::StratumDimensionNegative(key.clone()));
            }
            if class.lpoly.is_none() && class.hodge.is_none() {
                violations.push(Violation::EmptyClass(key.clone()));
            } else if class.is_zero() {
                violations.push(Violation::ZeroClass(key.clone()));
            }
            if self.m > 0 {
                check_class_shape(key, class, self.m, &mut violations);
            }
            if !class.realizations_consistent() {
                violations.push(Violation::InconsistentRealizations(key.clone()));
            }
        }
        ValidationReport { violations }
    }

    /// `[Y] = Σ_I [E_I°]`, in every realization carried by all strata.
    pub fn total_class(&self) -> MotClass {
        self.open_strata.values().fold(MotClass::zero(), |acc, c| acc.add(c))
    }

    /// Closed strata `[E_I] = Σ_{J ⊇ I} [E_J°]`.
    pub fn closed_from_open(&self) -> BTreeMap<Subset, MotClass> {
        let mut closed: BTreeMap<Subset, MotClass> = BTreeMap::new();
        for (key, class) in &self.open_strata {
            for sub in subsets_of(key) {
                let entry = closed.entry(sub).or_insert_with(MotClass::zero);
                *entry = entry.add(class);
            }
        }
        closed
    }

    /// Replaces the strata classes by those of `E_I° ∩ h^{-1}W`.
    ///
    /// Keys of `w` must be strata of `self` unless their class is zero.
    pub fn restrict(&self, w: &BTreeMap<Subset, MotClass>) -> Result<StratifiedConfig, StratError> {
        let mut open_strata = BTreeMap::new();
        for (key, class) in w {
            if class.is_zero() {
                continue;
            }
            if !self.open_strata.contains_key(key) {
                return Err(StratError::UnknownStratum(key.clone()));
            }
            open_strata.insert(key.clone(), class.clone());
        }
        Ok(StratifiedConfig {
            open_strata,
            ..self.clone()
        })
    }
}

fn check_class_shape(key: &Subset, class: &MotClass, m: i64, out: &mut Vec<Violation>) {
    let mut bad = |r: Realization, reason: &str| {
        out.push(Violation::ClassShape {
            subset: key.clone(),
            realization: r,
            reason: reason.to_string(),
        })
    };
    if let Some(p) = &class.lpoly {
        if p.terms().any(|(mono, _)| mono.vars().any(|v| v != Var::T)) {
            bad(Realization::Motivic, "uses a variable other than L");
        } else if p.terms().any(|(mono, _)| mono.get(Var::T) % m != 0) {
            bad(Realization::Motivic, "fractional power of L");
        }
    }
    if let Some(p) = &class.hodge {
        if p.terms()
            .any(|(mono, _)| mono.vars().any(|v| v != Var::U && v != Var::V))
        {
            bad(Realization::Hodge, "uses a variable other than u, v");
        } else if p
            .terms()
            .any(|(mono, _)| mono.get(Var::U) % m != 0 || mono.get(Var::V) % m != 0)
        {
            bad(Realization::Hodge, "fractional power of u or v");
        }
    }
}

/// All subsets of `s`, including `∅` and `s`.
pub fn subsets_of(s: &Subset) -> Vec<Subset> {
    let items: Vec<&ComponentId> = s.iter().collect();
    (0u64..(1 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, id)| (*id).clone())
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonPositiveDimension,
    NonPositiveScaling(i64),
    DuplicateComponent(ComponentId),
    UnknownComponent {
        subset: Subset,
        id: ComponentId,
    },
    StratumDimensionNegative(Subset),
    EmptyClass(Subset),
    ZeroClass(Subset),
    ScalingMismatch {
        id: ComponentId,
        value: Rational,
    },
    NuBelowOne(ComponentId),
    ClassShape {
        subset: Subset,
        realization: Realization,
        reason: String,
    },
    InconsistentRealizations(Subset),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositiveDimension => write!(f, "dimension must be positive"),
            Violation::NonPositiveScaling(m) => write!(f, "scaling integer {m} must be positive"),
            Violation::DuplicateComponent(id) => write!(f, "duplicate component {id}"),
            Violation::UnknownComponent { subset, id } => {
                write!(f, "stratum {} names unknown component {id}", format_subset(subset))
            }
            Violation::StratumDimensionNegative(s) => {
                write!(f, "stratum dimension negative: {}", format_subset(s))
            }
            Violation::EmptyClass(s) => write!(f, "stratum {} has no realization", format_subset(s)),
            Violation::ZeroClass(s) => write!(f, "stratum {} stored with class 0", format_subset(s)),
            Violation::ScalingMismatch { id, value } => write!(
                f,
                "scaling mismatch: {} on {id} is not a multiple of 1/m",
                format_rational(value)
            ),
            Violation::NuBelowOne(id) => write!(f, "nu of {id} is below 1"),
            Violation::ClassShape {
                subset,
                realization,
                reason,
            } => write!(f, "{realization} class of {} {reason}", format_subset(subset)),
            Violation::InconsistentRealizations(s) => {
                write!(f, "realizations of {} disagree under uv -> L", format_subset(s))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&lines.join("\n"))
    }
}

/// A closed stratum `E_I` with its dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedStratum {
    pub class: MotClass,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedStrataInput {
    pub n: usize,
    pub m: i64,
    pub closed: BTreeMap<Subset, ClosedStratum>,
}

impl ClosedStrataInput {
    /// Closed strata of `c`, with the normal-crossings dimension `n - |I|`.
    pub fn from_config(c: &StratifiedConfig) -> Self {
        ClosedStrataInput {
            n: c.n,
            m: c.m,
            closed: c
                .closed_from_open()
                .into_iter()
                .filter(|(_, class)| !class.is_zero())
                .map(|(k, class)| {
                    let dim = c.n.saturating_sub(k.len());
                    (k, ClosedStratum { class, dim })
                })
                .collect(),
        }
    }

    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        match self.closed.get(&Subset::new()) {
            Some(s) if s.dim != self.n => {
                problems.push(format!("dim of the ambient stratum is {}, expected {}", s.dim, self.n))
            }
            None => problems.push("ambient stratum missing".to_string()),
            _ => {}
        }
        for (key, stratum) in &self.closed {
            for sub in subsets_of(key) {
                match self.closed.get(&sub) {
                    Some(parent) if parent.dim < stratum.dim => problems.push(format!(
                        "dim {} of {} exceeds dim {} of {}",
                        stratum.dim,
                        format_subset(key),
                        parent.dim,
                        format_subset(&sub)
                    )),
                    None if !stratum.class.is_zero() => problems.push(format!(
                        "{} is present but {} is not",
                        format_subset(key),
                        format_subset(&sub)
                    )),
                    _ => {}
                }
            }
        }
        problems
    }

    /// Möbius inversion `[E_I°] = Σ_{J ⊇ I} (-1)^{|J \ I|} [E_J]`.
    pub fn open_from_closed(&self) -> BTreeMap<Subset, MotClass> {
        let mut open = BTreeMap::new();
        for key in self.closed.keys() {
            let mut class = MotClass::zero();
            for (other, stratum) in &self.closed {
                if key.is_subset(other) {
                    let sign = if (other.len() - key.len()) % 2 == 0 { 1 } else { -1 };
                    class = class.add(&stratum.class.scale(&rat_int(sign)));
                }
            }
            if !class.is_zero() {
                open.insert(key.clone(), class);
            }
        }
        open
    }

    pub fn total_class(&self) -> MotClass {
        self.closed
            .get(&Subset::new())
            .map(|s| s.class.clone())
            .unwrap_or_else(MotClass::zero)
    }
}
