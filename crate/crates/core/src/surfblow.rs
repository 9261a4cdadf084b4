//! Point blow-ups of surface configurations.
//!
//! Blowing up a point `P` of a smooth surface produces an exceptional curve
//! `E ≅ P^1` whose `alpha` is `2 + Σ m_i (alpha_i - 1)` over the components
//! through `P` (with multiplicities `m_i`). On normal-crossings data there are
//! three kinds of centers:
//!
//! | center            | new alpha       | new open stratum | other changes                          |
//! |-------------------|-----------------|------------------|----------------------------------------|
//! | free point        | `2`             | `L + 1`          | `[E_∅°] -= 1`                          |
//! | point on `C_i`    | `alpha_i + 1`   | `L`              | `[E_i°] -= 1`, one point `C_i ∩ E`     |
//! | point `C_i ∩ C_j` | `alpha_i+alpha_j` | `L - 1`        | `#(C_i ∩ C_j) -= 1`, points on `C_i ∩ E`, `C_j ∩ E` |

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactring::{rat_int, Rational};
use crate::stratconfig::{
    format_subset, subset, ComponentData, ComponentId, MotClass, Multiplicity, Realization, StratifiedConfig, Subset,
};
use crate::zetapv::{log_poles, pv, PvValue, ZetaError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BlowupCenter {
    Free,
    OnCurve(ComponentId),
    AtDoublePoint(ComponentId, ComponentId),
}

impl fmt::Display for BlowupCenter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowupCenter::Free => f.write_str("free"),
            BlowupCenter::OnCurve(id) => write!(f, "curve:{id}"),
            BlowupCenter::AtDoublePoint(a, b) => write!(f, "point:{a},{b}"),
        }
    }
}

impl FromStr for BlowupCenter {
    type Err = BlowupError;

    /// `free`, `curve:<id>` or `point:<id>,<id>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BlowupError::InvalidCenter(format!("cannot parse center {s:?}"));
        let s = s.trim();
        if s == "free" {
            return Ok(BlowupCenter::Free);
        }
        if let Some(id) = s.strip_prefix("curve:") {
            if id.is_empty() {
                return Err(bad());
            }
            return Ok(BlowupCenter::OnCurve(id.to_string()));
        }
        if let Some(pair) = s.strip_prefix("point:") {
            let (a, b) = pair.split_once(',').ok_or_else(bad)?;
            if a.is_empty() || b.is_empty() {
                return Err(bad());
            }
            return Ok(BlowupCenter::AtDoublePoint(a.trim().to_string(), b.trim().to_string()));
        }
        Err(bad())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("invalid center: {0}")]
    InvalidCenter(String),
    #[error("no double point left on {0} ∩ {1}")]
    ExhaustedDoublePoint(ComponentId, ComponentId),
    #[error("not a surface configuration: {0}")]
    NotSurface(String),
}

/// A dimension-2 configuration. Strata of size 2 are finite sets of points,
/// so their classes are nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceConfig {
    pub config: StratifiedConfig,
    /// Named blow-up centers.
    pub points: BTreeMap<String, BlowupCenter>,
}

impl SurfaceConfig {
    pub fn new(config: StratifiedConfig) -> Result<Self, BlowupError> {
        let s = SurfaceConfig {
            config,
            points: BTreeMap::new(),
        };
        let problems = s.check();
        if problems.is_empty() {
            Ok(s)
        } else {
            Err(BlowupError::NotSurface(problems.join("; ")))
        }
    }

    /// Surface-specific invariants.
    pub fn check(&self) -> Vec<String> {
        let mut problems = Vec::new();
        if self.config.n != 2 {
            problems.push(format!("dimension is {}, expected 2", self.config.n));
        }
        for (key, class) in &self.config.open_strata {
            if key.len() >= 3 {
                problems.push(format!("triple stratum {}", format_subset(key)));
            }
            if key.len() == 2 && point_count(class).is_none() {
                problems.push(format!(
                    "double point stratum {} is not a nonnegative integer",
                    format_subset(key)
                ));
            }
        }
        problems
    }

    /// Number of intersection points of `a` and `b`.
    pub fn double_points(&self, a: &str, b: &str) -> i64 {
        self.config.class(&subset(&[a, b])).and_then(point_count).unwrap_or(0)
    }

    /// Resolves a center string, accepting the names in `points`.
    pub fn center(&self, spec: &str) -> Result<BlowupCenter, BlowupError> {
        match self.points.get(spec) {
            Some(c) => Ok(c.clone()),
            None => spec.parse(),
        }
    }

    /// A component id `prefix<k>` not used yet.
    pub fn fresh_id(&self, prefix: &str) -> ComponentId {
        (1..)
            .map(|k| format!("{prefix}{k}"))
            .find(|id| self.config.component(id).is_none())
            .expect("unbounded")
    }
}

/// The integer class of a finite point set, if it is one.
fn point_count(class: &MotClass) -> Option<i64> {
    let mut value = None;
    for p in [&class.lpoly, &class.hodge].into_iter().flatten() {
        let c = p.as_constant()?;
        if !c.is_integer() || c < Rational::zero() {
            return None;
        }
        let k = i64::try_from(c.to_integer()).ok()?;
        if value.is_some_and(|v| v != k) {
            return None;
        }
        value = Some(k);
    }
    value
}

/// `alpha` of the exceptional divisor of blowing up a codimension-`codim`
/// center lying on the given branches `(alpha_i, m_i)`.
pub fn exceptional_alpha(codim: u32, branches: &[(Rational, u32)]) -> Rational {
    branches.iter().fold(rat_int(codim as i64), |acc, (alpha, mult)| {
        acc + rat_int(*mult as i64) * (alpha - Rational::one())
    })
}

fn class_l(c: &StratifiedConfig, coeffs: &[i64]) -> MotClass {
    MotClass::from_l_coeffs(c.m, coeffs)
}

/// Keeps only the realizations the configuration already uses.
fn restricted_to(class: MotClass, c: &StratifiedConfig) -> MotClass {
    MotClass {
        lpoly: class.lpoly.filter(|_| c.has_realization(Realization::Motivic)),
        hodge: class.hodge.filter(|_| c.has_realization(Realization::Hodge)),
    }
}

pub fn blowup(s: &SurfaceConfig, center: &BlowupCenter, new_id: &str) -> Result<SurfaceConfig, BlowupError> {
    let c = &s.config;
    if c.component(new_id).is_some() {
        return Err(BlowupError::InvalidCenter(format!("component {new_id} already exists")));
    }
    let lookup = |id: &str| {
        c.component(id)
            .ok_or_else(|| BlowupError::InvalidCenter(format!("unknown component {id}")))
    };
    let through: Vec<&ComponentData> = match center {
        BlowupCenter::Free => Vec::new(),
        BlowupCenter::OnCurve(i) => vec![lookup(i)?],
        BlowupCenter::AtDoublePoint(i, j) => {
            if i == j {
                return Err(BlowupError::InvalidCenter(format!("{i} does not meet itself")));
            }
            let pair = vec![lookup(i)?, lookup(j)?];
            if s.double_points(i, j) < 1 {
                return Err(BlowupError::ExhaustedDoublePoint(i.clone(), j.clone()));
            }
            pair
        }
    };

    // K_{Y|X} has multiplicity 1 along E; each smooth branch through the
    // center contributes its own multiplicity once.
    let all_resolution = !c.components.is_empty() && c.components.iter().all(|x| x.mult.is_resolution());
    let mult = if all_resolution {
        let (nu, big_n) = through.iter().fold((rat_int(2), Rational::zero()), |(nu, n), comp| {
            let (cnu, cn) = comp.mult.nu_n();
            (nu + cnu - Rational::one(), n + cn)
        });
        Multiplicity::Resolution { nu, big_n }
    } else {
        let branches: Vec<(Rational, u32)> = through.iter().map(|x| (x.mult.alpha(), 1)).collect();
        Multiplicity::Alpha(exceptional_alpha(2, &branches))
    };

    let mut out = c.clone();
    out.components.push(ComponentData {
        id: new_id.to_string(),
        mult,
    });
    let one = restricted_to(class_l(c, &[1]), c);
    let minus_one = one.scale(&rat_int(-1));
    match center {
        BlowupCenter::Free => {
            out.add_to_stratum(Subset::new(), &minus_one);
            out.add_to_stratum(subset(&[new_id]), &restricted_to(class_l(c, &[1, 1]), c));
        }
        BlowupCenter::OnCurve(i) => {
            out.add_to_stratum(subset(&[i.as_str()]), &minus_one);
            out.add_to_stratum(subset(&[new_id]), &restricted_to(class_l(c, &[0, 1]), c));
            out.add_to_stratum(subset(&[i.as_str(), new_id]), &one);
        }
        BlowupCenter::AtDoublePoint(i, j) => {
            out.add_to_stratum(subset(&[i.as_str(), j.as_str()]), &minus_one);
            out.add_to_stratum(subset(&[new_id]), &restricted_to(class_l(c, &[-1, 1]), c));
            out.add_to_stratum(subset(&[i.as_str(), new_id]), &one);
            out.add_to_stratum(subset(&[j.as_str(), new_id]), &one);
        }
    }
    let mut points = s.points.clone();
    points.retain(|_, p| p != center);
    Ok(SurfaceConfig { config: out, points })
}

/// PV of one side, or the components that make it undefined.
#[derive(Debug, Clone)]
pub enum PvStatus {
    Defined(PvValue),
    NotDefined(Vec<ComponentId>),
    Error(ZetaError),
}

impl PvStatus {
    pub fn of(c: &StratifiedConfig, r: Realization) -> PvStatus {
        let poles = log_poles(c);
        if !poles.is_empty() {
            return PvStatus::NotDefined(poles);
        }
        match pv(c, r, true) {
            Ok(v) => PvStatus::Defined(v),
            Err(e) => PvStatus::Error(e),
        }
    }

    pub fn value(&self) -> Option<&PvValue> {
        match self {
            PvStatus::Defined(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for PvStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PvStatus::Defined(v) => f.write_str(&v.render(crate::exactring::Style::Pretty)),
            PvStatus::NotDefined(ids) => write!(f, "PV not defined: {}", ids.join(", ")),
            PvStatus::Error(e) => write!(f, "error: {e}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub before: PvStatus,
    pub after: PvStatus,
    /// `Some` only when both sides are defined.
    pub equal: Option<bool>,
}

impl fmt::Display for InvarianceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "before: {}", self.before)?;
        writeln!(f, "after: {}", self.after)?;
        match self.equal {
            Some(true) => write!(f, "invariant: equal"),
            Some(false) => write!(f, "invariant: DIFFERENT"),
            None => write!(f, "invariant: not comparable"),
        }
    }
}

pub fn invariance_report(before: &SurfaceConfig, after: &SurfaceConfig, r: Realization) -> InvarianceReport {
    let b = PvStatus::of(&before.config, r);
    let a = PvStatus::of(&after.config, r);
    let equal = match (b.value(), a.value()) {
        (Some(x), Some(y)) => Some(x.expr.equals(&y.expr)),
        _ => None,
    };
    InvarianceReport {
        before: b,
        after: a,
        equal,
    }
}
