//! Zeta functions and principal value integrals.
//!
//! Every quantity here is a sum over strata of the shape
//!
//! ```text
//! L^{-n} Σ_I [E_I°] Π_{i∈I} num_i / den_i
//! ```
//!
//! with per-component factors. [`strata_sum`] puts such a sum over one
//! common denominator built from the distinct `den_i`, so that the result is
//! a single exact fraction. Evaluations (`s = 1`, `T = 1`, ...) are done by
//! substituting monomials for `tau`; a vanishing denominator is a genuine
//! pole, never a removable singularity.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactring::{
    exact_root, format_rational, rat_int, scaled, Assignment, LaurentPoly, Monomial, Rational, RingElem, RingError,
    Scalar, Style, Var,
};
use crate::stratconfig::{
    format_subset, ClosedStrataInput, ComponentId, Multiplicity, Realization, StratifiedConfig, Subset,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("stratum {} has no {realization} class", format_subset(subset))]
    MissingRealization { subset: Subset, realization: Realization },
    #[error("component {0} carries no resolution data")]
    MissingResolutionData(ComponentId),
    #[error("logarithmic pole along {}", .0.join(", "))]
    LogarithmicPole(Vec<ComponentId>),
    #[error("not convergent at s = {s}: alpha + s <= 0 on {}", components.join(", "))]
    NotConvergent { s: i64, components: Vec<ComponentId> },
    #[error("inadmissible shift a = {a}: a + alpha <= 0 on {}", components.join(", "))]
    InadmissibleShift { a: String, components: Vec<ComponentId> },
    #[error("component {id} has alpha = {alpha}, not 1")]
    NotUnitComponent { id: ComponentId, alpha: String },
    #[error("unknown component {0}")]
    UnknownComponent(ComponentId),
    #[error("{what} = {value} is not a multiple of 1/{m}")]
    Scaling { what: String, value: String, m: i64 },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// `Z_X(D; s)` as a rational function in `tau` (with `tau^m = T = L^-s`)
/// over the chosen realization.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaFunction {
    pub expr: RingElem,
    pub n: usize,
    pub m: i64,
    pub realization: Realization,
}

impl ZetaFunction {
    /// Evaluation at an integer `s`, i.e. `tau -> L^(-s/m)`.
    pub fn at_s(&self, s: i64) -> Result<RingElem, RingError> {
        self.expr.substitute(Var::Tau, &self.realization.power(-s))
    }

    pub fn render(&self, style: Style) -> String {
        self.expr.render(self.m, style)
    }
}

/// A principal value integral; free of `tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct PvValue {
    pub expr: RingElem,
    pub n: usize,
    pub m: i64,
    pub realization: Realization,
    /// Whether the `L^{-n}` prefactor is included.
    pub normalized: bool,
}

impl PvValue {
    pub fn render(&self, style: Style) -> String {
        self.expr.render(self.m, style)
    }

    /// The other normalization of the same integral.
    pub fn renormalized(&self, normalized: bool) -> PvValue {
        let shift = match (self.normalized, normalized) {
            (true, false) => self.n as i64 * self.m,
            (false, true) => -(self.n as i64) * self.m,
            _ => 0,
        };
        PvValue {
            expr: self.expr.mul_monomial(&self.realization.power(shift)),
            normalized,
            ..self.clone()
        }
    }
}

/// One per-component factor `num / den` of a strata sum.
#[derive(Debug, Clone)]
struct Factor {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// `prefactor · Σ_I class_I Π_{i∈I} num_i/den_i` over a common denominator.
fn strata_sum(
    c: &StratifiedConfig,
    r: Realization,
    factors: &BTreeMap<ComponentId, Factor>,
    prefactor: Monomial,
) -> Result<RingElem, ZetaError> {
    let mut groups: Vec<LaurentPoly> = Vec::new();
    let mut group_of: BTreeMap<&str, usize> = BTreeMap::new();
    for (id, f) in factors {
        let g = match groups.iter().position(|d| *d == f.den) {
            Some(g) => g,
            None => {
                groups.push(f.den.clone());
                groups.len() - 1
            }
        };
        group_of.insert(id, g);
    }

    let mut terms = Vec::with_capacity(c.open_strata.len());
    let mut max_count = vec![0u32; groups.len()];
    for (key, class) in &c.open_strata {
        let poly = class.get(r).ok_or_else(|| ZetaError::MissingRealization {
            subset: key.clone(),
            realization: r,
        })?;
        let mut count = vec![0u32; groups.len()];
        let mut num = poly.clone();
        for id in key {
            let g = *group_of
                .get(id.as_str())
                .ok_or_else(|| ZetaError::UnknownComponent(id.clone()))?;
            count[g] += 1;
            num = &num * &factors[id].num;
        }
        for (mx, k) in max_count.iter_mut().zip(&count) {
            *mx = (*mx).max(*k);
        }
        terms.push((num, count));
    }

    let mut numerator = LaurentPoly::zero();
    for (num, count) in terms {
        let mut term = num;
        for (g, den) in groups.iter().enumerate() {
            let missing = max_count[g] - count[g];
            if missing > 0 {
                term = &term * &den.pow(missing);
            }
        }
        numerator = &numerator + &term;
    }
    let denominator = groups
        .iter()
        .zip(&max_count)
        .fold(LaurentPoly::one(), |acc, (den, &k)| &acc * &den.pow(k));
    Ok(RingElem::new(numerator.mul_monomial(&prefactor), denominator)?)
}

fn scaled_or_err(what: &str, q: &Rational, m: i64) -> Result<i64, ZetaError> {
    scaled(q, m).ok_or_else(|| ZetaError::Scaling {
        what: what.to_string(),
        value: format_rational(q),
        m,
    })
}

fn prefactor(c: &StratifiedConfig, r: Realization, normalized: bool) -> Monomial {
    if normalized {
        r.power(-(c.n as i64) * c.m)
    } else {
        Monomial::ONE
    }
}

/// `L - 1` in the realization.
fn l_minus_one(r: Realization, m: i64) -> LaurentPoly {
    LaurentPoly::monomial_minus_one(r.power(m))
}

/// Components with `alpha = 0` (`nu + N = 0` for resolution data).
pub fn log_poles(c: &StratifiedConfig) -> Vec<ComponentId> {
    c.components
        .iter()
        .filter(|comp| comp.mult.alpha().is_zero())
        .map(|comp| comp.id.clone())
        .collect()
}

fn require_no_log_poles(c: &StratifiedConfig) -> Result<(), ZetaError> {
    let poles = log_poles(c);
    if poles.is_empty() {
        Ok(())
    } else {
        Err(ZetaError::LogarithmicPole(poles))
    }
}

/// `𝒵_X(D; s) = L^{-n} Σ_I [E_I°] Π (L-1)/(L^{ν_i + sN_i} - 1)`, with
/// `L^{ν+sN}` encoded as `t^{mν} tau^{-mN}`.
///
/// Components given by `alpha` alone are read with `ν = 1`, `N = alpha - 1`.
pub fn zeta(c: &StratifiedConfig, r: Realization) -> Result<ZetaFunction, ZetaError> {
    let mut factors = BTreeMap::new();
    for comp in &c.components {
        let (nu, big_n) = comp.mult.nu_n();
        let nu = scaled_or_err("nu", &nu, c.m)?;
        let big_n = scaled_or_err("N", &big_n, c.m)?;
        factors.insert(
            comp.id.clone(),
            Factor {
                num: l_minus_one(r, c.m),
                den: LaurentPoly::monomial_minus_one(r.power(nu).with(Var::Tau, -big_n)),
            },
        );
    }
    let expr = strata_sum(c, r, &factors, prefactor(c, r, true))?;
    Ok(ZetaFunction {
        expr,
        n: c.n,
        m: c.m,
        realization: r,
    })
}

/// Like [`zeta`], but refuses components without resolution data.
pub fn zeta_strict(c: &StratifiedConfig, r: Realization) -> Result<ZetaFunction, ZetaError> {
    if let Some(comp) = c.components.iter().find(|comp| !comp.mult.is_resolution()) {
        return Err(ZetaError::MissingResolutionData(comp.id.clone()));
    }
    zeta(c, r)
}

/// `PV = L^{-n} Σ_I [E_I°] Π (L-1)/(L^{α_i} - 1)`.
pub fn pv(c: &StratifiedConfig, r: Realization, normalized: bool) -> Result<PvValue, ZetaError> {
    require_no_log_poles(c)?;
    let mut factors = BTreeMap::new();
    for comp in &c.components {
        let alpha = scaled_or_err("alpha", &comp.mult.alpha(), c.m)?;
        factors.insert(
            comp.id.clone(),
            Factor {
                num: l_minus_one(r, c.m),
                den: LaurentPoly::monomial_minus_one(r.power(alpha)),
            },
        );
    }
    let expr = strata_sum(c, r, &factors, prefactor(c, r, normalized))?;
    Ok(PvValue {
        expr,
        n: c.n,
        m: c.m,
        realization: r,
        normalized,
    })
}

/// PV of a log resolution: the zeta function evaluated at `s = 1`, checked
/// against the closed formula with `alpha = nu + N`.
pub fn pv_from_resolution(c: &StratifiedConfig, r: Realization) -> Result<PvValue, ZetaError> {
    if let Some(comp) = c.components.iter().find(|comp| !comp.mult.is_resolution()) {
        return Err(ZetaError::MissingResolutionData(comp.id.clone()));
    }
    require_no_log_poles(c)?;
    let via_zeta = zeta(c, r)?.at_s(1)?;
    let closed = pv(c, r, true)?;
    if !via_zeta.equals(&closed.expr) {
        return Err(ZetaError::Internal(
            "zeta at s = 1 differs from the alpha = nu + N formula".to_string(),
        ));
    }
    Ok(PvValue {
        expr: via_zeta,
        ..closed
    })
}

/// `Z(T) = (uv)^{-n} Σ H(E_I°) Π (uv-1)T/((uv)^{α_i} - T)` with `T = tau^m`.
pub fn hodge_z(c: &StratifiedConfig) -> Result<RingElem, ZetaError> {
    let r = Realization::Hodge;
    let big_t = Monomial::var(Var::Tau, c.m);
    let mut factors = BTreeMap::new();
    for comp in &c.components {
        let alpha = scaled_or_err("alpha", &comp.mult.alpha(), c.m)?;
        factors.insert(
            comp.id.clone(),
            Factor {
                num: l_minus_one(r, c.m).mul_monomial(&big_t),
                den: &LaurentPoly::monomial(r.power(alpha)) - &LaurentPoly::monomial(big_t),
            },
        );
    }
    strata_sum(c, r, &factors, prefactor(c, r, true))
}

/// Hodge-level PV as `Z(T)` at `T = 1`.
pub fn hodge_def1(c: &StratifiedConfig) -> Result<PvValue, ZetaError> {
    require_no_log_poles(c)?;
    let expr = hodge_z(c)?.substitute(Var::Tau, &Monomial::ONE)?;
    Ok(PvValue {
        expr,
        n: c.n,
        m: c.m,
        realization: Realization::Hodge,
        normalized: true,
    })
}

/// `Z(T)` at `T = (uv)^{-s}`.
pub fn hodge_z_at(c: &StratifiedConfig, s: i64) -> Result<RingElem, ZetaError> {
    Ok(hodge_z(c)?.substitute(Var::Tau, &Realization::Hodge.power(-s))?)
}

/// The converging Hodge-level integral
/// `I(s) = (uv)^{-n} Σ H(E_I°) Π (uv-1)(uv)^{-s}/((uv)^{α_i} - (uv)^{-s})`,
/// defined iff `alpha_i + s > 0` for every component.
pub fn converging_integral(c: &StratifiedConfig, s: i64) -> Result<RingElem, ZetaError> {
    let divergent: Vec<ComponentId> = c
        .components
        .iter()
        .filter(|comp| !(comp.mult.alpha() + rat_int(s)).is_positive())
        .map(|comp| comp.id.clone())
        .collect();
    if !divergent.is_empty() {
        return Err(ZetaError::NotConvergent {
            s,
            components: divergent,
        });
    }
    let r = Realization::Hodge;
    let t_s = r.power(-s * c.m);
    let mut factors = BTreeMap::new();
    for comp in &c.components {
        let alpha = scaled_or_err("alpha", &comp.mult.alpha(), c.m)?;
        factors.insert(
            comp.id.clone(),
            Factor {
                num: l_minus_one(r, c.m).mul_monomial(&t_s),
                den: &LaurentPoly::monomial(r.power(alpha)) - &LaurentPoly::monomial(t_s),
            },
        );
    }
    strata_sum(c, r, &factors, prefactor(c, r, true))
}

/// The shifted zeta function `(uv)^{-n} Σ H(E_I°) Π (uv-1)/((uv)^{a+α_i+sa} - 1)`
/// as a function of `tau`.
pub fn alt_zeta(c: &StratifiedConfig, a: &Rational) -> Result<RingElem, ZetaError> {
    let shift = scaled_or_err("a", a, c.m)?;
    let bad: Vec<ComponentId> = c
        .components
        .iter()
        .filter(|comp| !(a + comp.mult.alpha()).is_positive())
        .map(|comp| comp.id.clone())
        .collect();
    if !bad.is_empty() {
        return Err(ZetaError::InadmissibleShift {
            a: format_rational(a),
            components: bad,
        });
    }
    let r = Realization::Hodge;
    let mut factors = BTreeMap::new();
    for comp in &c.components {
        let alpha = scaled_or_err("alpha", &comp.mult.alpha(), c.m)?;
        factors.insert(
            comp.id.clone(),
            Factor {
                num: l_minus_one(r, c.m),
                den: LaurentPoly::monomial_minus_one(r.power(shift + alpha).with(Var::Tau, -shift)),
            },
        );
    }
    strata_sum(c, r, &factors, prefactor(c, r, true))
}

/// The shifted zeta function evaluated at `s = -1`.
pub fn alt_zeta_pv(c: &StratifiedConfig, a: &Rational) -> Result<PvValue, ZetaError> {
    require_no_log_poles(c)?;
    let r = Realization::Hodge;
    let expr = alt_zeta(c, a)?.substitute(Var::Tau, &r.step())?;
    Ok(PvValue {
        expr,
        n: c.n,
        m: c.m,
        realization: r,
        normalized: true,
    })
}

/// The involution `L^(1/m) -> L^(-1/m)` (resp. `U -> 1/U`, `V -> 1/V`).
pub fn duality_involution(x: &PvValue) -> PvValue {
    PvValue {
        expr: x.expr.invert_variables(),
        ..x.clone()
    }
}

/// Outcome of checking `𝒟(PV) = L^{-n} PV` on closed-strata data.
#[derive(Debug, Clone)]
pub struct DualityReport {
    /// PV without the `L^{-n}` prefactor.
    pub pvu: PvValue,
    pub dual: PvValue,
    /// `𝒟(PVu) = L^{-n} PVu`, equivalently `𝒟(PV) = L^{n} PV`.
    pub holds: bool,
    /// The relation read literally on the normalized value, `𝒟(PV) = L^{-n} PV`.
    pub holds_normalized_literal: bool,
    /// Per closed stratum: whether `𝒟([E_J]) = L^{-dim E_J} [E_J]`.
    pub self_dual_strata: Vec<(Subset, bool)>,
}

impl DualityReport {
    pub fn strata_self_dual(&self) -> bool {
        self.self_dual_strata.iter().all(|(_, ok)| *ok)
    }
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |b| if b { "holds" } else { "fails" };
        writeln!(f, "PVu = {}", self.pvu.render(Style::Pretty))?;
        writeln!(f, "D(PVu) = L^(-n) PVu: {}", verdict(self.holds))?;
        writeln!(
            f,
            "D(PV) = L^(-n) PV with PV normalized by L^(-n): {}",
            verdict(self.holds_normalized_literal)
        )?;
        write!(
            f,
            "closed strata self-dual: {}",
            if self.strata_self_dual() { "yes" } else { "no" }
        )
    }
}

/// Checks the functional equation on the unnormalized PV built from the
/// closed strata `cs` and the given `alpha`s.
pub fn functional_equation_check(
    cs: &ClosedStrataInput,
    alphas: &BTreeMap<ComponentId, Rational>,
    r: Realization,
) -> Result<DualityReport, ZetaError> {
    let mut c = StratifiedConfig::new(cs.n, cs.m);
    for (id, alpha) in alphas {
        c.components.push(crate::stratconfig::ComponentData {
            id: id.clone(),
            mult: Multiplicity::Alpha(alpha.clone()),
        });
    }
    c.open_strata = cs.open_from_closed();
    let pvu = pv(&c, r, false)?;
    let dual = duality_involution(&pvu);
    let n_shift = cs.n as i64 * cs.m;
    let holds = dual.expr.equals(&pvu.expr.mul_monomial(&r.power(-n_shift)));

    let pvn = pvu.renormalized(true);
    let holds_normalized_literal = duality_involution(&pvn)
        .expr
        .equals(&pvn.expr.mul_monomial(&r.power(-n_shift)));

    let mut self_dual_strata = Vec::new();
    for (key, stratum) in &cs.closed {
        let ok = match stratum.class.get(r) {
            Some(p) => {
                let x = RingElem::from_poly(p.clone());
                x.invert_variables()
                    .equals(&x.mul_monomial(&r.power(-(stratum.dim as i64) * cs.m)))
            }
            None => false,
        };
        self_dual_strata.push((key.clone(), ok));
    }
    Ok(DualityReport {
        pvu,
        dual,
        holds,
        holds_normalized_literal,
        self_dual_strata,
    })
}

/// Removes components with `alpha = 1`, merging each stratum `E_I°` with
/// `I ∋ j` into `E_{I \ {j}}°`.
pub fn delete_unit_components(c: &StratifiedConfig, ids: &[ComponentId]) -> Result<StratifiedConfig, ZetaError> {
    for id in ids {
        let comp = c.component(id).ok_or_else(|| ZetaError::UnknownComponent(id.clone()))?;
        let alpha = comp.mult.alpha();
        if !alpha.is_one() {
            return Err(ZetaError::NotUnitComponent {
                id: id.clone(),
                alpha: format_rational(&alpha),
            });
        }
    }
    let mut out = StratifiedConfig::new(c.n, c.m);
    out.components = c
        .components
        .iter()
        .filter(|comp| !ids.contains(&comp.id))
        .cloned()
        .collect();
    for (key, class) in &c.open_strata {
        let merged: Subset = key.iter().filter(|id| !ids.contains(id)).cloned().collect();
        out.add_to_stratum(merged, class);
    }
    Ok(out)
}

/// Every component with `alpha = 1`.
pub fn unit_components(c: &StratifiedConfig) -> Vec<ComponentId> {
    c.components
        .iter()
        .filter(|comp| comp.mult.alpha().is_one())
        .map(|comp| comp.id.clone())
        .collect()
}

/// Evaluates a PV at `L = value` (motivic) or `uv = value` (Hodge). Exact
/// when `value` has a rational `m`-th root, floating point otherwise.
pub fn specialize(x: &PvValue, value: &Rational) -> Result<Scalar, ZetaError> {
    let m = u32::try_from(x.m).map_err(|_| ZetaError::Internal(format!("scaling {}", x.m)))?;
    let step = match exact_root(value, m) {
        Some(q) => Scalar::Exact(q),
        None => Scalar::Float(
            crate::exactring::Scalar::Exact(value.clone())
                .to_f64()
                .powf(1.0 / x.m as f64),
        ),
    };
    let mut assignment = Assignment::new();
    match x.realization {
        Realization::Motivic => {
            assignment.insert(Var::T, step);
        }
        Realization::Hodge => {
            assignment.insert(Var::U, step);
            assignment.insert(Var::V, Scalar::Exact(Rational::one()));
        }
    }
    Ok(x.expr.evaluate(&assignment)?)
}

/// `(UV)^k -> t^k` applied to a Hodge value that depends only on `uv`.
pub fn hodge_to_motivic(x: &PvValue) -> Option<PvValue> {
    if x.realization != Realization::Hodge {
        return None;
    }
    let uv_only = |p: &LaurentPoly| {
        p.terms()
            .all(|(mono, _)| mono.get(Var::U) == mono.get(Var::V) && mono.get(Var::T) == 0)
    };
    if !uv_only(x.expr.num()) || !uv_only(x.expr.den()) {
        return None;
    }
    let expr = x
        .expr
        .map_monomials(|mono| {
            Realization::Motivic
                .power(mono.get(Var::U))
                .with(Var::Tau, mono.get(Var::Tau))
        })
        .ok()?;
    Some(PvValue {
        expr,
        realization: Realization::Motivic,
        ..x.clone()
    })
}
