//! The worked examples and seeded random families.
//!
//! Deterministic builders cover the two forms on `P^2`, the blow-up chain
//! relating them, the tangency example with an exceptional curve of
//! multiplicity zero, points on `P^1`, lines on `P^2` and products with a
//! smooth complete variety. The random generators are deterministic in their
//! seed and only emit data satisfying their family's constraints.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactring::{format_rational, parse_rational, rat, rat_int, LaurentPoly, Rational};
use crate::stratconfig::{l_to_hodge, ComponentData, ComponentId, MotClass, Realization, StratifiedConfig, Subset};
use crate::surfblow::{blowup, exceptional_alpha, BlowupCenter, SurfaceConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("unknown scenario {0:?}")]
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScenarioId {
    /// `P^2` with `C_1 = {Y = 0}`, `C_2 = {Z = 0}`, both with `alpha = -1/2`.
    Example34a,
    /// `P^2` with the conic `Y'Z' - X'^2 = 0`, `alpha = -1/2`.
    Example34b,
    /// Three blow-ups starting from `Example34a`.
    Figure2Chain,
    /// Blowing up a tangency point of `D_1` (`alpha = 3/2`) and `D_2` (`alpha = -1/2`).
    Figure1Mult,
    /// `P^1` with one point per alpha; requires `Σ (alpha_i - 1) = -2`.
    P1Points(Vec<Rational>),
    /// General lines on `P^2`, one per alpha; requires `Σ (alpha_i - 1) = -3`.
    P2Lines(Vec<Rational>),
    /// Product with a smooth complete variety of class `class` (in `L`,
    /// scaled by the base scenario's `m`) and dimension `dim`.
    Product {
        base: Box<ScenarioId>,
        class: Vec<i64>,
        dim: usize,
    },
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |alphas: &[Rational]| alphas.iter().map(format_rational).collect::<Vec<_>>().join(",");
        match self {
            ScenarioId::Example34a => f.write_str("example34a"),
            ScenarioId::Example34b => f.write_str("example34b"),
            ScenarioId::Figure2Chain => f.write_str("figure2chain"),
            ScenarioId::Figure1Mult => f.write_str("figure1mult"),
            ScenarioId::P1Points(a) => write!(f, "p1points:{}", list(a)),
            ScenarioId::P2Lines(a) => write!(f, "p2lines:{}", list(a)),
            ScenarioId::Product { base, class, dim } => {
                let coeffs: Vec<String> = class.iter().map(|c| c.to_string()).collect();
                write!(f, "product:{dim}:{}:{base}", coeffs.join(","))
            }
        }
    }
}

impl FromStr for ScenarioId {
    type Err = ScenarioError;

    /// `example34a`, `example34b`, `figure2chain`, `figure1mult`,
    /// `p1points:<a>,<a>,...`, `p2lines:<a>,...` or
    /// `product:<dim>:<c0>,<c1>,...:<scenario>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || ScenarioError::Unknown(s.to_string());
        let alphas = |list: &str| -> Result<Vec<Rational>, ScenarioError> {
            list.split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| parse_rational(x).ok_or_else(unknown))
                .collect()
        };
        match s {
            "example34a" => return Ok(ScenarioId::Example34a),
            "example34b" => return Ok(ScenarioId::Example34b),
            "figure2chain" => return Ok(ScenarioId::Figure2Chain),
            "figure1mult" => return Ok(ScenarioId::Figure1Mult),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("p1points:") {
            return Ok(ScenarioId::P1Points(alphas(rest)?));
        }
        if let Some(rest) = s.strip_prefix("p2lines:") {
            return Ok(ScenarioId::P2Lines(alphas(rest)?));
        }
        if let Some(rest) = s.strip_prefix("product:") {
            let mut parts = rest.splitn(3, ':');
            let dim = parts.next().and_then(|d| d.parse().ok()).ok_or_else(unknown)?;
            let class = parts
                .next()
                .ok_or_else(unknown)?
                .split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| unknown()))
                .collect::<Result<Vec<_>, _>>()?;
            let base = parts.next().ok_or_else(unknown)?.parse()?;
            return Ok(ScenarioId::Product {
                base: Box::new(base),
                class,
                dim,
            });
        }
        Err(unknown())
    }
}

/// The labelled stages of a blow-up chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub stages: Vec<(String, SurfaceConfig)>,
    pub centers: Vec<BlowupCenter>,
}

/// The tangency example: the exceptional curve's alpha.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityExample {
    pub codim: u32,
    pub branches: Vec<(Rational, u32)>,
    pub alpha: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scenario {
    Config(StratifiedConfig),
    Chain(Chain),
    Multiplicity(MultiplicityExample),
}

impl Scenario {
    /// The configuration, or the last stage of a chain.
    pub fn config(&self) -> Option<&StratifiedConfig> {
        match self {
            Scenario::Config(c) => Some(c),
            Scenario::Chain(chain) => chain.stages.last().map(|(_, s)| &s.config),
            Scenario::Multiplicity(_) => None,
        }
    }
}

fn lclass(m: i64, coeffs: &[i64]) -> MotClass {
    MotClass::from_l_coeffs(m, coeffs)
}

/// Smallest `m` with `m * alpha` integral for every alpha.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(alphas: I) -> i64 {
    alphas.into_iter().fold(1i64, |acc, a| {
        let d = i64::try_from(a.denom().clone()).unwrap_or(1);
        acc.lcm(&d)
    })
}

fn check_nonzero(alphas: &[Rational]) -> Result<(), ScenarioError> {
    if alphas.iter().any(Rational::is_zero) {
        return Err(ScenarioError::ConstraintViolated(
            "alpha = 0 is a logarithmic pole".into(),
        ));
    }
    Ok(())
}

fn check_degree(alphas: &[Rational], expected: i64, what: &str) -> Result<(), ScenarioError> {
    let total: Rational = alphas.iter().map(|a| a - Rational::one()).sum();
    if total != rat_int(expected) {
        return Err(ScenarioError::ConstraintViolated(format!(
            "{what} needs Σ(alpha - 1) = {expected}, got {}",
            format_rational(&total)
        )));
    }
    Ok(())
}

pub fn example34a() -> StratifiedConfig {
    p2_lines_unchecked(&[rat(-1, 2), rat(-1, 2)])
}

pub fn example34b() -> StratifiedConfig {
    StratifiedConfig::new(2, 2)
        .with_component(ComponentData::alpha("C1", rat(-1, 2)))
        .add_stratum::<&str>(&[], lclass(2, &[0, 0, 1]))
        .add_stratum(&["C1"], lclass(2, &[1, 1]))
}

/// `P^2`, then blow-ups at a point of `C2`, at `C2 ∩ C3`, and at a point of
/// `C4`.
pub fn figure2chain() -> Chain {
    let start = SurfaceConfig::new(example34a()).expect("surface");
    let steps = [
        (BlowupCenter::OnCurve("C2".into()), "C3", "S1"),
        (BlowupCenter::AtDoublePoint("C2".into(), "C3".into()), "C4", "S2"),
        (BlowupCenter::OnCurve("C4".into()), "C5", "S2+C5"),
    ];
    let mut stages = vec![("P2".to_string(), start)];
    let mut centers = Vec::new();
    for (center, id, label) in steps {
        let next = blowup(&stages.last().unwrap().1, &center, id).expect("valid chain");
        stages.push((label.to_string(), next));
        centers.push(center);
    }
    Chain { stages, centers }
}

pub fn figure1mult() -> MultiplicityExample {
    let branches = vec![(rat(3, 2), 1), (rat(-1, 2), 1)];
    MultiplicityExample {
        codim: 2,
        alpha: exceptional_alpha(2, &branches),
        branches,
    }
}

fn point_ids(k: usize) -> Vec<ComponentId> {
    (1..=k).map(|i| format!("P{i}")).collect()
}

fn line_ids(k: usize) -> Vec<ComponentId> {
    (1..=k).map(|i| format!("C{i}")).collect()
}

pub fn p1_points(alphas: &[Rational]) -> Result<StratifiedConfig, ScenarioError> {
    check_nonzero(alphas)?;
    check_degree(alphas, -2, "p1points")?;
    let m = common_denominator(alphas);
    let k = alphas.len() as i64;
    let mut c = StratifiedConfig::new(1, m).add_stratum::<&str>(&[], lclass(m, &[1 - k, 1]));
    for (id, a) in point_ids(alphas.len()).into_iter().zip(alphas) {
        c.components.push(ComponentData::alpha(&id, a.clone()));
        c = c.add_stratum(&[id.as_str()], lclass(m, &[1]));
    }
    Ok(c)
}

pub fn p2_lines(alphas: &[Rational]) -> Result<StratifiedConfig, ScenarioError> {
    check_nonzero(alphas)?;
    check_degree(alphas, -3, "p2lines")?;
    Ok(p2_lines_unchecked(alphas))
}

/// `k` general lines: `[E_i°] = L + 1 - (k - 1)`, `C(k,2)` double points and
/// the complement as `E_∅°`.
fn p2_lines_unchecked(alphas: &[Rational]) -> StratifiedConfig {
    let m = common_denominator(alphas);
    let k = alphas.len() as i64;
    let ids = line_ids(alphas.len());
    let pairs = k * (k - 1) / 2;
    // L^2 + L + 1 - k (L + 2 - k) - C(k, 2)
    let ambient = lclass(m, &[1 - k * (2 - k) - pairs, 1 - k, 1]);
    let mut c = StratifiedConfig::new(2, m).add_stratum::<&str>(&[], ambient);
    for (id, a) in ids.iter().zip(alphas) {
        c.components.push(ComponentData::alpha(id, a.clone()));
        c = c.add_stratum(&[id.as_str()], lclass(m, &[2 - k, 1]));
    }
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            c = c.add_stratum(&[ids[i].as_str(), ids[j].as_str()], lclass(m, &[1]));
        }
    }
    c
}

/// `X × M`: every stratum class multiplied by `[M]`, dimension raised by
/// `dim`.
pub fn product(base: &StratifiedConfig, class: &[i64], dim: usize) -> StratifiedConfig {
    let factor = lclass(base.m, class);
    let mut out = base.clone();
    out.n += dim;
    out.open_strata = base
        .open_strata
        .iter()
        .map(|(k, c)| (k.clone(), c.mul(&factor)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    out
}

pub fn build(id: &ScenarioId) -> Result<Scenario, ScenarioError> {
    Ok(match id {
        ScenarioId::Example34a => Scenario::Config(example34a()),
        ScenarioId::Example34b => Scenario::Config(example34b()),
        ScenarioId::Figure2Chain => Scenario::Chain(figure2chain()),
        ScenarioId::Figure1Mult => Scenario::Multiplicity(figure1mult()),
        ScenarioId::P1Points(a) => Scenario::Config(p1_points(a)?),
        ScenarioId::P2Lines(a) => Scenario::Config(p2_lines(a)?),
        ScenarioId::Product { base, class, dim } => {
            let inner = build(base)?;
            let base = inner
                .config()
                .ok_or_else(|| ScenarioError::ConstraintViolated("product needs a configuration".into()))?;
            Scenario::Config(product(base, class, *dim))
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    P1,
    P2Lines,
}

/// Random alpha in `(1/d)Z`, nonzero, within `[-3, 3]`.
fn random_alpha<R: Rng>(rng: &mut R, d: i64) -> Rational {
    loop {
        let k = rng.gen_range(-3 * d..=3 * d);
        if k != 0 {
            return rat(k, d);
        }
    }
}

type Builder = fn(&[Rational]) -> Result<StratifiedConfig, ScenarioError>;

/// A random configuration of the given family honoring its canonical degree
/// constraint, with denominators up to `d_max` and up to `k_max` components.
pub fn random_canonical(seed: u64, family: Family, d_max: i64, k_max: usize) -> StratifiedConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (target, build): (i64, Builder) = match family {
        Family::P1 => (-2, p1_points),
        Family::P2Lines => (-3, p2_lines),
    };
    loop {
        let d = rng.gen_range(1..=d_max.max(1));
        let k = rng.gen_range(1..=k_max.max(1));
        let mut alphas: Vec<Rational> = (0..k - 1).map(|_| random_alpha(&mut rng, d)).collect();
        let partial: Rational = alphas.iter().map(|a| a - Rational::one()).sum();
        let last = rat_int(target) - partial + Rational::one();
        alphas.push(last);
        if let Ok(c) = build(&alphas) {
            return c;
        }
    }
}

fn random_lpoly<R: Rng>(rng: &mut R, m: i64, max_deg: usize, nonzero: bool) -> LaurentPoly {
    loop {
        let p = LaurentPoly::from_terms(
            (0..=max_deg).map(|i| (Realization::Motivic.power(m * i as i64), rat_int(rng.gen_range(-2..=3)))),
        );
        if !nonzero || !p.is_zero() {
            return p;
        }
    }
}

/// A random normal-crossings surface configuration (not necessarily
/// realizable) with nonzero alphas, for blow-up tests.
pub fn random_surface(seed: u64, d_max: i64, k_max: usize) -> SurfaceConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(1..=d_max.max(1));
    let k = rng.gen_range(1..=k_max.max(1));
    let ids = line_ids(k);
    let mut c = StratifiedConfig::new(2, d);
    for id in &ids {
        c.components.push(ComponentData::alpha(id, random_alpha(&mut rng, d)));
    }
    c.add_to_stratum(Subset::new(), &MotClass::from_l(random_lpoly(&mut rng, d, 2, true)));
    for id in &ids {
        let class = MotClass::from_l(random_lpoly(&mut rng, d, 1, true));
        c.add_to_stratum([id.clone()].into(), &class);
    }
    for i in 0..k {
        for j in i + 1..k {
            let count = rng.gen_range(0..=2);
            c.add_to_stratum([ids[i].clone(), ids[j].clone()].into(), &lclass(d, &[count]));
        }
    }
    SurfaceConfig::new(c).expect("surface")
}

/// A random center of the given kind (0 free, 1 on a curve, 2 double point)
/// on `s`; for a double point with none available, one is added first.
pub fn random_center(seed: u64, s: &mut SurfaceConfig, kind: usize) -> BlowupCenter {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let ids = s.config.ids();
    match kind % 3 {
        0 => BlowupCenter::Free,
        1 => BlowupCenter::OnCurve(ids.choose(&mut rng).expect("components").clone()),
        _ => {
            if ids.len() < 2 {
                return BlowupCenter::OnCurve(ids[0].clone());
            }
            let mut pairs = Vec::new();
            for i in 0..ids.len() {
                for j in i + 1..ids.len() {
                    pairs.push((ids[i].clone(), ids[j].clone()));
                }
            }
            let (a, b) = pairs.choose(&mut rng).unwrap().clone();
            if s.double_points(&a, &b) == 0 {
                s.config
                    .add_to_stratum([a.clone(), b.clone()].into(), &lclass(s.config.m, &[1]));
            }
            BlowupCenter::AtDoublePoint(a, b)
        }
    }
}

/// A random configuration with resolution data `(nu, N)`, `nu >= 1` and
/// `nu + N != 0`, carrying both realizations.
pub fn random_resolution(seed: u64, d_max: i64, k_max: usize) -> StratifiedConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(1..=d_max.max(1));
    let n = rng.gen_range(1..=3usize);
    let k = rng.gen_range(0..=k_max);
    let ids: Vec<ComponentId> = (1..=k).map(|i| format!("E{i}")).collect();
    let mut c = StratifiedConfig::new(n, d);
    for id in &ids {
        let nu = rat(rng.gen_range(d..=3 * d), d);
        let big_n = loop {
            let candidate = rat(rng.gen_range(-4 * d..=4 * d), d);
            if !(&nu + &candidate).is_zero() {
                break candidate;
            }
        };
        c.components.push(ComponentData::resolution(id, nu, big_n));
    }
    random_strata(&mut rng, &mut c, &ids);
    c
}

/// A random configuration with alpha data (all nonzero) carrying both
/// realizations.
pub fn random_alpha_config(seed: u64, d_max: i64, k_max: usize) -> StratifiedConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(1..=d_max.max(1));
    let n = rng.gen_range(1..=3usize);
    let k = rng.gen_range(0..=k_max);
    let ids: Vec<ComponentId> = (1..=k).map(|i| format!("E{i}")).collect();
    let mut c = StratifiedConfig::new(n, d);
    for id in &ids {
        c.components.push(ComponentData::alpha(id, random_alpha(&mut rng, d)));
    }
    random_strata(&mut rng, &mut c, &ids);
    c
}

fn random_strata<R: Rng>(rng: &mut R, c: &mut StratifiedConfig, ids: &[ComponentId]) {
    let (n, m) = (c.n, c.m);
    c.add_to_stratum(Subset::new(), &MotClass::from_l(random_lpoly(rng, m, n, true)));
    for mask in 1u32..(1 << ids.len()) {
        let key: Subset = ids
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, id)| id.clone())
            .collect();
        if key.len() > n || (key.len() > 1 && rng.gen_bool(0.4)) {
            continue;
        }
        let class = random_lpoly(rng, m, n - key.len(), key.len() == 1);
        if !class.is_zero() {
            c.add_to_stratum(key, &MotClass::from_l(class));
        }
    }
}

/// Appends `count` components with `alpha = 1` to `c`, each meeting a random
/// existing stratum.
pub fn with_unit_components(seed: u64, c: &StratifiedConfig, count: usize) -> (StratifiedConfig, Vec<ComponentId>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = c.clone();
    let mut added = Vec::new();
    for i in 1..=count {
        let id = format!("U{i}");
        out.components.push(ComponentData::alpha(&id, Rational::one()));
        let keys: Vec<Subset> = out.open_strata.keys().filter(|k| k.len() < out.n).cloned().collect();
        for key in keys {
            if !rng.gen_bool(0.5) {
                continue;
            }
            let mut with = key.clone();
            with.insert(id.clone());
            let piece = MotClass::from_l(random_lpoly(&mut rng, out.m, out.n - with.len(), false));
            if piece.is_zero() {
                continue;
            }
            // carve the piece out of the old stratum so the total is unchanged
            out.add_to_stratum(key, &piece.scale(&rat_int(-1)));
            out.add_to_stratum(with, &piece);
        }
        added.push(id);
    }
    (out, added)
}

/// The Hodge class `[M]` with `L -> uv`, for documentation of products.
pub fn hodge_of(class: &[i64], m: i64) -> LaurentPoly {
    l_to_hodge(lclass(m, class).lpoly.as_ref().unwrap())
}
