#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

use motivic_pv::exactring::{rat, Rational, RingElem, Var};
use motivic_pv::scenarios::{self, ScenarioId};
use motivic_pv::stratconfig::StratifiedConfig;

fn power(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), e.unsigned_abs() as usize)
    }
}

/// The defining strata sum evaluated term by term at `L^(1/m) = t`, using
/// the motivic classes and `alpha` data only.
pub fn naive_pv_at(c: &StratifiedConfig, t: &Rational, normalized: bool) -> Option<Rational> {
    let m = c.m;
    let big_l = power(t, m);
    let mut total = Rational::zero();
    for (key, class) in &c.open_strata {
        let poly = class.lpoly.as_ref()?;
        let mut value = Rational::zero();
        for (mono, coef) in poly.terms() {
            value += coef * power(t, mono.0[0]);
        }
        for id in key {
            let alpha = c.alpha(id).ok()?;
            let e = alpha * Rational::from_integer(BigInt::from(m));
            if !e.is_integer() {
                return None;
            }
            let e = i64::try_from(e.to_integer()).ok()?;
            let den = power(t, e) - Rational::one();
            if den.is_zero() {
                return None;
            }
            value *= (&big_l - Rational::one()) / den;
        }
        total += value;
    }
    if normalized {
        total *= power(t, -(c.n as i64) * m);
    }
    Some(total)
}

/// Exact value of a `t`/`U`/`V`-only element at `t = U = x`, `V = 1`.
pub fn eval_at(x: &RingElem, t: &Rational) -> Option<Rational> {
    let eval = |p: &motivic_pv::exactring::LaurentPoly| {
        let mut acc = Rational::zero();
        for (mono, coef) in p.terms() {
            if mono.get(Var::Tau) != 0 {
                return None;
            }
            acc += coef * power(t, mono.get(Var::T) + mono.get(Var::U));
        }
        Some(acc)
    };
    let den = eval(x.den())?;
    if den.is_zero() {
        return None;
    }
    Some(eval(x.num())? / den)
}

/// Sample points used with the numeric oracle.
pub fn sample_points() -> Vec<Rational> {
    vec![rat(3, 2), rat(5, 1), rat(2, 7)]
}

/// Every deterministic scenario id.
pub fn scenario_ids() -> Vec<ScenarioId> {
    let parse = |s: &str| s.parse::<ScenarioId>().expect("scenario name");
    vec![
        ScenarioId::Example34a,
        ScenarioId::Example34b,
        ScenarioId::Figure2Chain,
        ScenarioId::Figure1Mult,
        parse("p1points:3/2,1/2,-1"),
        parse("p1points:2,-1/3,-2/3"),
        parse("p2lines:-1/2,-1/2"),
        parse("p2lines:1/2,1/2,-1"),
        parse("p2lines:1/2,1/2,1/2,-1/2"),
        parse("product:1:1,1:example34b"),
        parse("product:2:1,1,1:p1points:3/2,1/2,-1"),
    ]
}

/// The configurations behind every scenario (all chain stages included).
pub fn scenario_configs() -> Vec<(String, StratifiedConfig)> {
    let mut out = Vec::new();
    for id in scenario_ids() {
        match scenarios::build(&id).expect("scenario builds") {
            scenarios::Scenario::Config(c) => out.push((id.to_string(), c)),
            scenarios::Scenario::Chain(chain) => {
                for (label, s) in chain.stages {
                    out.push((format!("{id}/{label}"), s.config));
                }
            }
            scenarios::Scenario::Multiplicity(_) => {}
        }
    }
    out
}
