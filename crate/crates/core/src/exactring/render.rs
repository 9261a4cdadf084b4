//! Text forms of ring elements.
//!
//! `Pretty` writes fractional powers of the geometric symbols (`L`, `T`,
//! `u`, `v`), e.g. `-(L + L^(1/2) + 1)/L^(3/2)`. `Machine` writes the exact
//! scaled term lists as JSON.

use std::collections::BTreeMap;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, LaurentPoly, Monomial, RingElem, RingError, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Pretty,
    Machine,
}

/// One term of a machine-format polynomial. `exp` holds the m-scaled integer
/// exponents keyed by variable name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineTerm {
    pub exp: BTreeMap<String, i64>,
    pub coef: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineElem {
    pub num: Vec<MachineTerm>,
    pub den: Vec<MachineTerm>,
    pub m: i64,
}

fn symbol(v: Var) -> &'static str {
    match v {
        Var::T => "L",
        Var::Tau => "T",
        Var::U => "u",
        Var::V => "v",
    }
}

fn power(v: Var, e: i64, m: i64) -> String {
    let q = super::rat(e, m);
    if q.is_one() {
        symbol(v).to_string()
    } else if q.denom().is_one() && q.is_positive() {
        format!("{}^{}", symbol(v), q.numer())
    } else {
        format!("{}^({})", symbol(v), format_rational(&q))
    }
}

fn render_monomial(mono: &Monomial, m: i64) -> String {
    mono.vars()
        .map(|v| power(v, mono.get(v), m))
        .collect::<Vec<_>>()
        .join("*")
}

fn render_poly(p: &LaurentPoly, m: i64) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (mono, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        let mono_text = render_monomial(mono, m);
        if mono_text.is_empty() {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&mono_text);
        } else {
            out.push_str(&format_rational(&abs));
            out.push('*');
            out.push_str(&mono_text);
        }
    }
    out
}

fn is_bare_monomial(p: &LaurentPoly) -> bool {
    p.as_term()
        .is_some_and(|(mono, c)| c.is_one() && mono.vars().count() == 1)
}

fn render_pretty(a: &RingElem, m: i64) -> String {
    let (num, den) = (a.num(), a.den());
    if num.is_zero() {
        return "0".to_string();
    }
    if den.as_constant().is_some_and(|c| c.is_one()) {
        return render_poly(num, m);
    }
    let negative = num.leading().is_some_and(|(_, c)| c.is_negative());
    let numer = if num.len() > 1 {
        if negative {
            format!("-({})", render_poly(&-num, m))
        } else {
            format!("({})", render_poly(num, m))
        }
    } else {
        render_poly(num, m)
    };
    let denom = if is_bare_monomial(den) {
        render_poly(den, m)
    } else {
        format!("({})", render_poly(den, m))
    };
    format!("{numer}/{denom}")
}

fn machine_terms(p: &LaurentPoly) -> Vec<MachineTerm> {
    p.terms()
        .rev()
        .map(|(mono, c)| MachineTerm {
            exp: mono.vars().map(|v| (v.name().to_string(), mono.get(v))).collect(),
            coef: format_rational(c),
        })
        .collect()
}

fn poly_from_machine(terms: &[MachineTerm]) -> Result<LaurentPoly, RingError> {
    let mut p = LaurentPoly::zero();
    for term in terms {
        let mut mono = Monomial::ONE;
        for (name, e) in &term.exp {
            let v = Var::from_name(name).ok_or_else(|| RingError::Machine(format!("unknown variable {name:?}")))?;
            mono = mono.with(v, *e);
        }
        let c =
            parse_rational(&term.coef).ok_or_else(|| RingError::Machine(format!("bad coefficient {:?}", term.coef)))?;
        p.add_term(mono, c);
    }
    Ok(p)
}

impl RingElem {
    pub fn render(&self, m: i64, style: Style) -> String {
        match style {
            Style::Pretty => render_pretty(self, m),
            Style::Machine => serde_json::to_string(&self.to_machine(m)).expect("serializable"),
        }
    }

    pub fn to_machine(&self, m: i64) -> MachineElem {
        MachineElem {
            num: machine_terms(self.num()),
            den: machine_terms(self.den()),
            m,
        }
    }

    pub fn from_machine(doc: &MachineElem) -> Result<RingElem, RingError> {
        let num = poly_from_machine(&doc.num)?;
        let den = poly_from_machine(&doc.den)?;
        RingElem::new(num, den)
    }
}

impl LaurentPoly {
    /// Pretty form of a polynomial under scaling `m`.
    pub fn render(&self, m: i64) -> String {
        render_poly(self, m)
    }
}
