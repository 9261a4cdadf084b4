//! The class expression grammar.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := int | '-' int | '(' ['-'] int ['/' int] ')'
//! atom     := int | symbol | '(' expr ')'
//! symbol   := 'L' | 'T' | 'u' | 'v'
//! ```
//!
//! Integer powers apply to any expression; fractional powers only to a unit
//! monomial such as `L` or `u*v`, and the resulting exponents must be
//! multiples of `1/m`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactring::{LaurentPoly, Monomial, Rational, RingElem, RingError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("scaling error at {pos}: {msg}")]
    Scaling { pos: usize, msg: String },
    #[error("at {pos}: {source}")]
    Ring {
        pos: usize,
        #[source]
        source: RingError,
    },
}

/// Which symbols an expression may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbols {
    /// Motivic class: `L` only.
    Motivic,
    /// Hodge class: `u` and `v`.
    Hodge,
    /// Any of `L`, `T`, `u`, `v`.
    Any,
}

impl Symbols {
    fn var(self, c: char) -> Option<Var> {
        let v = match c {
            'L' => Var::T,
            'T' => Var::Tau,
            'u' => Var::U,
            'v' => Var::V,
            _ => return None,
        };
        let allowed = match self {
            Symbols::Motivic => v == Var::T,
            Symbols::Hodge => matches!(v, Var::U | Var::V),
            Symbols::Any => true,
        };
        allowed.then_some(v)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    m: i64,
    symbols: Symbols,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).map(|&b| b as char)
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.syntax(format!("expected '{c}'"))
        }
    }

    fn ring<T>(&self, r: Result<T, RingError>) -> Result<T, ExprError> {
        r.map_err(|source| ExprError::Ring { pos: self.pos, source })
    }

    fn int(&mut self) -> Result<BigInt, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(text.parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<RingElem, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RingElem, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.ring(acc.div(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RingElem, ExprError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RingElem, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let exp = self.exponent()?;
        if exp.is_integer() {
            let k = exp.to_integer().to_i64().ok_or(ExprError::Syntax {
                pos: at,
                msg: "exponent too large".into(),
            })?;
            return self.ring(base.pow(k));
        }
        let mono = match base.as_laurent().as_ref().and_then(LaurentPoly::as_term) {
            Some((mono, c)) if c.is_one() => *mono,
            _ => {
                return Err(ExprError::Scaling {
                    pos: at,
                    msg: "fractional power of an expression that is not a unit monomial".into(),
                })
            }
        };
        let mut out = Monomial::ONE;
        for v in Var::ALL {
            let e = Rational::from_integer(mono.get(v).into()) * &exp;
            if !e.is_integer() {
                return Err(ExprError::Scaling {
                    pos: at,
                    msg: format!("exponent denominator does not divide m = {}", self.m),
                });
            }
            out = out.with(v, e.to_integer().to_i64().expect("small exponent"));
        }
        Ok(RingElem::monomial(out))
    }

    fn exponent(&mut self) -> Result<Rational, ExprError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let negative = self.peek() == Some('-');
                if negative {
                    self.pos += 1;
                }
                let num = self.int()?;
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    self.int()?
                } else {
                    BigInt::one()
                };
                if den.is_zero() {
                    return self.syntax("zero denominator in exponent");
                }
                self.expect(')')?;
                let q = Rational::new(num, den);
                Ok(if negative { -q } else { q })
            }
            Some('-') => {
                self.pos += 1;
                Ok(-Rational::from_integer(self.int()?))
            }
            _ => Ok(Rational::from_integer(self.int()?)),
        }
    }

    fn atom(&mut self) -> Result<RingElem, ExprError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(RingElem::from_rational(Rational::from_integer(self.int()?))),
            Some(c) => match self.symbols.var(c) {
                Some(v) => {
                    self.pos += 1;
                    Ok(RingElem::var(v, self.m))
                }
                None => self.syntax(format!("unexpected '{c}'")),
            },
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses an expression with symbols read at scaling `m`.
pub fn parse_expr(text: &str, m: i64, symbols: Symbols) -> Result<RingElem, ExprError> {
    let normalized = text.replace('\u{2212}', "-");
    let mut p = Parser {
        src: normalized.as_bytes(),
        pos: 0,
        m,
        symbols,
    };
    let value = p.expr()?;
    if p.peek().is_some() {
        return p.syntax("trailing input");
    }
    Ok(value)
}

/// Parses a class: the expression must be a Laurent polynomial.
pub fn parse_class(text: &str, m: i64, symbols: Symbols) -> Result<LaurentPoly, ExprError> {
    let value = parse_expr(text, m, symbols)?;
    value.as_laurent().ok_or(ExprError::Syntax {
        pos: 0,
        msg: format!("{text:?} is not a polynomial class"),
    })
}
