//! Dense univariate helpers used to cancel common factors when a fraction
//! only involves powers of a single monomial direction.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LaurentPoly, Monomial, Rational, NVARS};

/// Dense coefficients, lowest degree first, no trailing zeros.
type Dense = Vec<Rational>;

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn div_rem(a: &Dense, b: &Dense) -> (Dense, Dense) {
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quo = vec![Rational::zero(); rem.len() - db];
    for k in (0..quo.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                rem[k + i] -= &c * bc;
            }
        }
        quo[k] = c;
    }
    (trim(quo), trim(rem))
}

fn monic(p: Dense) -> Dense {
    let lead = p.last().cloned().unwrap_or_else(Rational::one);
    p.into_iter().map(|c| c / &lead).collect()
}

fn gcd(a: &Dense, b: &Dense) -> Dense {
    let (mut x, mut y) = (monic(a.clone()), monic(b.clone()));
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = monic(r);
    }
    x
}

/// Primitive nonnegative direction `d` such that every monomial of both
/// inputs is `k * d` for some `k >= 0`. Inputs must be free of monomial
/// factors.
fn common_direction(p: &LaurentPoly, q: &LaurentPoly) -> Option<Monomial> {
    let mut dir: Option<Monomial> = None;
    for (m, _) in p.terms().chain(q.terms()) {
        if m.is_one() {
            continue;
        }
        match dir {
            None => {
                let g = m.0.iter().fold(0i64, |g, e| g.gcd(e));
                dir = Some(Monomial(m.0.map(|e| e / g)));
            }
            Some(d) => {
                multiple_of(m, &d)?;
            }
        }
    }
    dir
}

fn multiple_of(m: &Monomial, d: &Monomial) -> Option<i64> {
    let i = (0..NVARS).find(|&i| d.0[i] != 0)?;
    if m.0[i] % d.0[i] != 0 {
        return None;
    }
    let k = m.0[i] / d.0[i];
    (d.pow(k) == *m && k >= 0).then_some(k)
}

fn to_dense(p: &LaurentPoly, d: &Monomial) -> Dense {
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let k = multiple_of(m, d).unwrap_or(0) as usize;
        if out.len() <= k {
            out.resize(k + 1, Rational::zero());
        }
        out[k] = c.clone();
    }
    trim(out)
}

fn from_dense(p: &Dense, d: &Monomial) -> LaurentPoly {
    LaurentPoly::from_terms(p.iter().enumerate().map(|(k, c)| (d.pow(k as i64), c.clone())))
}

/// Cancels the gcd of `p` and `q` when both live in one monomial direction.
/// Returns `None` when the inputs are not of that shape.
pub(crate) fn cancel_common(p: &LaurentPoly, q: &LaurentPoly) -> Option<(LaurentPoly, LaurentPoly)> {
    let d = common_direction(p, q)?;
    let (dp, dq) = (to_dense(p, &d), to_dense(q, &d));
    let g = gcd(&dp, &dq);
    if g.len() <= 1 {
        return Some((p.clone(), q.clone()));
    }
    let (np, _) = div_rem(&dp, &g);
    let (nq, _) = div_rem(&dq, &g);
    Some((from_dense(&np, &d), from_dense(&nq, &d)))
}
