use proptest::prelude::*;

use motivic_pv::cli::{parse_expr, Symbols};
use motivic_pv::exactring::{rat, Assignment, LaurentPoly, Monomial, Rational, RingElem, Scalar, Style, Var};

const M: i64 = 2;

fn poly_strategy(vars: &'static [Var]) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(
        (prop::collection::vec(-3i64..=4, vars.len()), -4i64..=4, 1i64..=3),
        0..4,
    )
    .prop_map(move |terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(exps, num, den)| {
            let mono = vars.iter().zip(exps).fold(Monomial::ONE, |acc, (v, e)| acc.with(*v, e));
            (mono, rat(num, den))
        }))
    })
}

fn elem_strategy(vars: &'static [Var]) -> impl Strategy<Value = RingElem> {
    (poly_strategy(vars), poly_strategy(vars)).prop_filter_map("zero denominator", |(n, d)| RingElem::new(n, d).ok())
}

fn t_elem() -> impl Strategy<Value = RingElem> {
    elem_strategy(&[Var::T])
}

fn mixed_elem() -> impl Strategy<Value = RingElem> {
    elem_strategy(&[Var::T, Var::Tau, Var::U, Var::V])
}

fn point(x: i64, y: i64) -> Assignment {
    [
        (Var::T, Scalar::Exact(rat(x, 1))),
        (Var::Tau, Scalar::Exact(rat(y, 3))),
        (Var::U, Scalar::Exact(rat(x + 2, 5))),
        (Var::V, Scalar::Exact(rat(7, y.abs() + 1))),
    ]
    .into_iter()
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_and_multiplication_commute(a in mixed_elem(), b in mixed_elem()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn associativity_and_distributivity(a in t_elem(), b in t_elem(), c in t_elem()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn inverses(a in mixed_elem()) {
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RingElem::one());
        }
    }

    #[test]
    fn division_undoes_multiplication(a in mixed_elem(), b in mixed_elem()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&a.div(&b).unwrap() * &b, a);
    }

    #[test]
    fn univariate_results_are_reduced(a in t_elem(), b in t_elem()) {
        // the same value built two ways has the same stored form
        let x = &a + &b;
        let y = &(&a * &RingElem::from_int(2)) - &(&a - &b);
        prop_assert_eq!(x.num(), y.num());
        prop_assert_eq!(x.den(), y.den());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in mixed_elem(), b in mixed_elem(), x in 2i64..6, y in 1i64..5) {
        let at = point(x, y);
        let (Ok(Scalar::Exact(va)), Ok(Scalar::Exact(vb))) = (a.evaluate(&at), b.evaluate(&at)) else {
            return Ok(());
        };
        if let Ok(Scalar::Exact(sum)) = (&a + &b).evaluate(&at) {
            prop_assert_eq!(sum, &va + &vb);
        }
        if let Ok(Scalar::Exact(prod)) = (&a * &b).evaluate(&at) {
            prop_assert_eq!(prod, va * vb);
        }
    }

    #[test]
    fn substitution_agrees_with_evaluation(a in mixed_elem(), k in -3i64..3, x in 2i64..6, y in 1i64..5) {
        let Ok(sub) = a.substitute(Var::Tau, &Monomial::var(Var::T, k)) else {
            return Ok(());
        };
        prop_assert!(!sub.uses(Var::Tau));
        let mut at = point(x, y);
        let tau = num_traits::pow(Rational::from_integer(x.into()), k.unsigned_abs() as usize);
        let tau = if k < 0 { num_traits::Inv::inv(tau) } else { tau };
        at.insert(Var::Tau, Scalar::Exact(tau));
        if let (Ok(lhs), Ok(rhs)) = (sub.evaluate(&at), a.evaluate(&at)) {
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn variable_inversion_is_an_involution(a in mixed_elem(), b in mixed_elem()) {
        prop_assert_eq!(a.invert_variables().invert_variables(), a.clone());
        prop_assert_eq!((&a * &b).invert_variables(), &a.invert_variables() * &b.invert_variables());
    }

    #[test]
    fn pretty_form_parses_back(a in mixed_elem()) {
        let text = a.render(M, Style::Pretty);
        let back = parse_expr(&text, M, Symbols::Any).unwrap();
        prop_assert_eq!(&back, &a, "{}", text);
        prop_assert_eq!(back.render(M, Style::Pretty), text);
    }

    #[test]
    fn machine_form_parses_back(a in mixed_elem()) {
        let text = a.render(M, Style::Machine);
        let doc = serde_json::from_str(&text).unwrap();
        let back = RingElem::from_machine(&doc).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.render(M, Style::Machine), text);
    }
}

#[test]
fn documented_equalities() {
    let t = |e| RingElem::var(Var::T, e);
    let one = RingElem::one();
    let lhs = (&t(2) - &one).div(&(&t(1) - &one)).unwrap();
    assert_eq!(lhs, &t(1) + &one);
    assert_ne!(t(1), t(-1));
    let pole = RingElem::one().div(&(&RingElem::var(Var::Tau, 2) - &t(-2))).unwrap();
    assert!(pole.substitute(Var::Tau, &Monomial::var(Var::T, -1)).is_err());
}
