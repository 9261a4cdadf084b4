//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, Signed, Zero};

use common::{naive_pv_at, sample_points, scenario_configs};
use motivic_pv::cli::{self, parse_config, parse_expr, ConfigDocument, Format, Symbols};
use motivic_pv::exactring::{rat, rat_int, Monomial, Rational, RingElem, Scalar, Var};
use motivic_pv::scenarios::{
    self, example34a, example34b, figure1mult, figure2chain, random_alpha_config, random_canonical, random_center,
    random_resolution, random_surface, with_unit_components, Family,
};
use motivic_pv::stratconfig::{ClosedStrataInput, MotClass, Multiplicity, Realization, StratifiedConfig};
use motivic_pv::surfblow::{blowup, exceptional_alpha, invariance_report, PvStatus};
use motivic_pv::zetapv::{
    alt_zeta_pv, converging_integral, delete_unit_components, functional_equation_check, hodge_def1, hodge_z_at,
    log_poles, pv, specialize, zeta,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn t(e: i64) -> RingElem {
    RingElem::var(Var::T, e)
}

fn motivic_pv(c: &StratifiedConfig) -> Result<RingElem, String> {
    pv(c, Realization::Motivic, true)
        .map(|v| v.expr)
        .map_err(|e| e.to_string())
}

/// Cross-checks an exact PV against the term-by-term oracle.
fn oracle_agrees(c: &StratifiedConfig, x: &RingElem) -> Result<(), String> {
    for point in sample_points() {
        let expected = naive_pv_at(c, &point, true).ok_or("oracle undefined")?;
        let got = common::eval_at(x, &point).ok_or("value undefined")?;
        ensure(got == expected, || format!("numeric oracle disagrees at t = {point}"))?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let c = example34a();
    let x = motivic_pv(&c)?;
    ensure(x.equals(&RingElem::zero()), || {
        format!("got {}", x.render(2, Default::default()))
    })?;
    oracle_agrees(&c, &x)?;
    Ok("pv = 0".into())
}

fn criterion_2() -> Outcome {
    let c = example34b();
    let x = motivic_pv(&c)?;
    // -L^{-3/2} (L + L^{1/2} + 1) with t = L^{1/2}
    let expected = -(&t(-3) * &(&(&t(2) + &t(1)) + &RingElem::one()));
    ensure(x.equals(&expected), || {
        format!("got {}", x.render(2, Default::default()))
    })?;
    oracle_agrees(&c, &x)?;
    Ok(x.render(2, Default::default()))
}

fn criterion_3() -> Outcome {
    let chain = figure2chain();
    let stages: Vec<_> = chain.stages.iter().map(|(_, s)| s).collect();
    ensure(stages.len() == 4, || "expected four stages".into())?;
    let expected = [("C3", rat(-1, 2)), ("C4", rat(-1, 1)), ("C5", rat(0, 1))];
    for (stage, (id, coefficient)) in stages[1..].iter().zip(&expected) {
        let alpha = stage.config.alpha(id).map_err(|e| e.to_string())?;
        ensure(alpha - Rational::one() == *coefficient, || {
            format!("coefficient of {id}")
        })?;
    }
    for (i, stage) in stages.iter().enumerate() {
        let poles = log_poles(&stage.config);
        let want: Vec<String> = if i >= 2 { vec!["C4".into()] } else { vec![] };
        ensure(poles == want, || format!("stage {i}: log poles {poles:?}"))?;
    }
    let first = invariance_report(stages[0], stages[1], Realization::Motivic);
    ensure(first.equal == Some(true), || "PV(P2) != PV(S1)".into())?;
    let zero = first.before.value().map(|v| v.expr.is_zero()) == Some(true);
    ensure(zero, || "PV(P2) is not 0".into())?;
    for pair in stages.windows(2).skip(1) {
        let r = invariance_report(pair[0], pair[1], Realization::Motivic);
        ensure(r.equal.is_none(), || "comparison should be undefined".into())?;
        ensure(
            matches!(r.after, PvStatus::NotDefined(ref ids) if ids == &["C4"]),
            || format!("after: {}", r.after),
        )?;
    }
    Ok("coefficients -1/2, -1, 0; log pole C4 from S2 on; PV(P2) = PV(S1) = 0".into())
}

fn criterion_4() -> Outcome {
    let alpha = exceptional_alpha(2, &[(rat(3, 2), 1), (rat(-1, 2), 1)]);
    ensure(alpha == rat_int(1), || format!("alpha = {alpha}"))?;
    ensure(figure1mult().alpha == rat_int(1), || "scenario disagrees".into())?;
    Ok("alpha = 1, coefficient 0".into())
}

fn criterion_5() -> Outcome {
    let mut compared = [0usize; 3];
    let mut skipped = 0usize;
    for seed in 0..500u64 {
        for kind in 0..3 {
            let mut s = random_surface(seed, 3, 4);
            let center = random_center(seed * 3 + kind as u64, &mut s, kind);
            let actual_kind = match center {
                motivic_pv::surfblow::BlowupCenter::Free => 0,
                motivic_pv::surfblow::BlowupCenter::OnCurve(_) => 1,
                motivic_pv::surfblow::BlowupCenter::AtDoublePoint(..) => 2,
            };
            let id = s.fresh_id("E");
            let after = blowup(&s, &center, &id).map_err(|e| format!("seed {seed}: {e}"))?;
            let gained = after.config.total_class().sub(&s.config.total_class());
            ensure(gained == MotClass::from_l_coeffs(s.config.m, &[0, 1]), || {
                format!("seed {seed} {center}: total class gained {}", gained.render(s.config.m))
            })?;
            if !log_poles(&s.config).is_empty() || !log_poles(&after.config).is_empty() {
                skipped += 1;
                continue;
            }
            let before = motivic_pv(&s.config)?;
            let later = motivic_pv(&after.config)?;
            ensure(before.equals(&later), || format!("seed {seed} {center}: PV changed"))?;
            compared[actual_kind] += 1;
        }
    }
    ensure(compared.iter().all(|&n| n >= 300), || {
        format!("too few comparisons: {compared:?}")
    })?;
    Ok(format!(
        "{} free, {} on-curve, {} double-point blow-ups equal; {skipped} with a log pole skipped",
        compared[0], compared[1], compared[2]
    ))
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for seed in 0..150u64 {
        let c = random_resolution(seed, 3, 4);
        ensure(c.components.iter().all(|x| !x.mult.alpha().is_zero()), || {
            "nu + N = 0 generated".into()
        })?;
        let z = zeta(&c, Realization::Motivic).map_err(|e| e.to_string())?;
        let at_one = z
            .expr
            .substitute(Var::Tau, &Monomial::var(Var::T, -1))
            .map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(z.at_s(1).map(|x| x.equals(&at_one)) == Ok(true), || {
            format!("seed {seed}: at_s(1)")
        })?;
        let closed = motivic_pv(&c)?;
        ensure(at_one.equals(&closed), || format!("seed {seed}: zeta(1) != pv"))?;
        oracle_agrees(&c, &at_one).map_err(|e| format!("seed {seed}: {e}"))?;
        count += 1;
    }
    Ok(format!("{count} resolution configs"))
}

/// Shifts `k/m` just above `max(-alpha_i, 0)`.
fn shifts(c: &StratifiedConfig) -> Vec<Rational> {
    let floor = c
        .components
        .iter()
        .map(|x| -x.mult.alpha())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    let m = rat_int(c.m);
    let start = (&floor * &m).floor() + Rational::one();
    (0..3).map(|k| (&start + rat_int(k)) / &m).collect()
}

fn positive_copy(c: &StratifiedConfig) -> StratifiedConfig {
    let mut out = c.clone();
    for comp in &mut out.components {
        comp.mult = Multiplicity::Alpha(comp.mult.alpha().abs());
    }
    out
}

fn hodge_checks(name: &str, c: &StratifiedConfig, converging: &mut usize) -> Result<(), String> {
    let fail = |what: &str| format!("{name}: {what}");
    let def2 = pv(c, Realization::Hodge, true).map_err(|e| fail(&e.to_string()))?.expr;
    let def1 = hodge_def1(c).map_err(|e| fail(&e.to_string()))?.expr;
    ensure(def1.equals(&def2), || fail("def1 != def2"))?;
    for a in shifts(c) {
        let alt = alt_zeta_pv(c, &a).map_err(|e| fail(&e.to_string()))?.expr;
        ensure(alt.equals(&def2), || fail(&format!("shifted zeta with a = {a}")))?;
    }
    if c.components.iter().all(|x| x.mult.alpha().is_positive()) {
        for s in 1..=5 {
            let direct = converging_integral(c, s).map_err(|e| fail(&e.to_string()))?;
            let via_z = hodge_z_at(c, s).map_err(|e| fail(&e.to_string()))?;
            ensure(direct.equals(&via_z), || fail(&format!("I({s}) != Z((uv)^-{s})")))?;
        }
        *converging += 1;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut scenarios_checked = 0;
    let mut converging = 0;
    for (name, c) in scenario_configs() {
        if !log_poles(&c).is_empty() {
            continue;
        }
        hodge_checks(&name, &c, &mut converging)?;
        hodge_checks(&format!("{name} (alpha > 0)"), &positive_copy(&c), &mut converging)?;
        scenarios_checked += 1;
    }
    let mut random = 0;
    for seed in 0..120u64 {
        let c = random_alpha_config(seed, 3, 4);
        hodge_checks(&format!("seed {seed}"), &c, &mut converging)?;
        hodge_checks(&format!("seed {seed} (alpha > 0)"), &positive_copy(&c), &mut converging)?;
        random += 1;
    }
    Ok(format!(
        "{scenarios_checked} scenarios and {random} random configs, 3 shifts each; {converging} converging-integral configs"
    ))
}

fn duality_holds(c: &StratifiedConfig) -> Result<bool, String> {
    let cs = ClosedStrataInput::from_config(c);
    let alphas: BTreeMap<String, Rational> = c.components.iter().map(|x| (x.id.clone(), x.mult.alpha())).collect();
    let report = functional_equation_check(&cs, &alphas, Realization::Motivic).map_err(|e| e.to_string())?;
    Ok(report.holds)
}

fn criterion_8() -> Outcome {
    let mut p1 = 0;
    for seed in 0..120u64 {
        let c = random_canonical(seed, Family::P1, 3, 5);
        ensure(duality_holds(&c)?, || format!("p1 seed {seed}"))?;
        p1 += 1;
    }
    let mut p2 = 0;
    for seed in 0..60u64 {
        let c = random_canonical(seed, Family::P2Lines, 3, 4);
        ensure(duality_holds(&c)?, || format!("p2lines seed {seed}"))?;
        p2 += 1;
    }

    // P^1 with alpha = (3/2, 1/2, -1): PVu(L = 4) = 10/7, PVu(L = 1/4) = 5/14.
    let c = scenarios::p1_points(&[rat(3, 2), rat(1, 2), rat(-1, 1)]).map_err(|e| e.to_string())?;
    ensure(duality_holds(&c)?, || "P^1 instance".into())?;
    let pvu = pv(&c, Realization::Motivic, false).map_err(|e| e.to_string())?;
    let at = |l: Rational| specialize(&pvu, &l).map_err(|e| e.to_string());
    ensure(at(rat_int(4))? == Scalar::Exact(rat(10, 7)), || "PVu(4) != 10/7".into())?;
    ensure(at(rat(1, 4))? == Scalar::Exact(rat(5, 14)), || {
        "PVu(1/4) != 5/14".into()
    })?;
    ensure(naive_pv_at(&c, &rat_int(2), false) == Some(rat(10, 7)), || {
        "oracle PVu(4)".into()
    })?;
    ensure(naive_pv_at(&c, &rat(1, 2), false) == Some(rat(5, 14)), || {
        "oracle PVu(1/4)".into()
    })?;

    // Example B: PVu = -(L^{3/2} + L + L^{1/2}), D(PVu) = L^{-2} PVu.
    let b = example34b();
    ensure(duality_holds(&b)?, || "example B".into())?;
    let pvu = pv(&b, Realization::Motivic, false).map_err(|e| e.to_string())?.expr;
    let hand = -(&(&t(3) + &t(2)) + &t(1));
    ensure(pvu.equals(&hand), || "example B PVu".into())?;
    ensure(
        hand.invert_variables()
            .equals(&hand.mul_monomial(&Monomial::var(Var::T, -4))),
        || "example B dual".into(),
    )?;

    // No divisor, palindromic classes.
    for (n, coeffs) in [
        (1usize, vec![1, 1]),
        (2, vec![1, 1, 1]),
        (2, vec![1, 2, 1]),
        (3, vec![1, 1, 1, 1]),
    ] {
        let x = StratifiedConfig::new(n, 1).add_stratum::<&str>(&[], MotClass::from_l_coeffs(1, &coeffs));
        ensure(duality_holds(&x)?, || format!("empty divisor {coeffs:?}"))?;
    }
    Ok(format!(
        "{p1} P^1 and {p2} P^2 canonical configs plus the three fixed instances"
    ))
}

fn criterion_9() -> Outcome {
    let mut count = 0;
    for seed in 0..120u64 {
        let base = random_alpha_config(seed, 3, 3);
        let (augmented, added) = with_unit_components(seed, &base, 1 + (seed % 3) as usize);
        let deleted = delete_unit_components(&augmented, &added).map_err(|e| e.to_string())?;
        let lhs = motivic_pv(&deleted)?;
        let rhs = motivic_pv(&augmented)?;
        ensure(lhs.equals(&rhs), || format!("seed {seed}: deletion changed PV"))?;
        ensure(rhs.equals(&motivic_pv(&base)?), || {
            format!("seed {seed}: augmented PV differs")
        })?;
        oracle_agrees(&augmented, &rhs).map_err(|e| format!("seed {seed}: {e}"))?;
        count += 1;
    }
    Ok(format!("{count} augmented configs"))
}

fn criterion_10() -> Outcome {
    for (n, m, coeffs) in [
        (1usize, 1i64, vec![1, 1]),
        (2, 2, vec![1, 1, 1]),
        (3, 3, vec![1, 3, 3, 1]),
        (2, 1, vec![5, 0, 1]),
    ] {
        let class = MotClass::from_l_coeffs(m, &coeffs);
        let c = StratifiedConfig::new(n, m).add_stratum::<&str>(&[], class.clone());
        let x = motivic_pv(&c)?;
        let expected = RingElem::from_poly(class.lpoly.unwrap()).mul_monomial(&Monomial::var(Var::T, -(n as i64) * m));
        ensure(x.equals(&expected), || format!("empty divisor n = {n}"))?;
    }
    let v = pv(&example34b(), Realization::Motivic, true).map_err(|e| e.to_string())?;
    let got = specialize(&v, &rat_int(4)).map_err(|e| e.to_string())?;
    // t = 2: -(t^2 + t + 1) / t^3
    let oracle = -rat(4 + 2 + 1, 8);
    ensure(oracle == rat(-7, 8), || "oracle arithmetic".into())?;
    ensure(got == Scalar::Exact(oracle), || format!("specialization gave {got}"))?;
    Ok("pv = L^-n [X]; example B at L = 4 is -7/8".into())
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["mpv"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn criterion_11() -> Outcome {
    let mut round_trips = 0;
    for (name, c) in scenario_configs() {
        let doc = ConfigDocument::from_config(&c);
        let back = parse_config(&doc.to_json()).map_err(|e| format!("{name}: {e}"))?;
        ensure(back.config == c, || format!("{name}: document round trip"))?;
        if log_poles(&c).is_empty() {
            for r in [Realization::Motivic, Realization::Hodge] {
                let x = pv(&c, r, true).map_err(|e| e.to_string())?;
                let pretty = cli::emit(&x.expr, c.m, Format::Pretty);
                let parsed = parse_expr(&pretty, c.m, Symbols::Any).map_err(|e| format!("{name}: {pretty}: {e}"))?;
                ensure(parsed.equals(&x.expr), || {
                    format!("{name}: pretty round trip of {pretty}")
                })?;
                let json = cli::emit(&x.expr, c.m, Format::Json);
                let machine = serde_json::from_str(&json).map_err(|e| e.to_string())?;
                let parsed = RingElem::from_machine(&machine).map_err(|e| e.to_string())?;
                ensure(parsed.equals(&x.expr), || format!("{name}: json round trip"))?;
                ensure(cli::emit(&x.expr, c.m, Format::Json) == json, || {
                    "json not stable".into()
                })?;
            }
        }
        round_trips += 1;
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let write = |name: &str, text: &str| fs::write(dir.path().join(name), text).map_err(|e| e.to_string());
    write("a.json", &ConfigDocument::from_config(&example34a()).to_json())?;
    write("b.json", &ConfigDocument::from_config(&example34b()).to_json())?;
    write("bad.json", "{\"dimension\": 2,")?;
    write(
        "extra.json",
        r#"{"dimension": 1, "denominator": 1, "components": [], "strata": [], "x": 1}"#,
    )?;
    write(
        "third.json",
        r#"{"dimension": 1, "denominator": 2, "components": [], "strata": [{"subset": [], "class": {"L": "L^(1/3)"}}]}"#,
    )?;
    write(
        "both.json",
        r#"{"dimension": 1, "denominator": 1, "components": [{"id": "P", "alpha": "1", "nu": "1", "N": "0"}], "strata": []}"#,
    )?;
    write(
        "curve.json",
        r#"{"dimension": 1, "denominator": 1, "components": [], "strata": [{"subset": [], "class": {"L": "L + 1"}}]}"#,
    )?;
    write(
        "skew.json",
        r#"{"dimension": 1, "denominator": 1, "components": [],
            "closed_strata": [{"subset": [], "class": {"L": "2*L + 1"}, "dim": 1}]}"#,
    )?;
    let (code, ..) = run_cli(&[
        "blowup",
        &path("a.json"),
        "--center",
        "curve:C2",
        "--id",
        "C3",
        "--out",
        &path("s1.json"),
    ]);
    ensure(code == 0, || format!("blowup to S1 exited {code}"))?;
    let (code, ..) = run_cli(&[
        "blowup",
        &path("s1.json"),
        "--center",
        "point:C2,C3",
        "--id",
        "C4",
        "--out",
        &path("s2.json"),
    ]);
    ensure(code == 0, || format!("blowup to S2 exited {code}"))?;

    let table: Vec<(Vec<String>, i32)> = vec![
        (vec!["pv".into(), path("a.json")], 0),
        (
            vec![
                "scenario".into(),
                "example34b".into(),
                "--format".into(),
                "pretty".into(),
            ],
            0,
        ),
        (vec!["check".into(), path("b.json")], 0),
        (vec!["pv".into(), path("missing.json")], 2),
        (vec!["pv".into(), path("bad.json")], 2),
        (vec!["pv".into(), path("extra.json")], 2),
        (vec!["pv".into(), path("third.json")], 2),
        (vec!["pv".into(), path("both.json")], 2),
        (vec!["frobnicate".into()], 2),
        (vec!["scenario".into(), "nosuch".into()], 2),
        (vec!["pv".into(), path("s2.json")], 3),
        (vec!["specialize".into(), path("s2.json"), "--L".into(), "4".into()], 3),
        (vec!["hodge-pv".into(), path("a.json"), "--s".into(), "0".into()], 4),
        (vec!["hodge-pv".into(), path("b.json"), "--a".into(), "1/2".into()], 4),
        (
            vec!["blowup".into(), path("a.json"), "--center".into(), "point:C1,C1".into()],
            4,
        ),
        (
            vec!["blowup".into(), path("curve.json"), "--center".into(), "free".into()],
            4,
        ),
        (vec!["scenario".into(), "p1points:1/2".into()], 4),
        (vec!["specialize".into(), path("b.json"), "--L".into(), "0".into()], 4),
        (vec!["check".into(), path("skew.json")], 5),
    ];
    for (args, want) in &table {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _, err) = run_cli(&refs);
        ensure(code == *want, || {
            format!("mpv {} exited {code}, expected {want}: {err}", args.join(" "))
        })?;
    }
    let (_, out, _) = run_cli(&["scenario", "example34b", "--format", "pretty"]);
    ensure(out.trim() == "-(L + L^(1/2) + 1)/L^(3/2)", || {
        format!("scenario output {out:?}")
    })?;
    let (_, _, err) = run_cli(&["pv", &path("s2.json")]);
    ensure(err.contains("C4"), || format!("log pole diagnostic {err:?}"))?;
    Ok(format!(
        "{round_trips} scenario configs round trip; {} exit-code cases",
        table.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("example A PV is exactly 0", criterion_1),
        ("example B PV is -L^(-3/2)(L + L^(1/2) + 1)", criterion_2),
        (
            "three-blow-up chain multiplicities, log poles and invariance",
            criterion_3,
        ),
        ("tangency blow-up has multiplicity zero", criterion_4),
        ("blow-up invariance on random surfaces", criterion_5),
        ("zeta at s = 1 matches alpha = nu + N", criterion_6),
        ("Hodge definitions agree", criterion_7),
        ("duality functional equation", criterion_8),
        ("deleting alpha = 1 components", criterion_9),
        ("empty divisor and specialization at L = 4", criterion_10),
        ("CLI round trip and exit codes", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
