//! The duality functional equation for points on a line and lines in the
//! plane, including an alpha assignment that ignores the canonical degree.

use std::collections::BTreeMap;

use motivic_pv::exactring::{rat, Rational};
use motivic_pv::scenarios::{p1_points, p2_lines};
use motivic_pv::stratconfig::{ClosedStrataInput, Realization};
use motivic_pv::zetapv::functional_equation_check;

fn alphas_of(c: &motivic_pv::stratconfig::StratifiedConfig) -> BTreeMap<String, Rational> {
    c.components.iter().map(|x| (x.id.clone(), x.mult.alpha())).collect()
}

fn main() {
    let configs = [
        p1_points(&[rat(3, 2), rat(1, 2), rat(-1, 1)]).unwrap(),
        p2_lines(&[rat(1, 2), rat(1, 2), rat(-1, 1)]).unwrap(),
    ];
    for c in &configs {
        let report =
            functional_equation_check(&ClosedStrataInput::from_config(c), &alphas_of(c), Realization::Motivic).unwrap();
        println!("{report}\n");
    }

    let mut skew = alphas_of(&configs[0]);
    skew.insert("P1".into(), rat(5, 1));
    let report = functional_equation_check(
        &ClosedStrataInput::from_config(&configs[0]),
        &skew,
        Realization::Motivic,
    )
    .unwrap();
    println!("P1 with alpha = 5:\n{report}");
}
