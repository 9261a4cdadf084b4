//! The two Hodge-level definitions of the principal value, the shifted
//! zeta function at s = -1, and the converging integrals for s = 1..5.

use motivic_pv::exactring::{rat, Style};
use motivic_pv::scenarios::p2_lines;
use motivic_pv::stratconfig::Realization;
use motivic_pv::zetapv::{alt_zeta_pv, converging_integral, hodge_def1, hodge_z_at, pv};

fn main() {
    let c = p2_lines(&[rat(1, 2), rat(1, 2), rat(1, 2), rat(-1, 2)]).unwrap();
    let def1 = hodge_def1(&c).unwrap();
    let def2 = pv(&c, Realization::Hodge, true).unwrap();
    println!("definition 1: {}", def1.render(Style::Pretty));
    println!("definition 2: {}", def2.render(Style::Pretty));
    for a in [rat(2, 1), rat(5, 2), rat(4, 1)] {
        let shifted = alt_zeta_pv(&c, &a).unwrap();
        println!("shift a = {a}: equal = {}", shifted.expr.equals(&def2.expr));
    }

    let positive = p2_lines(&[rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)]).unwrap();
    for s in 1..=5 {
        let i = converging_integral(&positive, s).unwrap();
        let z = hodge_z_at(&positive, s).unwrap();
        println!("s = {s}: I(s) = Z((uv)^-s): {}", i.equals(&z));
    }
}
