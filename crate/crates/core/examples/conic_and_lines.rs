//! Principal value integrals of two plane divisors: two lines with
//! multiplicity -1/2 each, and a smooth conic with multiplicity -1/2.

use motivic_pv::exactring::{rat, Style};
use motivic_pv::scenarios::{example34a, example34b};
use motivic_pv::stratconfig::Realization;
use motivic_pv::zetapv::{pv, specialize};

fn main() {
    for (name, c) in [("two lines", example34a()), ("conic", example34b())] {
        let motivic = pv(&c, Realization::Motivic, true).expect("no log poles");
        let hodge = pv(&c, Realization::Hodge, true).expect("no log poles");
        println!("{name}");
        println!("  PV        = {}", motivic.render(Style::Pretty));
        println!("  Hodge PV  = {}", hodge.render(Style::Pretty));
        println!("  at L = 4  = {}", specialize(&motivic, &rat(4, 1)).unwrap());
    }
}
