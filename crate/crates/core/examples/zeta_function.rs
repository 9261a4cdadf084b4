//! The zeta function of a configuration with resolution data, and its value
//! at s = 1 compared with the principal value built from alpha = nu + N.

use motivic_pv::exactring::{rat, Style};
use motivic_pv::stratconfig::{ComponentData, MotClass, Realization, StratifiedConfig};
use motivic_pv::zetapv::{pv_from_resolution, zeta};

fn main() {
    // three exceptional curves in a chain E1 - E3 - E2 over a point of P^2
    let c = StratifiedConfig::new(2, 1)
        .with_component(ComponentData::resolution("E1", rat(2, 1), rat(2, 1)))
        .with_component(ComponentData::resolution("E2", rat(3, 1), rat(3, 1)))
        .with_component(ComponentData::resolution("E3", rat(5, 1), rat(6, 1)))
        .add_stratum::<&str>(&[], MotClass::from_l_coeffs(1, &[0, 1, 1]))
        .add_stratum(&["E1"], MotClass::from_l_coeffs(1, &[0, 1]))
        .add_stratum(&["E2"], MotClass::from_l_coeffs(1, &[0, 1]))
        .add_stratum(&["E3"], MotClass::from_l_coeffs(1, &[-1, 1]))
        .add_stratum(&["E1", "E3"], MotClass::integer(1))
        .add_stratum(&["E2", "E3"], MotClass::integer(1));

    assert!(c.validate().is_valid());
    let z = zeta(&c, Realization::Motivic).unwrap();
    println!("Z(s)   = {}", z.render(Style::Pretty));
    for s in 1..=3 {
        println!("Z({s})   = {}", z.at_s(s).unwrap().render(c.m, Style::Pretty));
    }
    let via = pv_from_resolution(&c, Realization::Motivic).unwrap();
    println!("PV     = {}", via.render(Style::Pretty));
}
