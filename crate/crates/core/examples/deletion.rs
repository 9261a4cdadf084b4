//! Components with alpha = 1 do not contribute: deleting them and merging
//! their strata leaves the principal value unchanged.

use motivic_pv::exactring::Style;
use motivic_pv::scenarios::{example34b, with_unit_components};
use motivic_pv::stratconfig::Realization;
use motivic_pv::zetapv::{delete_unit_components, pv};

fn main() {
    let (c, added) = with_unit_components(3, &example34b(), 2);
    println!("with {} unit components: {} strata", added.len(), c.open_strata.len());
    let reduced = delete_unit_components(&c, &added).unwrap();
    let before = pv(&c, Realization::Motivic, true).unwrap();
    let after = pv(&reduced, Realization::Motivic, true).unwrap();
    println!("before: {}", before.render(Style::Pretty));
    println!("after:  {}", after.render(Style::Pretty));
    assert!(before.expr.equals(&after.expr));
}
