//! Blow-up invariance on random surface configurations, across all three
//! kinds of centers.

use motivic_pv::scenarios::{random_center, random_surface};
use motivic_pv::stratconfig::Realization;
use motivic_pv::surfblow::{blowup, invariance_report};

fn main() {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let (mut equal, mut skipped) = (0, 0);
    for i in 0..60 {
        let mut s = random_surface(seed + i, 4, 3);
        let center = random_center(seed + i, &mut s, i as usize);
        let after = blowup(&s, &center, &s.fresh_id("E")).expect("valid center");
        match invariance_report(&s, &after, Realization::Motivic).equal {
            Some(true) => equal += 1,
            Some(false) => panic!("PV changed at seed {}", seed + i),
            None => skipped += 1,
        }
    }
    println!("{equal} blow-ups preserved PV, {skipped} had a log pole on one side");
}
