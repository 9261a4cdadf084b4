//! A chain of point blow-ups starting from two lines in the plane. The
//! principal value stays the same while it is defined; the last stage
//! acquires a component with alpha = 0.

use motivic_pv::exactring::format_rational;
use motivic_pv::scenarios::figure2chain;
use motivic_pv::stratconfig::Realization;
use motivic_pv::surfblow::{invariance_report, PvStatus};

fn main() {
    let chain = figure2chain();
    for (label, stage) in &chain.stages {
        let alphas: Vec<String> = stage
            .config
            .components
            .iter()
            .map(|c| format!("{}={}", c.id, format_rational(&c.mult.alpha())))
            .collect();
        println!(
            "{label:6} [{}]  {}",
            alphas.join(" "),
            PvStatus::of(&stage.config, Realization::Motivic)
        );
    }
    for (pair, center) in chain.stages.windows(2).zip(&chain.centers) {
        let report = invariance_report(&pair[0].1, &pair[1].1, Realization::Motivic);
        println!("{} -> {} at {center}: {:?}", pair[0].0, pair[1].0, report.equal);
    }
}
