//! Writes a configuration as a JSON document, reads it back, and prints
//! the principal value in both output formats.

use motivic_pv::cli::{emit, parse_config, ConfigDocument, Format};
use motivic_pv::scenarios::example34a;
use motivic_pv::stratconfig::Realization;
use motivic_pv::zetapv::pv;

fn main() {
    let doc = ConfigDocument::from_config(&example34a()).to_json();
    println!("{doc}");
    let parsed = parse_config(&doc).expect("own output parses");
    assert_eq!(parsed.config, example34a());
    let x = pv(&parsed.config, Realization::Motivic, true).unwrap();
    println!("{}", emit(&x.expr, x.m, Format::Pretty));
    println!("{}", emit(&x.expr, x.m, Format::Json));
}
