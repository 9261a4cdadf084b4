//! Exact motivic zeta functions and principal value integrals of
//! multi-valued differential forms on stratified normal-crossings data.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactring`]: Laurent polynomials and their fractions with exact
//!   rational coefficients, in the scaled variables `t = L^(1/m)`,
//!   `tau = T^(1/m)`, `U = u^(1/m)`, `V = v^(1/m)`.
//! * [`stratconfig`]: components, multiplicities and classes of strata.
//! * [`zetapv`]: zeta functions, principal value integrals, duality and
//!   deletion of unit components.
//! * [`surfblow`]: point blow-ups of surface configurations.
//! * [`scenarios`]: the worked examples and seeded random families.
//! * [`cli`]: the JSON document format, the class expression grammar and the
//!   `mpv` command dispatcher.

pub mod cli;
pub mod exactring;
pub mod scenarios;
pub mod stratconfig;
pub mod surfblow;
pub mod zetapv;
