//! Orbit combinatorics, character-support solving, L-factor arithmetic and
//! finite-field oracles for distinction of Steinberg representations of
//! `GL(m, D⊗E)` by `GL(m, D)`.

pub mod coset;
pub mod engine;
pub mod error;
pub mod lfactor;
pub mod oracle;
pub mod quadratic;
pub mod solver;

pub use error::{Error, Result};
