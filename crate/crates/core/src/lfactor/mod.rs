//! Exact L-factor arithmetic in `v = q^{1/2}` and `t = q^{-s}`.

mod eval;
mod poly;
mod ratfunc;
mod tate;
mod upoly;

pub use eval::{
    eval_at, eval_nonvanishing_at_s0, is_prime_power, NonvanishingReport, SampleStatus, SampleValue,
};
pub use poly::{Monomial, Poly};
pub use ratfunc::RationalFunc;
pub use tate::{gj_l_trivial, gj_shifts, i2_ratio, l_e, tate_l, I2Ratio, RamificationTag, TateChar};
