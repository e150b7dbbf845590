use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::ratfunc::RationalFunc;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TateChar {
    TrivF,
    Eta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RamificationTag {
    Unramified,
    Ramified,
}

impl RamificationTag {
    pub const ALL: [RamificationTag; 2] = [RamificationTag::Unramified, RamificationTag::Ramified];

    pub fn from_flag(ramified: bool) -> Self {
        if ramified {
            RamificationTag::Ramified
        } else {
            RamificationTag::Unramified
        }
    }
}

impl fmt::Display for RamificationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RamificationTag::Unramified => "unramified",
            RamificationTag::Ramified => "ramified",
        })
    }
}

fn twice(c: Rational64) -> Result<i64> {
    let t = c * 2;
    if t.is_integer() {
        Ok(t.to_integer())
    } else {
        Err(Error::InvalidInput(format!("shift {c} is not a half-integer")))
    }
}

// 1/(1 - sign · v^{v_exp} · t^{e}), clearing a negative t power.
fn geometric(sign: i64, v_exp: i64, e: i64) -> Result<RationalFunc> {
    let k = e.unsigned_abs() as u32;
    let (num, den) = if e >= 0 {
        (Poly::one(), Poly::one().sub(&Poly::monomial(sign, v_exp, k)))
    } else {
        (
            Poly::monomial(1, 0, k),
            Poly::monomial(1, 0, k).sub(&Poly::monomial(sign, v_exp, 0)),
        )
    };
    if den.is_zero() {
        return Err(Error::InvalidInput("L-factor has a pole for every s".into()));
    }
    RationalFunc::new(num, den)
}

/// `L(χ, c + e·s)` with `q^{-c} = v^{-2c}`.
pub fn tate_l(ch: TateChar, ram: RamificationTag, c: Rational64, e: i64) -> Result<RationalFunc> {
    let v_exp = -twice(c)?;
    match (ch, ram) {
        (TateChar::TrivF, _) => geometric(1, v_exp, e),
        (TateChar::Eta, RamificationTag::Unramified) => geometric(-1, v_exp, e),
        (TateChar::Eta, RamificationTag::Ramified) => Ok(RationalFunc::one()),
    }
}

/// `L(1_{E*}, c + e·s)`: residue field of size `q²` when unramified, `q` otherwise.
pub fn l_e(ram: RamificationTag, c: Rational64, e: i64) -> Result<RationalFunc> {
    match ram {
        RamificationTag::Unramified => geometric(1, -2 * twice(c)?, 2 * e),
        RamificationTag::Ramified => tate_l(TateChar::TrivF, ram, c, e),
    }
}

/// Shifts of the Tate factors whose product is `L(1_{GL(k,D)}, c + e·s)`.
pub fn gj_shifts(k: usize, d: usize, c: Rational64) -> Result<Vec<Rational64>> {
    if k == 0 || d == 0 {
        return Err(Error::InvalidInput(format!(
            "block size and index must be positive, got k = {k}, d = {d}"
        )));
    }
    let (k, d) = (k as i64, d as i64);
    Ok((0..k)
        .map(|i| c + Rational64::new(2 * i - (k - 1), 2) * d + Rational64::new(d - 1, 2))
        .collect())
}

/// Godement–Jacquet: `L(1_{GL(k,D)}, ·)` as a product of shifted Tate factors of `F*`.
pub fn gj_l_trivial(k: usize, d: usize, c: Rational64, e: i64) -> Result<RationalFunc> {
    gj_shifts(k, d, c)?
        .into_iter()
        .try_fold(RationalFunc::one(), |acc, shift| {
            Ok(acc.mul(&tate_l(TateChar::TrivF, RamificationTag::Unramified, shift, e)?))
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct I2Ratio {
    pub d: usize,
    pub ram: RamificationTag,
    /// `L(1_{F*}, d(2s−1)) / L(η, 2ds)`.
    pub ratio: RationalFunc,
    /// `L(1_{GL(2,D)}, 2ds + (1−2d)/2) / L(1_{E*}, 2ds)`.
    pub via_chain: RationalFunc,
    pub chain_holds: bool,
}

pub fn i2_ratio(d: usize, ram: RamificationTag) -> Result<I2Ratio> {
    if d == 0 {
        return Err(Error::InvalidInput("d must be positive".into()));
    }
    let di = d as i64;
    let e = 2 * di;
    let ratio = tate_l(TateChar::TrivF, ram, Rational64::from_integer(-di), e)?.div(&tate_l(
        TateChar::Eta,
        ram,
        Rational64::zero(),
        e,
    )?)?;
    let via_chain =
        gj_l_trivial(2, d, Rational64::new(1 - 2 * di, 2), e)?.div(&l_e(ram, Rational64::zero(), e)?)?;
    Ok(I2Ratio {
        d,
        ram,
        chain_holds: via_chain == ratio,
        ratio,
        via_chain,
    })
}
