use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::ratfunc::RationalFunc;
use crate::error::{Error, Result};
use crate::quadratic::Quadratic;

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut r = q;
            while r.is_multiple_of(p) {
                r /= p;
            }
            return r == 1;
        }
        p += 1;
    }
    true
}

fn eval_poly(p: &Poly, v: &Quadratic, t: &BigRational) -> Quadratic {
    let v_inv = v.inv().expect("v = sqrt(q) is nonzero");
    let mut acc = v.zero_like();
    for m in p.terms() {
        let vp = if m.v_exp >= 0 {
            v.pow(m.v_exp as u32)
        } else {
            v_inv.pow(m.v_exp.unsigned_abs() as u32)
        };
        let tp = num_traits::pow(t.clone(), m.t_exp as usize);
        let c = v.lift(BigRational::from_integer(m.coefficient.clone()) * tp);
        acc = &acc + &(&c * &vp);
    }
    acc
}

/// Value at `v = √q` and the given `t`; `None` at a pole.
pub fn eval_at(rf: &RationalFunc, q: u64, t: &BigRational) -> Option<Quadratic> {
    let v = Quadratic::sqrt_of(BigRational::from_integer(BigInt::from(q)));
    let den = eval_poly(rf.denominator(), &v, t);
    if den.is_zero() {
        return None;
    }
    Some(&eval_poly(rf.numerator(), &v, t) / &den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SampleStatus {
    Nonzero,
    Zero,
    Pole,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleValue {
    pub q: u64,
    pub status: SampleStatus,
    pub value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonvanishingReport {
    pub function: String,
    /// The function at `t = 1` as a rational function of `v`, or `None`
    /// when the denominator vanishes identically there.
    pub symbolic: Option<String>,
    pub samples: Vec<SampleValue>,
    pub nonvanishing: bool,
}

fn laurent_at_t_one(p: &Poly) -> Poly {
    let m: BTreeMap<i64, BigInt> = p.at_t_one();
    let mut out = Poly::zero();
    for (v, c) in m {
        out = out.add(&Poly::monomial(c, v, 0));
    }
    out
}

/// Substitutes `s = 0` (`t = 1`) symbolically and at each `q`.
pub fn eval_nonvanishing_at_s0(rf: &RationalFunc, q_samples: &[u64]) -> Result<NonvanishingReport> {
    if let Some(&bad) = q_samples.iter().find(|&&q| !is_prime_power(q)) {
        return Err(Error::InvalidInput(format!("{bad} is not a prime power")));
    }
    let num = laurent_at_t_one(rf.numerator());
    let den = laurent_at_t_one(rf.denominator());
    let symbolic = RationalFunc::new(num, den).ok().map(|f| f.to_string());

    let one = BigRational::from_integer(BigInt::from(1));
    let samples: Vec<SampleValue> = q_samples
        .iter()
        .map(|&q| match eval_at(rf, q, &one) {
            None => SampleValue {
                q,
                status: SampleStatus::Pole,
                value: None,
            },
            Some(x) => SampleValue {
                q,
                status: if x.is_zero() {
                    SampleStatus::Zero
                } else {
                    SampleStatus::Nonzero
                },
                value: Some(x.to_string()),
            },
        })
        .collect();
    let nonvanishing = symbolic.as_deref().is_some_and(|s| s != "0")
        && samples.iter().all(|s| s.status == SampleStatus::Nonzero);
    Ok(NonvanishingReport {
        function: rf.to_string(),
        symbolic,
        samples,
        nonvanishing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfactor::{gj_l_trivial, i2_ratio, tate_l, RamificationTag, TateChar};
    use num_rational::Rational64;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn prime_powers() {
        let yes = [2, 3, 4, 5, 7, 8, 9, 25, 27, 49, 121];
        let no = [0, 1, 6, 10, 12, 18, 36];
        assert!(yes.iter().all(|&x| is_prime_power(x)));
        assert!(no.iter().all(|&x| !is_prime_power(x)));
    }

    #[test]
    fn i2_unramified_at_q9() {
        let f = i2_ratio(1, RamificationTag::Unramified).unwrap().ratio;
        let rep = eval_nonvanishing_at_s0(&f, &[9]).unwrap();
        assert_eq!(rep.samples[0].status, SampleStatus::Nonzero);
        assert_eq!(eval_at(&f, 9, &q(1, 1)).unwrap().a, q(-1, 4));
        assert!(rep.nonvanishing);
        assert_eq!(rep.symbolic.as_deref(), Some("2/(1 - v^2)"));
    }

    #[test]
    fn i2_ramified_is_one_over_one_minus_q_to_d() {
        for d in 1..=5u32 {
            let f = i2_ratio(d as usize, RamificationTag::Ramified).unwrap().ratio;
            for qq in [2u64, 3, 4, 5, 7, 9] {
                let x = eval_at(&f, qq, &q(1, 1)).unwrap();
                let expect = BigRational::from_integer(1.into())
                    / (BigRational::from_integer(1.into())
                        - BigRational::from_integer(BigInt::from(qq).pow(d)));
                assert!(x.is_rational());
                assert_eq!(x.a, expect);
            }
        }
    }

    #[test]
    fn constant_one() {
        let rep = eval_nonvanishing_at_s0(&RationalFunc::one(), &[2, 3]).unwrap();
        assert!(rep.nonvanishing);
    }

    #[test]
    fn pole_is_not_zero() {
        let f = tate_l(
            TateChar::TrivF,
            RamificationTag::Unramified,
            Rational64::from_integer(0),
            1,
        )
        .unwrap();
        let rep = eval_nonvanishing_at_s0(&f, &[3]).unwrap();
        assert_eq!(rep.samples[0].status, SampleStatus::Pole);
        assert!(!rep.nonvanishing);
        assert!(rep.symbolic.is_none());
    }

    #[test]
    fn zero_is_reported() {
        let f = RationalFunc::from_poly(Poly::one().sub(&Poly::monomial(1, 0, 1)));
        let rep = eval_nonvanishing_at_s0(&f, &[3]).unwrap();
        assert_eq!(rep.samples[0].status, SampleStatus::Zero);
        assert!(!rep.nonvanishing);
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(eval_nonvanishing_at_s0(&RationalFunc::one(), &[6]).is_err());
    }

    #[test]
    fn gj_spot_check_q4_s1() {
        // L(1, s − 1/2) · L(1, s + 1/2) at q = 4, s = 1: 1/(1 − 1/2) · 1/(1 − 1/8)
        let f = gj_l_trivial(2, 1, Rational64::from_integer(0), 1).unwrap();
        let x = eval_at(&f, 4, &q(1, 4)).unwrap();
        assert_eq!(x.a, q(2, 1) * q(8, 7));
    }

    #[test]
    fn irrational_v() {
        // 1/(1 - v t) at q = 2, t = 1: 1/(1 - √2) = -(1 + √2)
        let f = RationalFunc::new(Poly::one(), Poly::one().sub(&Poly::monomial(1, 1, 1))).unwrap();
        let x = eval_at(&f, 2, &q(1, 1)).unwrap();
        assert_eq!((x.a.clone(), x.b.clone()), (q(-1, 1), q(-1, 1)));
    }
}
