use std::fmt;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};

/// A reduced fraction in `Z[v^{±1}, t]`.
///
/// Normal form: numerator and denominator coprime, the denominator has
/// minimal `v` exponent 0 and a positive first term in `(t, v)` order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RationalFunc {
    numerator: Poly,
    denominator: Poly,
}

#[derive(Deserialize)]
struct RawRationalFunc {
    numerator: Poly,
    denominator: Poly,
}

impl<'de> Deserialize<'de> for RationalFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawRationalFunc::deserialize(d)?;
        RationalFunc::new(raw.numerator, raw.denominator).map_err(D::Error::custom)
    }
}

impl RationalFunc {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Self::normalize(numerator, denominator))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunc::zero();
        }
        let a = num.min_v_exp().unwrap_or(0);
        let b = den.min_v_exp().unwrap_or(0);
        let (n0, d0) = (num.shift_v(-a), den.shift_v(-b));
        let g = n0.gcd(&d0);
        let mut n1 = n0.exact_div(&g).expect("gcd divides numerator");
        let mut d1 = d0.exact_div(&g).expect("gcd divides denominator");
        // dividing can leave a power of v in the denominator
        let db = d1.min_v_exp().unwrap_or(0);
        d1 = d1.shift_v(-db);
        n1 = n1.shift_v(a - b - db);
        if d1.leading_sign_negative() {
            n1 = n1.neg();
            d1 = d1.neg();
        }
        RationalFunc {
            numerator: n1,
            denominator: d1,
        }
    }

    pub fn zero() -> Self {
        RationalFunc {
            numerator: Poly::zero(),
            denominator: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunc::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::normalize(p, Poly::one())
    }

    pub fn monomial(c: impl Into<BigInt>, v_exp: i64, t_exp: u32) -> Self {
        RationalFunc::from_poly(Poly::monomial(c, v_exp, t_exp))
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::normalize(
            self.numerator
                .mul(&o.denominator)
                .add(&o.numerator.mul(&self.denominator)),
            self.denominator.mul(&o.denominator),
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunc {
            numerator: self.numerator.neg(),
            denominator: self.denominator.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalize(
            self.numerator.mul(&o.numerator),
            self.denominator.mul(&o.denominator),
        )
    }

    pub fn inv(&self) -> Result<Self> {
        RationalFunc::new(self.denominator.clone(), self.numerator.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::normalize(self.numerator.pow(e), self.denominator.pow(e))
    }

    /// The quotient `self / other` when it is `c · v^a · t^b / (c' · t^b')`,
    /// i.e. a unit up to scalars in the ring of `q^{±s}`-Laurent series.
    pub fn unit_quotient(&self, other: &Self) -> Option<(Monomial, Monomial)> {
        let q = self.div(other).ok()?;
        Some((q.numerator.as_monomial()?, q.denominator.as_monomial()?))
    }

    pub fn unit_equivalent(&self, other: &Self) -> bool {
        self.unit_quotient(other).is_some()
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", wrap(&self.numerator), wrap(&self.denominator))
        }
    }
}
