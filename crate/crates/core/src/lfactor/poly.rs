//! Integer polynomials in `t` with Laurent coefficients in `v`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::upoly::{self, UPoly};

/// `coefficient · v^v_exp · t^t_exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coefficient: BigInt,
    pub v_exp: i64,
    pub t_exp: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coefficient {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct RawMonomial {
    coefficient: Coefficient,
    v: i64,
    t: u32,
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coefficient = match self.coefficient.to_i64() {
            Some(c) => Coefficient::Small(c),
            None => Coefficient::Big(self.coefficient.to_string()),
        };
        RawMonomial {
            coefficient,
            v: self.v_exp,
            t: self.t_exp,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawMonomial::deserialize(d)?;
        let coefficient = match raw.coefficient {
            Coefficient::Small(c) => BigInt::from(c),
            Coefficient::Big(s) => s.parse().map_err(D::Error::custom)?,
        };
        Ok(Monomial {
            coefficient,
            v_exp: raw.v,
            t_exp: raw.t,
        })
    }
}

/// Sparse polynomial keyed by `(t_exp, v_exp)`; zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<(u32, i64), BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(1, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, v_exp: i64, t_exp: u32) -> Self {
        let mut p = Poly::zero();
        p.add_term(c.into(), v_exp, t_exp);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = Monomial>>(it: I) -> Self {
        let mut p = Poly::zero();
        for m in it {
            p.add_term(m.coefficient, m.v_exp, m.t_exp);
        }
        p
    }

    fn add_term(&mut self, c: BigInt, v_exp: i64, t_exp: u32) {
        if c.is_zero() {
            return;
        }
        let key = (t_exp, v_exp);
        let e = self.terms.entry(key).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(t_exp, v_exp)` order.
    pub fn terms(&self) -> Vec<Monomial> {
        self.terms
            .iter()
            .map(|(&(t, v), c)| Monomial {
                coefficient: c.clone(),
                v_exp: v,
                t_exp: t,
            })
            .collect()
    }

    pub fn as_monomial(&self) -> Option<Monomial> {
        (self.terms.len() == 1).then(|| self.terms()[0].clone())
    }

    pub fn leading_sign_negative(&self) -> bool {
        self.terms.values().next().is_some_and(|c| c.is_negative())
    }

    pub fn min_v_exp(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, v)| v).min()
    }

    pub fn shift_v(&self, k: i64) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(&(t, v), c)| ((t, v + k), c.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (&(t, v), c) in &o.terms {
            p.add_term(c.clone(), v, t);
        }
        p
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (&(t1, v1), c1) in &self.terms {
            for (&(t2, v2), c2) in &o.terms {
                p.add_term(c1 * c2, v1 + v2, t1 + t2);
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// `t ↦ 1`, leaving a Laurent polynomial in `v` keyed by exponent.
    pub fn at_t_one(&self) -> BTreeMap<i64, BigInt> {
        let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&(_, v), c) in &self.terms {
            *out.entry(v).or_insert_with(BigInt::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    // Requires min v exponent ≥ 0.
    pub(crate) fn to_nested(&self) -> UPoly<UPoly<BigInt>> {
        let max_t = self.terms.keys().map(|&(t, _)| t).max().unwrap_or(0) as usize;
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); max_t + 1];
        for (&(t, v), c) in &self.terms {
            assert!(v >= 0, "to_nested needs non-negative v exponents");
            let row = &mut rows[t as usize];
            if row.len() <= v as usize {
                row.resize(v as usize + 1, BigInt::zero());
            }
            row[v as usize] = c.clone();
        }
        UPoly::new(rows.into_iter().map(UPoly::new).collect())
    }

    pub(crate) fn from_nested(p: &UPoly<UPoly<BigInt>>) -> Poly {
        let mut out = Poly::zero();
        for (t, row) in p.0.iter().enumerate() {
            for (v, c) in row.0.iter().enumerate() {
                out.add_term(c.clone(), v as i64, t as u32);
            }
        }
        out
    }

    /// Gcd in `Z[v, t]` of two polynomials with non-negative `v` exponents.
    pub(crate) fn gcd(&self, o: &Poly) -> Poly {
        Poly::from_nested(&upoly::GcdDomain::gcd(&self.to_nested(), &o.to_nested()))
    }

    pub(crate) fn exact_div(&self, o: &Poly) -> Option<Poly> {
        upoly::GcdDomain::exact_div(&self.to_nested(), &o.to_nested()).map(|q| Poly::from_nested(&q))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Poly::from_terms(Vec::<Monomial>::deserialize(d)?))
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, name: &str, e: i64, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str(" ")?;
    }
    *first = false;
    if e == 1 {
        f.write_str(name)
    } else {
        write!(f, "{name}^{e}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, m) in self.terms().iter().enumerate() {
            let neg = m.coefficient.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = m.coefficient.abs();
            let bare = m.v_exp == 0 && m.t_exp == 0;
            let mut first = true;
            if !abs.is_one() || bare {
                write!(f, "{abs}")?;
                first = false;
            }
            write_var(f, "v", m.v_exp, &mut first)?;
            write_var(f, "t", m.t_exp as i64, &mut first)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let p = Poly::one().sub(&Poly::monomial(1, 2, 2));
        assert_eq!(p.to_string(), "1 - v^2 t^2");
        let p = Poly::monomial(-3, -1, 1).add(&Poly::monomial(2, 0, 0));
        assert_eq!(p.to_string(), "2 - 3 v^-1 t");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::monomial(-1, 0, 0).to_string(), "-1");
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = Poly::monomial(1, 1, 1).add(&Poly::monomial(-1, 1, 1));
        assert!(p.is_zero());
    }

    #[test]
    fn nested_round_trip_and_gcd() {
        let a = Poly::one().sub(&Poly::monomial(1, 2, 2)); // 1 - v²t²
        let b = Poly::one().sub(&Poly::monomial(1, 1, 1)); // 1 - vt
        assert_eq!(Poly::from_nested(&a.to_nested()), a);
        let g = a.gcd(&b);
        assert!(g == b || g == b.neg());
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, Poly::one().add(&Poly::monomial(1, 1, 1)));
    }

    #[test]
    fn json_coefficients() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = Poly::monomial(big.clone(), 0, 1).add(&Poly::monomial(-2, 1, 0));
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(
            j,
            r#"[{"coefficient":-2,"v":1,"t":0},{"coefficient":"123456789012345678901234567890","v":0,"t":1}]"#
        );
        let back: Poly = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
    }
}
