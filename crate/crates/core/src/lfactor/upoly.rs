//! Dense univariate polynomials over a gcd domain, nested to get `Z[v][t]`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub(crate) trait GcdDomain: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / o` when `o` divides `self`.
    fn exact_div(&self, o: &Self) -> Option<Self>;
    /// A gcd whose leading sign is positive.
    fn gcd(&self, o: &Self) -> Self;
    fn is_negative_unit_class(&self) -> bool;
}

impl GcdDomain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn is_negative_unit_class(&self) -> bool {
        self.is_negative()
    }
}

/// Coefficients from degree 0 upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UPoly<R>(pub Vec<R>);

impl<R: GcdDomain> UPoly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> R {
        self.0.last().cloned().unwrap_or_else(R::zero)
    }

    fn scale(&self, c: &R) -> Self {
        UPoly::new(self.0.iter().map(|x| x.mul(c)).collect())
    }

    fn shifted(&self, k: usize) -> Self {
        let mut c = vec![R::zero(); k];
        c.extend(self.0.iter().cloned());
        UPoly::new(c)
    }

    pub fn content(&self) -> R {
        let mut g = R::zero();
        for c in &self.0 {
            g = g.gcd(c);
        }
        g
    }

    fn div_const(&self, c: &R) -> Option<Self> {
        self.0
            .iter()
            .map(|x| x.exact_div(c))
            .collect::<Option<Vec<_>>>()
            .map(UPoly::new)
    }

    pub fn primitive_part(&self) -> Self {
        if GcdDomain::is_zero(self) {
            return self.clone();
        }
        let c = self.content();
        let p = self.div_const(&c).expect("content divides every coefficient");
        if p.lc().is_negative_unit_class() {
            p.neg()
        } else {
            p
        }
    }

    fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("nonzero divisor");
        let lb = b.lc();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc();
            r = r.scale(&lb).sub(&b.scale(&lr).shifted(dr - db));
        }
        r
    }
}

impl<R: GcdDomain> GcdDomain for UPoly<R> {
    fn zero() -> Self {
        UPoly(Vec::new())
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = R::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z).add(o.0.get(i).unwrap_or(&z)))
                .collect(),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return UPoly(Vec::new());
        }
        let mut c = vec![R::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        UPoly::new(c)
    }
    fn neg(&self) -> Self {
        UPoly(self.0.iter().map(R::neg).collect())
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        let db = o.degree()?;
        let lb = o.lc();
        let mut r = self.clone();
        let mut q = vec![R::zero(); self.0.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let c = r.lc().exact_div(&lb)?;
            r = r.sub(&o.scale(&c).shifted(dr - db));
            q[dr - db] = c;
        }
        Some(UPoly::new(q))
    }
    fn gcd(&self, o: &Self) -> Self {
        if GcdDomain::is_zero(self) {
            return o.sign_normalized();
        }
        if GcdDomain::is_zero(o) {
            return self.sign_normalized();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !GcdDomain::is_zero(&b) {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }
    fn is_negative_unit_class(&self) -> bool {
        self.lc().is_negative_unit_class()
    }
}

impl<R: GcdDomain> UPoly<R> {
    fn sign_normalized(&self) -> Self {
        if self.lc().is_negative_unit_class() {
            self.neg()
        } else {
            self.clone()
        }
    }
}
