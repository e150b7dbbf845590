//! `F_{q²}` by tables, with `q = p^k` odd.
//!
//! Elements are indices `Σ c_i p^i` for the polynomial `Σ c_i x^i` modulo a
//! primitive polynomial of degree `2k`, so `0` is zero and the prime field
//! sits at indices `0..p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Fe = u16;

const MAX_ORDER: usize = 1024;

#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: usize,
    order: usize,
    exp: Vec<Fe>,
    log: Vec<u32>,
    add: Vec<Fe>,
    neg: Vec<Fe>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec(F_{}², p = {}, k = {})", self.q, self.p, self.k)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.k == o.k
    }
}

impl Eq for FieldSpec {}

#[derive(Serialize, Deserialize)]
struct RawField {
    p: u32,
    k: u32,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawField { p: self.p, k: self.k }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawField::deserialize(d)?;
        FieldSpec::new(raw.p, raw.k).map_err(serde::de::Error::custom)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn to_digits(mut x: usize, p: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for di in d.iter_mut() {
        *di = x % p;
        x /= p;
    }
    d
}

fn from_digits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

// Order of x modulo the monic polynomial with low coefficients `low`;
// returns the powers of x if x is primitive.
fn powers_if_primitive(low: &[usize], p: usize, order: usize) -> Option<Vec<usize>> {
    let deg = low.len();
    let mut cur = vec![0; deg];
    cur[0] = 1;
    let mut out = Vec::with_capacity(order - 1);
    for i in 0..order - 1 {
        let idx = from_digits(&cur, p);
        if i > 0 && idx == 1 {
            return None;
        }
        out.push(idx);
        // multiply by x, reduce x^deg = −Σ low_i x^i
        let top = cur[deg - 1];
        for j in (1..deg).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for j in 0..deg {
            cur[j] = (cur[j] + (p - low[j]) * top) % p;
        }
    }
    (from_digits(&cur, p) == 1).then_some(out)
}

impl FieldSpec {
    /// `F_{q²}` with `q = p^k`.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(Error::InvalidInput(format!("p must be an odd prime, got {p}")));
        }
        if k == 0 {
            return Err(Error::InvalidInput("extension degree k must be positive".into()));
        }
        let q = (p as usize)
            .checked_pow(k)
            .filter(|&q| q * q <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidInput(format!("F_q² with q = {p}^{k} exceeds the table limit")))?;
        let order = q * q;
        let pu = p as usize;
        let deg = 2 * k as usize;

        let mut powers = None;
        for c in 1..pu.pow(deg as u32) {
            let low = to_digits(c, pu, deg);
            if low[0] == 0 {
                continue;
            }
            if let Some(pw) = powers_if_primitive(&low, pu, order) {
                powers = Some(pw);
                break;
            }
        }
        let powers = powers.expect("a primitive polynomial exists");
        let exp: Vec<Fe> = powers.iter().map(|&x| x as Fe).collect();
        let mut log = vec![u32::MAX; order];
        for (i, &x) in powers.iter().enumerate() {
            log[x] = i as u32;
        }

        let digits: Vec<Vec<usize>> = (0..order).map(|x| to_digits(x, pu, deg)).collect();
        let mut add = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                let s: Vec<usize> = digits[a]
                    .iter()
                    .zip(&digits[b])
                    .map(|(x, y)| (x + y) % pu)
                    .collect();
                add[a * order + b] = from_digits(&s, pu) as Fe;
            }
        }
        let neg = (0..order)
            .map(|a| {
                let s: Vec<usize> = digits[a].iter().map(|x| (pu - x) % pu).collect();
                from_digits(&s, pu) as Fe
            })
            .collect();
        Ok(FieldSpec {
            p,
            k,
            q,
            order,
            exp,
            log,
            add,
            neg,
        })
    }

    /// `F_{q²}` for an odd prime power `q`.
    pub fn for_q(q: u32) -> Result<Self> {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
        let mut k = 0;
        let mut r = q;
        while r > 1 && r.is_multiple_of(p) {
            r /= p;
            k += 1;
        }
        if q < 2 || r != 1 {
            return Err(Error::InvalidInput(format!("{q} is not a prime power")));
        }
        FieldSpec::new(p, k)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// `q²`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Fe {
        0
    }

    pub fn one(&self) -> Fe {
        1
    }

    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.p as i64) as Fe
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.order as Fe
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.order + b as usize]
    }

    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) as usize % (self.order - 1);
        self.exp[e]
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize] as usize;
        Some(self.exp[(self.order - 1 - l) % (self.order - 1)])
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * e % (self.order as u64 - 1);
        self.exp[l as usize]
    }

    /// `x ↦ x^q`, the nontrivial automorphism of `F_{q²}/F_q`.
    pub fn frob(&self, a: Fe) -> Fe {
        self.pow(a, self.q as u64)
    }

    pub fn is_base(&self, a: Fe) -> bool {
        self.frob(a) == a
    }

    /// The elements of `F_q`.
    pub fn base_elements(&self) -> Vec<Fe> {
        self.elements().filter(|&a| self.is_base(a)).collect()
    }

    /// A fixed `λ` with `λ^q = −λ`, so `λ² ∈ F_q` is a nonsquare.
    pub fn lambda(&self) -> Fe {
        self.exp[self.q.div_ceil(2)]
    }
}
