//! Exact arithmetic in a quadratic extension `Q(√r)` of the rationals.
//!
//! Used wherever a square root has to be carried exactly: the `λ` of the
//! odd-case representatives, the field `E = Q(i)` inside a quaternion
//! algebra, and `v = q^{1/2}` when evaluating L-factors at prime powers.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `a + b·√r`. All operands of a binary operation must share the radicand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadratic {
    pub a: BigRational,
    pub b: BigRational,
    radicand: BigRational,
}

/// Returns the rational square root of `x` if it has one.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

pub fn is_rational_square(x: &BigRational) -> bool {
    rational_sqrt(x).is_some()
}

impl Quadratic {
    pub fn new(a: BigRational, b: BigRational, radicand: BigRational) -> Self {
        Quadratic { a, b, radicand }
    }

    pub fn rational(a: BigRational, radicand: BigRational) -> Self {
        Quadratic {
            a,
            b: BigRational::zero(),
            radicand,
        }
    }

    /// The square root of `r`. When `r` is a rational square the result
    /// lives in the degenerate extension with radicand 1 and `b = 0`.
    pub fn sqrt_of(r: BigRational) -> Self {
        match rational_sqrt(&r) {
            Some(root) => Quadratic::rational(root, BigRational::one()),
            None => Quadratic {
                a: BigRational::zero(),
                b: BigRational::one(),
                radicand: r,
            },
        }
    }

    /// Same extension as `self`, rational value `x`.
    pub fn lift(&self, x: BigRational) -> Self {
        Quadratic::rational(x, self.radicand.clone())
    }

    pub fn lift_int(&self, x: i64) -> Self {
        self.lift(BigRational::from_integer(BigInt::from(x)))
    }

    pub fn zero_like(&self) -> Self {
        self.lift(BigRational::zero())
    }

    pub fn one_like(&self) -> Self {
        self.lift(BigRational::one())
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The nontrivial Galois conjugate `a - b√r`.
    pub fn conj(&self) -> Self {
        Quadratic {
            a: self.a.clone(),
            b: -self.b.clone(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.radicand * &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Quadratic {
            a: &self.a / &n,
            b: -(&self.b / &n),
            radicand: self.radicand.clone(),
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.radicand, other.radicand,
            "mixed radicands in quadratic arithmetic"
        );
    }
}

/// Dense square matrix product over a common quadratic extension.
pub fn mat_mul(a: &[Vec<Quadratic>], b: &[Vec<Quadratic>]) -> Vec<Vec<Quadratic>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let zero = a[0][0].zero_like();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    b.iter()
                        .enumerate()
                        .fold(zero.clone(), |acc, (k, row)| &acc + &(&a[i][k] * &row[j]))
                })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn mat_inverse(a: &[Vec<Quadratic>]) -> Option<Vec<Vec<Quadratic>>> {
    let n = a.len();
    let zero = a[0][0].zero_like();
    let one = a[0][0].one_like();
    let mut work: Vec<Vec<Quadratic>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        let inv = work[col][col].inv()?;
        for x in work[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !work[r][col].is_zero() {
                let factor = work[r][col].clone();
                for c in 0..2 * n {
                    let sub = &factor * &work[col][c];
                    work[r][c] = &work[r][c] - &sub;
                }
            }
        }
    }
    Some(work.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl<'a> Add<&'a Quadratic> for &'a Quadratic {
    type Output = Quadratic;
    fn add(self, rhs: &Quadratic) -> Quadratic {
        self.check(rhs);
        Quadratic {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            radicand: self.radicand.clone(),
        }
    }
}

impl<'a> Sub<&'a Quadratic> for &'a Quadratic {
    type Output = Quadratic;
    fn sub(self, rhs: &Quadratic) -> Quadratic {
        self.check(rhs);
        Quadratic {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            radicand: self.radicand.clone(),
        }
    }
}

impl<'a> Mul<&'a Quadratic> for &'a Quadratic {
    type Output = Quadratic;
    fn mul(self, rhs: &Quadratic) -> Quadratic {
        self.check(rhs);
        Quadratic {
            a: &self.a * &rhs.a + &self.radicand * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            radicand: self.radicand.clone(),
        }
    }
}

impl<'a> Div<&'a Quadratic> for &'a Quadratic {
    type Output = Quadratic;
    fn div(self, rhs: &Quadratic) -> Quadratic {
        let inv = rhs.inv().expect("division by zero in quadratic field");
        self * &inv
    }
}

impl Neg for &Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        Quadratic {
            a: -self.a.clone(),
            b: -self.b.clone(),
            radicand: self.radicand.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Quadratic> for Quadratic {
            type Output = Quadratic;
            fn $m(self, rhs: Quadratic) -> Quadratic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        -&self
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.radicand)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.radicand)
        }
    }
}
