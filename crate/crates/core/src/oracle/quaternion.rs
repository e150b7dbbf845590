//! Exact check, in `D = (α, β)_Q` with `E = Q(i)`, that `σ = θ^{-1} ∘ int_{s_ε}`
//! transports the Galois action of `D ⊗ E` to `M_2(E)`.
//!
//! `D` is a right `E`-vector space with basis `(1, j)`: `x = a + j·b`, and
//! `φ(d ⊗ z)` is the matrix of `x ↦ d·x·z`. With `ε = j`, `s_ε` is the
//! matrix of left multiplication by `j`.

use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadratic::{is_rational_square, mat_inverse, mat_mul, Quadratic};

/// `x0 + x1·i + x2·j + x3·ij` with `i² = α`, `j² = β`, `ij = −ji`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionElem {
    pub x: [BigRational; 4],
    pub alpha: BigRational,
    pub beta: BigRational,
}

impl QuaternionElem {
    pub fn new(x: [BigRational; 4], alpha: BigRational, beta: BigRational) -> Self {
        QuaternionElem { x, alpha, beta }
    }

    pub fn basis(k: usize, alpha: &BigRational, beta: &BigRational) -> Self {
        let mut x: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
        x[k] = BigRational::one();
        QuaternionElem::new(x, alpha.clone(), beta.clone())
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.x;
        QuaternionElem::new(
            [a.clone(), -b.clone(), -c.clone(), -d.clone()],
            self.alpha.clone(),
            self.beta.clone(),
        )
    }

    /// Reduced norm `x x̄`.
    pub fn norm(&self) -> BigRational {
        let [a, b, c, d] = &self.x;
        let (al, be) = (&self.alpha, &self.beta);
        a * a - al * b * b - be * c * c + al * be * d * d
    }
}

impl Mul for &QuaternionElem {
    type Output = QuaternionElem;
    fn mul(self, o: &QuaternionElem) -> QuaternionElem {
        let [a0, a1, a2, a3] = &self.x;
        let [b0, b1, b2, b3] = &o.x;
        let (al, be) = (&self.alpha, &self.beta);
        let c0 = a0 * b0 + al * a1 * b1 + be * a2 * b2 - al * be * a3 * b3;
        let c1 = a0 * b1 + a1 * b0 - be * a2 * b3 + be * a3 * b2;
        let c2 = a0 * b2 + a2 * b0 + al * a1 * b3 - al * a3 * b1;
        let c3 = a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1;
        QuaternionElem::new([c0, c1, c2, c3], al.clone(), be.clone())
    }
}

type Mat = Vec<Vec<Quadratic>>;

struct Model {
    alpha: BigRational,
    beta: BigRational,
    unit: Quadratic,
}

impl Model {
    fn q(&self, k: usize) -> QuaternionElem {
        QuaternionElem::basis(k, &self.alpha, &self.beta)
    }

    /// `z0 + z1·i` inside `D`.
    fn embed(&self, z: &Quadratic) -> QuaternionElem {
        let zero = BigRational::zero();
        QuaternionElem::new(
            [z.a.clone(), z.b.clone(), zero.clone(), zero],
            self.alpha.clone(),
            self.beta.clone(),
        )
    }

    /// `y = a + j·b` with `a = y0 + y1 i`, `b = y2 − y3 i`.
    fn coords(&self, y: &QuaternionElem) -> [Quadratic; 2] {
        let u = &self.unit;
        [
            Quadratic::new(y.x[0].clone(), y.x[1].clone(), u.radicand().clone()),
            Quadratic::new(y.x[2].clone(), -y.x[3].clone(), u.radicand().clone()),
        ]
    }

    fn phi(&self, d: &QuaternionElem, z: &Quadratic) -> Mat {
        let zq = self.embed(z);
        let cols: Vec<[Quadratic; 2]> = [self.q(0), self.q(2)]
            .iter()
            .map(|e| self.coords(&(&(d * e) * &zq)))
            .collect();
        (0..2)
            .map(|r| (0..2).map(|c| cols[c][r].clone()).collect())
            .collect()
    }

    fn e_basis(&self) -> [Quadratic; 2] {
        let one = self.unit.one_like();
        let i = Quadratic::new(
            BigRational::zero(),
            BigRational::one(),
            self.unit.radicand().clone(),
        );
        [one, i]
    }

    /// `d ⊗ z` over the Q-basis `e_k ⊗ {1, i}` of `D ⊗ E`.
    fn tensor_basis(&self) -> Vec<(QuaternionElem, Quadratic)> {
        let zs = self.e_basis();
        (0..4)
            .flat_map(|k| zs.iter().map(move |z| (k, z.clone())))
            .map(|(k, z)| (self.q(k), z))
            .collect()
    }
}

fn conj_mat(m: &Mat) -> Mat {
    m.iter()
        .map(|r| r.iter().map(Quadratic::conj).collect())
        .collect()
}

fn scale_mat(m: &Mat, z: &Quadratic) -> Mat {
    m.iter().map(|r| r.iter().map(|x| x * z).collect()).collect()
}

fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] / &m[r][c];
                for j in 0..ncols {
                    let t = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        r += 1;
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuaternionReport {
    pub alpha: String,
    pub beta: String,
    pub s_epsilon: [[String; 2]; 2],
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

pub fn quaternion_model_check(alpha: BigRational, beta: BigRational) -> Result<QuaternionReport> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::InvalidInput("α and β must be nonzero".into()));
    }
    if is_rational_square(&alpha) {
        return Err(Error::DegenerateModel(format!(
            "α = {alpha} is a rational square, so Q(√α) is not a field"
        )));
    }
    let unit = Quadratic::rational(BigRational::one(), alpha.clone());
    let model = Model {
        alpha: alpha.clone(),
        beta: beta.clone(),
        unit: unit.clone(),
    };
    let basis = model.tensor_basis();
    let images: Vec<Mat> = basis.iter().map(|(d, z)| model.phi(d, z)).collect();

    let homomorphism = basis.iter().zip(&images).all(|((d1, z1), m1)| {
        basis
            .iter()
            .zip(&images)
            .all(|((d2, z2), m2)| mat_mul(m1, m2) == model.phi(&(d1 * d2), &(z1 * z2)))
    });

    let flat: Vec<Vec<BigRational>> = images
        .iter()
        .map(|m| {
            m.iter()
                .flatten()
                .flat_map(|x| [x.a.clone(), x.b.clone()])
                .collect()
        })
        .collect();
    let bijective = rational_rank(&flat) == 8;

    // s_ε: left multiplication by j in the basis (1, j)
    let s_eps = model.phi(&model.q(2), &unit);
    let expected_s: Mat = vec![
        vec![unit.zero_like(), unit.lift(beta.clone())],
        vec![unit.one_like(), unit.zero_like()],
    ];
    let s_inv = mat_inverse(&s_eps).ok_or_else(|| Error::DegenerateModel("s_ε is singular".into()))?;
    let int_s = |m: &Mat| mat_mul(&mat_mul(&s_eps, m), &s_inv);
    let sigma = |m: &Mat| conj_mat(&int_s(m));
    let sigma_alt = |m: &Mat| int_s(&conj_mat(m));

    let commutes = images.iter().all(|m| sigma(m) == sigma_alt(m));
    let transports = basis
        .iter()
        .zip(&images)
        .all(|((d, z), m)| sigma(m) == model.phi(d, &z.conj()));
    let involution = images.iter().all(|m| sigma(&sigma(m)) == *m);
    let fixes_d = (0..4).all(|k| {
        let m = model.phi(&model.q(k), &unit);
        sigma(&m) == m
    });
    let [_, i_e] = model.e_basis();
    let semilinear = images
        .iter()
        .all(|m| sigma(&scale_mat(m, &i_e)) == scale_mat(&sigma(m), &i_e.conj()));

    let checks: Vec<CheckResult> = [
        ("phi_homomorphism", homomorphism),
        ("phi_bijective", bijective),
        ("s_epsilon_shape", s_eps == expected_s),
        ("sigma_equals_int_after_theta", commutes),
        ("sigma_transports_galois", transports),
        ("sigma_involution", involution),
        ("sigma_fixes_d", fixes_d),
        ("sigma_semilinear", semilinear),
    ]
    .into_iter()
    .map(|(name, passed)| CheckResult {
        name: name.into(),
        passed,
    })
    .collect();
    let passed = checks.iter().all(|c| c.passed);
    let show = |x: &Quadratic| x.to_string();
    Ok(QuaternionReport {
        alpha: alpha.to_string(),
        beta: beta.to_string(),
        s_epsilon: [
            [show(&s_eps[0][0]), show(&s_eps[0][1])],
            [show(&s_eps[1][0]), show(&s_eps[1][1])],
        ],
        checks,
        passed,
    })
}

/// Convenience for integer parameters.
pub fn quaternion_model_check_int(alpha: i64, beta: i64) -> Result<QuaternionReport> {
    quaternion_model_check(
        BigRational::from_integer(BigInt::from(alpha)),
        BigRational::from_integer(BigInt::from(beta)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn quaternion_relations() {
        let (a, b) = (r(-1, 1), r(-1, 1));
        let q = |k| QuaternionElem::basis(k, &a, &b);
        assert_eq!(
            &q(1) * &q(1),
            QuaternionElem::new([r(-1, 1), r(0, 1), r(0, 1), r(0, 1)], a.clone(), b.clone())
        );
        assert_eq!(&q(1) * &q(2), q(3));
        let ji = &q(2) * &q(1);
        assert_eq!(ji.x[3], r(-1, 1));
        // norm is multiplicative
        let x = QuaternionElem::new([r(1, 1), r(2, 1), r(-1, 1), r(3, 2)], r(2, 1), r(-5, 1));
        let y = QuaternionElem::new([r(0, 1), r(1, 3), r(4, 1), r(-1, 1)], r(2, 1), r(-5, 1));
        assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        assert_eq!((&x * &x.conj()).x[0], x.norm());
    }

    #[test]
    fn listed_parameters_pass() {
        for (a, b) in [(-1, -1), (-1, 2), (-1, 3), (2, 3), (-2, -5)] {
            let rep = quaternion_model_check_int(a, b).unwrap();
            assert!(rep.passed, "({a}, {b}): {:?}", rep.checks);
        }
    }

    #[test]
    fn s_epsilon_is_the_expected_matrix() {
        let rep = quaternion_model_check_int(-1, 2).unwrap();
        assert_eq!(
            rep.s_epsilon,
            [["0".to_string(), "2".into()], ["1".into(), "0".into()]]
        );
    }

    #[test]
    fn square_alpha_rejected() {
        assert!(matches!(
            quaternion_model_check_int(4, 1),
            Err(Error::DegenerateModel(_))
        ));
        assert!(quaternion_model_check(r(9, 4), r(1, 1)).is_err());
        assert!(quaternion_model_check_int(0, 1).is_err());
        assert!(quaternion_model_check_int(2, 0).is_err());
    }

    #[test]
    fn rational_parameters() {
        assert!(quaternion_model_check(r(-1, 2), r(3, 7)).unwrap().passed);
    }

    #[test]
    fn random_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut done = 0;
        while done < 5 {
            let a = r(rng.gen_range(-30..=30), rng.gen_range(1..=5));
            let b = r(rng.gen_range(-30..=30), rng.gen_range(1..=5));
            if a.is_zero() || b.is_zero() || is_rational_square(&a) {
                continue;
            }
            assert!(quaternion_model_check(a, b).unwrap().passed);
            done += 1;
        }
    }
}
