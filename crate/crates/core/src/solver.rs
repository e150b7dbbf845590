//! Character equations on the twisted Levi fixed groups `M_s^{σ_s}`.
//!
//! Both sides of `μ_χ = δ_{P_s}^{1/2}` are modelled per fine block as an
//! exponent of the positive character `ν` together with a sign bit for the
//! `η_{E/F}` component. A paired block pair `(b, b')` carries `(a, θ(a))`,
//! a fixed block carries a copy of `GL(k, D)`.

use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coset::{
    anti_diagonal, block_involution, enumerate_coset_matrices, fine_layout, BlockInvolution, CaseTag,
    CosetMatrix, FineLayout, Partition,
};
use crate::error::{Error, Result};

/// The restriction `χ|F*`: trivial or the quadratic character `η_{E/F}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChiToken {
    Triv,
    Eta,
}

impl ChiToken {
    pub const ALL: [ChiToken; 2] = [ChiToken::Triv, ChiToken::Eta];

    pub fn other(self) -> ChiToken {
        match self {
            ChiToken::Triv => ChiToken::Eta,
            ChiToken::Eta => ChiToken::Triv,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ChiToken::Triv => "triv",
            ChiToken::Eta => "eta",
        }
    }
}

impl fmt::Display for ChiToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ChiToken {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "triv" | "1" | "trivial" => Ok(ChiToken::Triv),
            "eta" => Ok(ChiToken::Eta),
            other => Err(Error::InvalidInput(format!("unknown character token '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCharacter {
    pub exponent: Rational64,
    pub eta_bit: u8,
}

/// A character of `M_s`, one entry per fine block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentCharacter {
    pub per_block: Vec<BlockCharacter>,
}

impl ExponentCharacter {
    pub fn exponents(&self) -> Vec<Rational64> {
        self.per_block.iter().map(|b| b.exponent).collect()
    }

    pub fn len(&self) -> usize {
        self.per_block.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_block.is_empty()
    }
}

/// `δ_{P_s}^{1/2}` on `M_s`: block `b` gets
/// `E_b = (κ/2)(Σ_{l>b} k_l − Σ_{l<b} k_l)`.
pub fn delta_half_exponents(layout: &FineLayout, kappa: Rational64) -> ExponentCharacter {
    let sizes: Vec<i64> = layout.blocks.iter().map(|b| b.size as i64).collect();
    let total: i64 = sizes.iter().sum();
    let mut before = 0;
    let per_block = sizes
        .iter()
        .map(|&k| {
            let after = total - before - k;
            let e = kappa * Rational64::new(after - before, 2);
            before += k;
            BlockCharacter {
                exponent: e,
                eta_bit: 0,
            }
        })
        .collect();
    ExponentCharacter { per_block }
}

/// `μ_χ` on `M_s^{σ_s}`. On a pair `(a, θ(a))` it factors through the norm
/// `N_{E/F}`, where both tokens are trivial; on a fixed block it is
/// `χ|F* ∘ N_rd`, whose sign part is `η` exactly for the `Eta` token.
pub fn restrict_mu_chi(layout: &FineLayout, invol: &BlockInvolution, chi: ChiToken) -> ExponentCharacter {
    let per_block = (0..layout.blocks.len())
        .map(|b| BlockCharacter {
            exponent: Rational64::zero(),
            eta_bit: u8::from(invol.is_fixed(b) && chi == ChiToken::Eta),
        })
        .collect();
    ExponentCharacter { per_block }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SupportRule {
    PairSumNonzero,
    FixedExponentNonzero,
    FixedSignObstruction,
}

/// A failed condition on a fine block (1-based block index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub block: usize,
    pub rule: SupportRule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportReport {
    pub s: CosetMatrix,
    pub chi: ChiToken,
    pub feasible: bool,
    pub violations: Vec<Violation>,
}

/// Decides whether `μ_χ = δ_{P_s}^{1/2}` can hold on `M_s^{σ_s}`.
pub fn orbit_supports(s: &CosetMatrix, chi: ChiToken, kappa: Rational64) -> Result<SupportReport> {
    if !kappa.is_positive() {
        return Err(Error::InvalidInput(format!(
            "kappa must be positive, got {kappa}"
        )));
    }
    let layout = fine_layout(s);
    let invol = block_involution(s);
    let delta = delta_half_exponents(&layout, kappa);
    let mu = restrict_mu_chi(&layout, &invol, chi);

    let mut violations = Vec::new();
    for b in 0..layout.blocks.len() {
        let partner = invol.pairing[b];
        let (d, m) = (delta.per_block[b], mu.per_block[b]);
        if partner == b {
            if d.exponent != m.exponent {
                violations.push(Violation {
                    block: b + 1,
                    rule: SupportRule::FixedExponentNonzero,
                });
            }
            if d.eta_bit != m.eta_bit {
                violations.push(Violation {
                    block: b + 1,
                    rule: SupportRule::FixedSignObstruction,
                });
            }
        } else if b < partner {
            let dp = delta.per_block[partner];
            let mp = mu.per_block[partner];
            if d.exponent + dp.exponent != m.exponent + mp.exponent {
                violations.push(Violation {
                    block: b + 1,
                    rule: SupportRule::PairSumNonzero,
                });
            }
        }
    }
    Ok(SupportReport {
        s: s.clone(),
        chi,
        feasible: violations.is_empty(),
        violations,
    })
}

/// Validates `(case, m, d)` and returns `n`, the size of `G`'s matrices.
pub fn matrix_size(case: CaseTag, m: usize, d: usize) -> Result<usize> {
    if m == 0 || d == 0 {
        return Err(Error::InvalidInput(format!(
            "m and d must be positive, got m = {m}, d = {d}"
        )));
    }
    if CaseTag::for_index(d) != case {
        return Err(Error::ParityMismatch {
            case: case.to_string(),
            requirement: match case {
                CaseTag::Even => "d even",
                CaseTag::Odd => "d odd",
            },
            d,
        });
    }
    Ok(case.matrix_size(m))
}

/// The coset matrices of the minimal partition that can support an
/// invariant form for `chi`.
pub fn minimal_orbit_analysis(case: CaseTag, m: usize, d: usize, chi: ChiToken) -> Result<Vec<CosetMatrix>> {
    let n = matrix_size(case, m, d)?;
    let mut out = Vec::new();
    for s in enumerate_coset_matrices(&Partition::minimal(n)?, case)? {
        if orbit_supports(&s, chi, Rational64::from_integer(1))?.feasible {
            out.push(s);
        }
    }
    Ok(out)
}

/// The open orbit of the minimal partition.
pub fn open_orbit(case: CaseTag, n: usize) -> CosetMatrix {
    anti_diagonal(case, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::coarsen;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn one() -> Rational64 {
        r(1, 1)
    }

    fn mat(case: CaseTag, parts: &[usize], e: Vec<Vec<usize>>) -> CosetMatrix {
        CosetMatrix::new(case, Partition::new(parts.to_vec()).unwrap(), e).unwrap()
    }

    // Oracle: per-position exponents (n + 1 − 2p)/2 summed over each block,
    // divided by the block size. Independent of the prefix-sum formula.
    fn averaged_position_exponents(layout: &FineLayout) -> Vec<Rational64> {
        let n = layout.total() as i64;
        (0..layout.blocks.len())
            .map(|b| {
                let sum: i64 = layout.positions(b).map(|p| n + 1 - 2 * p as i64).sum();
                Rational64::new(sum, 2 * layout.blocks[b].size as i64)
            })
            .collect()
    }

    #[test]
    fn delta_examples() {
        let l = fine_layout(&mat(CaseTag::Odd, &[1, 1], vec![vec![1, 0], vec![0, 1]]));
        assert_eq!(
            delta_half_exponents(&l, one()).exponents(),
            vec![r(1, 2), r(-1, 2)]
        );

        let l = fine_layout(&mat(CaseTag::Odd, &[3], vec![vec![3]]));
        assert_eq!(delta_half_exponents(&l, one()).exponents(), vec![r(0, 1)]);

        // sizes (1, 1, 2)
        let l = fine_layout(&mat(
            CaseTag::Odd,
            &[1, 1, 2],
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]],
        ));
        let e = delta_half_exponents(&l, one());
        assert_eq!(e.exponents(), vec![r(3, 2), r(1, 2), r(-1, 1)]);
    }

    #[test]
    fn delta_agrees_with_position_oracle_and_sums_to_zero() {
        for n in 1..=6 {
            for p in Partition::all_of(n) {
                for s in enumerate_coset_matrices(&p, CaseTag::Odd).unwrap() {
                    let l = fine_layout(&s);
                    let e = delta_half_exponents(&l, one());
                    assert_eq!(e.exponents(), averaged_position_exponents(&l));
                    let weighted: Rational64 = e
                        .per_block
                        .iter()
                        .zip(&l.blocks)
                        .map(|(c, b)| c.exponent * Rational64::from_integer(b.size as i64))
                        .sum();
                    assert_eq!(weighted, Rational64::zero());
                    assert!(e.per_block.iter().all(|c| c.eta_bit == 0));
                }
            }
        }
    }

    #[test]
    fn mu_chi_examples() {
        let s = anti_diagonal(CaseTag::Even, 4);
        let (l, inv) = (fine_layout(&s), block_involution(&s));
        let mu = restrict_mu_chi(&l, &inv, ChiToken::Eta);
        assert!(mu
            .per_block
            .iter()
            .all(|c| c.exponent.is_zero() && c.eta_bit == 0));

        let s = mat(CaseTag::Odd, &[1], vec![vec![1]]);
        let (l, inv) = (fine_layout(&s), block_involution(&s));
        assert_eq!(restrict_mu_chi(&l, &inv, ChiToken::Triv).per_block[0].eta_bit, 0);
        assert_eq!(restrict_mu_chi(&l, &inv, ChiToken::Eta).per_block[0].eta_bit, 1);
    }

    #[test]
    fn support_examples() {
        let s = anti_diagonal(CaseTag::Even, 4);
        for chi in ChiToken::ALL {
            assert!(orbit_supports(&s, chi, one()).unwrap().feasible);
        }

        let s = anti_diagonal(CaseTag::Odd, 3);
        let rep = orbit_supports(&s, ChiToken::Eta, one()).unwrap();
        assert!(!rep.feasible);
        assert_eq!(
            rep.violations,
            vec![Violation {
                block: 2,
                rule: SupportRule::FixedSignObstruction
            }]
        );

        let s = coarsen(&anti_diagonal(CaseTag::Odd, 4), 2).unwrap();
        assert!(orbit_supports(&s, ChiToken::Triv, one()).unwrap().feasible);
        assert!(!orbit_supports(&s, ChiToken::Eta, one()).unwrap().feasible);
    }

    #[test]
    fn identity_fails_by_exponents() {
        let s = mat(CaseTag::Odd, &[1, 1], vec![vec![1, 0], vec![0, 1]]);
        let rep = orbit_supports(&s, ChiToken::Triv, one()).unwrap();
        assert_eq!(rep.violations.len(), 2);
        assert!(rep
            .violations
            .iter()
            .all(|v| v.rule == SupportRule::FixedExponentNonzero));
    }

    #[test]
    fn verdict_is_independent_of_kappa() {
        for n in 1..=5 {
            for p in Partition::all_of(n) {
                for case in [CaseTag::Even, CaseTag::Odd] {
                    for s in enumerate_coset_matrices(&p, case).unwrap() {
                        for chi in ChiToken::ALL {
                            let base = orbit_supports(&s, chi, one()).unwrap().feasible;
                            for k in [r(1, 2), r(3, 1)] {
                                assert_eq!(orbit_supports(&s, chi, k).unwrap().feasible, base);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kappa_must_be_positive() {
        let s = anti_diagonal(CaseTag::Odd, 2);
        assert!(orbit_supports(&s, ChiToken::Triv, r(0, 1)).is_err());
        assert!(orbit_supports(&s, ChiToken::Triv, r(-1, 2)).is_err());
    }

    #[test]
    fn minimal_orbit_examples() {
        let a = minimal_orbit_analysis(CaseTag::Even, 2, 2, ChiToken::Eta).unwrap();
        assert_eq!(a, vec![anti_diagonal(CaseTag::Even, 4)]);
        let a = minimal_orbit_analysis(CaseTag::Odd, 2, 1, ChiToken::Triv).unwrap();
        assert_eq!(a, vec![anti_diagonal(CaseTag::Odd, 2)]);
        assert!(minimal_orbit_analysis(CaseTag::Odd, 3, 1, ChiToken::Eta)
            .unwrap()
            .is_empty());
        assert!(matches!(
            minimal_orbit_analysis(CaseTag::Even, 2, 3, ChiToken::Eta),
            Err(Error::ParityMismatch { .. })
        ));
        assert!(minimal_orbit_analysis(CaseTag::Odd, 0, 1, ChiToken::Eta).is_err());
    }

    #[test]
    fn minimal_support_is_at_most_the_anti_diagonal() {
        for n in 1..=6 {
            for case in [CaseTag::Even, CaseTag::Odd] {
                if case == CaseTag::Even && n % 2 == 1 {
                    continue;
                }
                for chi in ChiToken::ALL {
                    for s in enumerate_coset_matrices(&Partition::minimal(n).unwrap(), case).unwrap() {
                        if orbit_supports(&s, chi, one()).unwrap().feasible {
                            assert_eq!(s, anti_diagonal(case, n));
                        }
                    }
                    let anti = orbit_supports(&anti_diagonal(case, n), chi, one()).unwrap();
                    let expect = n % 2 == 0 || chi == ChiToken::Triv;
                    assert_eq!(anti.feasible, expect, "n = {n} {case} {chi}");
                }
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let s = anti_diagonal(CaseTag::Odd, 3);
        let rep = orbit_supports(&s, ChiToken::Eta, one()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["chi"], "eta");
        assert_eq!(v["feasible"], false);
        assert_eq!(v["violations"][0]["block"], 2);
        assert_eq!(v["violations"][0]["rule"], "FIXED_SIGN_OBSTRUCTION");
        assert_eq!(v["s"]["case"], "odd");
        let back: SupportReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, rep);
    }
}
