//! Flags in `F_{q²}^n` and their invariants under the coordinate Frobenius.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::field::{Fe, FieldSpec};
use super::linalg::{self, Vector};
use crate::coset::{build_us_odd, CaseTag, CosetMatrix, Partition, RepSymbol};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// `V_1 ⊂ … ⊂ V_t`, each subspace in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Flag {
    pub partition: Partition,
    pub bases: Vec<Vec<Vector>>,
}

impl Flag {
    pub fn n(&self) -> usize {
        self.partition.total()
    }

    /// Builds a flag from spanning sets, checking dimensions and nesting.
    pub fn from_spans(f: &FieldSpec, partition: Partition, spans: Vec<Vec<Vector>>) -> Result<Flag> {
        let dims = partition.prefix_dims();
        if spans.len() != dims.len() {
            return Err(Error::InvalidInput("one subspace per part expected".into()));
        }
        let mut bases: Vec<Vec<Vector>> = Vec::with_capacity(spans.len());
        for (i, span) in spans.into_iter().enumerate() {
            let b = linalg::span_basis(f, &span);
            if b.len() != dims[i] {
                return Err(Error::InvalidInput(format!(
                    "V_{} has dimension {}, expected {}",
                    i + 1,
                    b.len(),
                    dims[i]
                )));
            }
            if i > 0 && linalg::rank(f, &linalg::union(&bases[i - 1], &b)) != b.len() {
                return Err(Error::InvalidInput(format!("V_{i} is not inside V_{}", i + 1)));
            }
            bases.push(b);
        }
        Ok(Flag { partition, bases })
    }

    /// `h · flag` for `h` given by rows.
    pub fn transform(&self, f: &FieldSpec, h: &[Vector]) -> Result<Flag> {
        let spans = self
            .bases
            .iter()
            .map(|b| b.iter().map(|v| linalg::mat_vec(f, h, v)).collect())
            .collect();
        Flag::from_spans(f, self.partition.clone(), spans)
    }

    pub fn same_as(&self, f: &FieldSpec, o: &Flag) -> bool {
        self.partition == o.partition
            && self
                .bases
                .iter()
                .zip(&o.bases)
                .all(|(a, b)| linalg::same_span(f, a, b))
    }
}

/// `m_{i,j}`; symmetric with row sums the parts.
pub type FlagProfile = CosetMatrix;

pub fn gaussian_binomial(n: u32, k: u32, big_q: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(big_q.checked_pow(n - i)?.checked_sub(1)?)?;
        den = den.checked_mul(big_q.checked_pow(i + 1)?.checked_sub(1)?)?;
    }
    Some(num / den)
}

/// Number of flags of the given type in `F_{q²}^n`; `None` on overflow.
pub fn flag_count(partition: &Partition, q: usize) -> Option<u128> {
    let big_q = (q as u128).checked_mul(q as u128)?;
    let mut rest = partition.total() as u32;
    let mut total: u128 = 1;
    for &part in partition.parts() {
        total = total.checked_mul(gaussian_binomial(rest, part as u32, big_q)?)?;
        rest -= part as u32;
    }
    Some(total)
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..m {
            cur.push(c);
            go(c + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Every `k`-dimensional subspace of `F^m`, once, as its RREF basis.
fn subspaces(f: &FieldSpec, m: usize, k: usize, visit: &mut dyn FnMut(Vec<Vector>)) {
    let size = f.order();
    for pivots in combinations(m, k) {
        // free slots: (row, col) with col > pivot of row and col not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..m)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut rows = vec![vec![0 as Fe; m]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            for (&(r, c), &x) in free.iter().zip(&digits) {
                rows[r][c] = x as Fe;
            }
            visit(rows);
            // odometer
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < size {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
}

/// Calls `visit` on every flag of the given type, each exactly once.
pub fn visit_flags(
    f: &FieldSpec,
    partition: &Partition,
    budget: u128,
    visit: &mut dyn FnMut(&Flag),
) -> Result<u128> {
    let estimate = flag_count(partition, f.q()).unwrap_or(u128::MAX);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let n = partition.total();
    let mut stack: Vec<Vec<Vector>> = Vec::new();
    let mut seen: u128 = 0;

    fn go(
        f: &FieldSpec,
        partition: &Partition,
        n: usize,
        level: usize,
        stack: &mut Vec<Vec<Vector>>,
        seen: &mut u128,
        visit: &mut dyn FnMut(&Flag),
    ) {
        if level == partition.len() {
            *seen += 1;
            visit(&Flag {
                partition: partition.clone(),
                bases: stack.clone(),
            });
            return;
        }
        let current: Vec<Vector> = stack.last().cloned().unwrap_or_default();
        let mut probe = current.clone();
        let pivots = if probe.is_empty() {
            Vec::new()
        } else {
            linalg::rref(f, &mut probe)
        };
        let free_cols: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let k = partition.parts()[level];
        subspaces(f, free_cols.len(), k, &mut |rows| {
            let mut span = current.clone();
            for r in rows {
                let mut v = vec![0 as Fe; n];
                for (x, &c) in r.into_iter().zip(&free_cols) {
                    v[c] = x;
                }
                span.push(v);
            }
            linalg::rref(f, &mut span);
            stack.push(span);
            go(f, partition, n, level + 1, stack, seen, visit);
            stack.pop();
        });
    }

    go(f, partition, n, 0, &mut stack, &mut seen, visit);
    Ok(seen)
}

pub fn enumerate_flags(f: &FieldSpec, partition: &Partition, budget: u128) -> Result<Vec<Flag>> {
    let mut out = Vec::new();
    visit_flags(f, partition, budget, &mut |fl| out.push(fl.clone()))?;
    Ok(out)
}

/// `R_{i,j} = dim(V_i ∩ θV_j)` followed by inclusion–exclusion.
pub fn flag_profile(flag: &Flag, f: &FieldSpec) -> FlagProfile {
    let t = flag.bases.len();
    let dims = flag.partition.prefix_dims();
    let twisted: Vec<Vec<Vector>> = flag.bases.iter().map(|b| linalg::frob_all(f, b)).collect();
    let mut r = vec![vec![0i64; t + 1]; t + 1];
    for i in 0..t {
        for j in 0..t {
            let span = linalg::rank(f, &linalg::union(&flag.bases[i], &twisted[j]));
            r[i + 1][j + 1] = (dims[i] + dims[j] - span) as i64;
        }
    }
    let entries = (1..=t)
        .map(|i| {
            (1..=t)
                .map(|j| (r[i][j] - r[i - 1][j] - r[i][j - 1] + r[i - 1][j - 1]) as usize)
                .collect()
        })
        .collect();
    CosetMatrix::new(CaseTag::Odd, flag.partition.clone(), entries)
        .expect("profiles are symmetric with the right row sums")
}

/// `u_s` over the field, with the oracle's `λ`.
pub fn instantiate_us(s: &CosetMatrix, f: &FieldSpec) -> Result<Vec<Vector>> {
    let u = build_us_odd(s)?;
    let l = f.lambda();
    Ok(u.entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| match x {
                    RepSymbol::Zero => 0,
                    RepSymbol::One => 1,
                    RepSymbol::Lambda => l,
                    RepSymbol::NegLambda => f.neg(l),
                })
                .collect()
        })
        .collect())
}

/// `V_i = u_s^{-1}(V_i^0)`: the span of the first `d_i` columns of `u_s^{-1}`.
pub fn representative_flag(s: &CosetMatrix, f: &FieldSpec) -> Result<Flag> {
    let u = instantiate_us(s, f)?;
    let inv = linalg::inverse(f, &u)
        .ok_or_else(|| Error::DegenerateModel("u_s is singular over the field".into()))?;
    let cols = linalg::transpose(&inv);
    let spans = s
        .partition()
        .prefix_dims()
        .iter()
        .map(|&d| cols[..d].to_vec())
        .collect();
    Flag::from_spans(f, s.partition().clone(), spans)
}

/// Number of flags per profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileCensus {
    pub n: usize,
    pub q: usize,
    pub partition: Partition,
    pub total: u64,
    pub counts: Vec<(CosetMatrix, u64)>,
}

impl ProfileCensus {
    pub fn profiles(&self) -> Vec<CosetMatrix> {
        self.counts.iter().map(|(s, _)| s.clone()).collect()
    }

    pub fn count_of(&self, s: &CosetMatrix) -> u64 {
        self.counts.iter().find(|(x, _)| x == s).map_or(0, |(_, c)| *c)
    }
}

pub fn profile_census(f: &FieldSpec, partition: &Partition, budget: u128) -> Result<ProfileCensus> {
    let mut counts: BTreeMap<Vec<usize>, (CosetMatrix, u64)> = BTreeMap::new();
    let total = visit_flags(f, partition, budget, &mut |fl| {
        let s = flag_profile(fl, f);
        counts.entry(s.row_major()).or_insert_with(|| (s, 0)).1 += 1;
    })?;
    // canonical order: lexicographically descending, as in the enumeration
    let counts = counts.into_values().rev().collect();
    Ok(ProfileCensus {
        n: partition.total(),
        q: f.q(),
        partition: partition.clone(),
        total: total as u64,
        counts,
    })
}
