//! Closure order on orbits, coarsening of flags and the even-to-odd embedding.

use serde::{Deserialize, Serialize};

use super::{enumerate_coset_matrices, CaseTag, CosetMatrix, Partition};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClosureOrder {
    Less,
    Greater,
    Equal,
    Incomparable,
}

// R_{i,j}(s) = Σ_{k ≤ i, l ≤ j} s_{k,l}
fn rank_table(s: &CosetMatrix) -> Vec<Vec<usize>> {
    let t = s.size();
    let mut r = vec![vec![0; t]; t];
    for i in 0..t {
        for j in 0..t {
            let up = if i > 0 { r[i - 1][j] } else { 0 };
            let left = if j > 0 { r[i][j - 1] } else { 0 };
            let diag = if i > 0 && j > 0 { r[i - 1][j - 1] } else { 0 };
            r[i][j] = up + left - diag + s.get(i, j);
        }
    }
    r
}

/// Rank dominance: `s ≤ s'` when every partial sum of `s` is at least the
/// corresponding one of `s'` (larger intersections, smaller orbit).
/// `Less` means `s` lies in the closure of the orbit of `s'`.
pub fn closure_compare(s: &CosetMatrix, other: &CosetMatrix) -> Result<ClosureOrder> {
    if s.partition() != other.partition() {
        return Err(Error::PartitionMismatch {
            left: s.partition().parts().to_vec(),
            right: other.partition().parts().to_vec(),
        });
    }
    if s.case() != other.case() {
        return Err(Error::CaseMismatch {
            expected: s.case().to_string(),
            found: other.case().to_string(),
        });
    }
    let a = rank_table(s);
    let b = rank_table(other);
    let mut a_ge = true;
    let mut b_ge = true;
    for (ra, rb) in a.iter().zip(&b) {
        for (x, y) in ra.iter().zip(rb) {
            a_ge &= x >= y;
            b_ge &= y >= x;
        }
    }
    Ok(match (a_ge, b_ge) {
        (true, true) => ClosureOrder::Equal,
        (true, false) => ClosureOrder::Less,
        (false, true) => ClosureOrder::Greater,
        (false, false) => ClosureOrder::Incomparable,
    })
}

/// Whether `s` is maximal for rank dominance among all coset matrices of
/// its partition and case.
pub fn is_open(s: &CosetMatrix) -> Result<bool> {
    for other in enumerate_coset_matrices(s.partition(), s.case())? {
        if closure_compare(s, &other)? == ClosureOrder::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The anti-diagonal coset matrix on the minimal partition of `n`.
pub fn anti_diagonal(case: CaseTag, n: usize) -> CosetMatrix {
    let mut e = vec![vec![0; n]; n];
    for (i, row) in e.iter_mut().enumerate() {
        row[n - 1 - i] = 1;
    }
    CosetMatrix::new(case, Partition::minimal(n).expect("n ≥ 1"), e)
        .expect("anti-diagonal is valid for even n or the odd case")
}

/// Forgets `V_k` in the flag: rows `k, k+1` and columns `k, k+1` (1-based)
/// are summed.
pub fn coarsen(s: &CosetMatrix, k: usize) -> Result<CosetMatrix> {
    let t = s.size();
    if k == 0 || k >= t {
        return Err(Error::IndexOutOfRange {
            index: k,
            bound: t.saturating_sub(1),
        });
    }
    let merged = |i: usize| if i >= k { i - 1 } else { i };
    let mut e = vec![vec![0; t - 1]; t - 1];
    for i in 0..t {
        for j in 0..t {
            e[merged(i)][merged(j)] += s.get(i, j);
        }
    }
    CosetMatrix::new(s.case(), s.partition().merge(k)?, e)
}

/// `I(n̄) ⊂ J(n̄)`: the same matrix read in the odd case.
pub fn embed_i_in_j(s: &CosetMatrix) -> Result<CosetMatrix> {
    if s.case() != CaseTag::Even {
        return Err(Error::CaseMismatch {
            expected: "even".into(),
            found: s.case().to_string(),
        });
    }
    s.with_case(CaseTag::Odd)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingOpenness {
    pub s: CosetMatrix,
    pub open_in_even: bool,
    pub open_in_odd: bool,
}

/// Openness of `s` before and after the embedding into the odd-case set.
pub fn embedding_openness(s: &CosetMatrix) -> Result<EmbeddingOpenness> {
    let image = embed_i_in_j(s)?;
    Ok(EmbeddingOpenness {
        s: s.clone(),
        open_in_even: is_open(s)?,
        open_in_odd: is_open(&image)?,
    })
}
