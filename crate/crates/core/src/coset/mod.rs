//! Double-coset parameters for parabolic orbits of the Galois-fixed group.
//!
//! A double coset `P\G/H` is encoded by a symmetric non-negative integer
//! matrix whose `i`-th row sums to the `i`-th part of the partition
//! defining `P`. In the even-index case the diagonal must be even.

mod enumerate;
mod layout;
mod order;
mod representatives;
mod roots;

pub use enumerate::enumerate_coset_matrices;
pub use layout::{block_involution, fine_layout, Block, BlockInvolution, FineLayout, Permutation};
pub use order::{
    anti_diagonal, closure_compare, coarsen, embed_i_in_j, embedding_openness, is_open, ClosureOrder,
    EmbeddingOpenness,
};
pub use representatives::{
    build_us_odd, build_ws_even, extract_odd_involution, ws_from_index_formulas, ws_from_intervals,
    FormulaDiagnostic, RepSymbol, SymbolicRepMatrix, WsConstruction, WsSource,
};
pub use roots::{root_action, RootAction, RootImage};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parity of the index `d` of the division algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    /// `d` even: `G = GL(2m, Δ)`, coset matrices have even diagonal.
    Even,
    /// `d` odd: `G = GL(m, D_E)`.
    Odd,
}

impl CaseTag {
    pub fn for_index(d: usize) -> CaseTag {
        if d.is_multiple_of(2) {
            CaseTag::Even
        } else {
            CaseTag::Odd
        }
    }

    /// Size of the matrices in `G` for `GL(m, D⊗E)`.
    pub fn matrix_size(self, m: usize) -> usize {
        match self {
            CaseTag::Even => 2 * m,
            CaseTag::Odd => m,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Even => "even",
            CaseTag::Odd => "odd",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CaseTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "even" => Ok(CaseTag::Even),
            "odd" => Ok(CaseTag::Odd),
            other => Err(Error::InvalidInput(format!("unknown case '{other}'"))),
        }
    }
}

/// An ordered list of positive parts (a composition, in combinatorial terms).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "partition parts must be positive: {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    /// `(1, …, 1)` with `n` parts.
    pub fn minimal(n: usize) -> Result<Self> {
        Partition::new(vec![1; n])
    }

    /// All parts 1 except a 2 at 0-based position `at`; total `n`.
    pub fn next_to_minimal(n: usize, at: usize) -> Result<Self> {
        if n < 2 || at > n - 2 {
            return Err(Error::InvalidInput(format!(
                "no next-to-minimal partition of {n} with the 2 at index {at}"
            )));
        }
        let mut parts = vec![1; n - 1];
        parts[at] = 2;
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// 1-based prefix sums: `d_i = n_1 + … + n_i`.
    pub fn prefix_dims(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// Merges parts `k` and `k + 1` (1-based `k`).
    pub fn merge(&self, k: usize) -> Result<Self> {
        if k == 0 || k >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: k,
                bound: self.len().saturating_sub(1),
            });
        }
        let mut parts = self.0.clone();
        let merged = parts[k - 1] + parts[k];
        parts[k - 1] = merged;
        parts.remove(k);
        Partition::new(parts)
    }

    /// Every composition of `n` (ordered partitions), in lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in 1..=rest {
                cur.push(p);
                go(rest - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad partition entry '{x}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Deserialize)]
struct RawCosetMatrix {
    case: CaseTag,
    partition: Partition,
    entries: Vec<Vec<usize>>,
}

/// A validated double-coset parameter `I(n̄)` (even case) or `J(m̄)` (odd case).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCosetMatrix")]
pub struct CosetMatrix {
    case: CaseTag,
    partition: Partition,
    entries: Vec<Vec<usize>>,
}

impl TryFrom<RawCosetMatrix> for CosetMatrix {
    type Error = Error;
    fn try_from(raw: RawCosetMatrix) -> Result<Self> {
        CosetMatrix::new(raw.case, raw.partition, raw.entries)
    }
}

impl CosetMatrix {
    pub fn new(case: CaseTag, partition: Partition, entries: Vec<Vec<usize>>) -> Result<Self> {
        let t = partition.len();
        if entries.len() != t || entries.iter().any(|r| r.len() != t) {
            return Err(Error::InvalidInput(format!(
                "coset matrix must be {t}x{t} for partition {partition}"
            )));
        }
        for i in 0..t {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidInput("coset matrix is not symmetric".into()));
                }
            }
            let row: usize = entries[i].iter().sum();
            if row != partition.parts()[i] {
                return Err(Error::InvalidInput(format!(
                    "row {} sums to {row}, expected {}",
                    i + 1,
                    partition.parts()[i]
                )));
            }
            if case == CaseTag::Even && !entries[i][i].is_multiple_of(2) {
                return Err(Error::InvalidInput(format!(
                    "even case requires an even diagonal, entry ({0},{0}) is {1}",
                    i + 1,
                    entries[i][i]
                )));
            }
        }
        Ok(CosetMatrix {
            case,
            partition,
            entries,
        })
    }

    pub(crate) fn new_unchecked(case: CaseTag, partition: Partition, entries: Vec<Vec<usize>>) -> Self {
        CosetMatrix {
            case,
            partition,
            entries,
        }
    }

    pub fn case(&self) -> CaseTag {
        self.case
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i][j]
    }

    /// Number of rows `t`.
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Total dimension `n`.
    pub fn total(&self) -> usize {
        self.partition.total()
    }

    pub fn with_case(&self, case: CaseTag) -> Result<Self> {
        CosetMatrix::new(case, self.partition.clone(), self.entries.clone())
    }

    /// Row-major flattening, the key of the canonical order.
    pub fn row_major(&self) -> Vec<usize> {
        self.entries.iter().flatten().copied().collect()
    }
}

impl fmt::Display for CosetMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                let xs: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", xs.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}
