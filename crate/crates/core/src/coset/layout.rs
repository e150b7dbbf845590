use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CaseTag, CosetMatrix, Partition};
use crate::error::{Error, Result};

/// A bijection of `{1, …, n}`, stored as its list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidInput(format!(
                    "not a permutation of 1..{n}: {images:?}"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The order-reversing permutation `p ↦ n + 1 - p`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the 1-based position `p`.
    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: other.images.iter().map(|&p| self.apply(p)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&p| self.apply(p) == p).collect()
    }

    /// Disjoint cycles of length > 1, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 1..=self.len() {
            if seen[start - 1] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start - 1] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p - 1] = true;
                cyc.push(p);
                p = self.apply(p);
            }
            out.push(cyc);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for c in cycles {
            let xs: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", xs.join(" "))?;
        }
        Ok(())
    }
}

/// One nonzero entry `s[row][col]` of a coset matrix, as a block of positions.
/// `row` and `col` are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub row: usize,
    pub col: usize,
    pub size: usize,
}

/// The row-major sequence of nonzero entries of a coset matrix with the
/// positions they occupy in `1..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FineLayout {
    pub blocks: Vec<Block>,
    /// 1-based position of the first unit of each block.
    pub start: Vec<usize>,
    pub sub_partition: Partition,
}

impl FineLayout {
    pub fn total(&self) -> usize {
        self.sub_partition.total()
    }

    /// Positions `start..start + size` of block `b`.
    pub fn positions(&self, b: usize) -> std::ops::Range<usize> {
        self.start[b]..self.start[b] + self.blocks[b].size
    }

    /// Index of the block with the given (0-based) row and column.
    pub fn find(&self, row: usize, col: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.row == row && b.col == col)
    }

    /// Index of the block containing the 1-based position `p`.
    pub fn block_of(&self, p: usize) -> usize {
        self.start
            .iter()
            .rposition(|&s| s <= p)
            .expect("position out of range")
    }
}

pub fn fine_layout(s: &CosetMatrix) -> FineLayout {
    let mut blocks = Vec::new();
    let mut start = Vec::new();
    let mut pos = 1;
    for (i, row) in s.entries().iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            if k > 0 {
                blocks.push(Block {
                    row: i,
                    col: j,
                    size: k,
                });
                start.push(pos);
                pos += k;
            }
        }
    }
    let sub_partition = Partition::new(blocks.iter().map(|b| b.size).collect())
        .expect("a coset matrix has at least one nonzero entry");
    FineLayout {
        blocks,
        start,
        sub_partition,
    }
}

/// The involution `τ_s` on blocks and on positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockInvolution {
    /// `pairing[b]` is the block `(j, i)` matched with block `b = (i, j)`.
    pub pairing: Vec<usize>,
    pub fixed_blocks: Vec<usize>,
    pub position_map: Permutation,
}

impl BlockInvolution {
    pub fn is_fixed(&self, b: usize) -> bool {
        self.pairing[b] == b
    }
}

/// Builds `τ_s` from the interval description.
///
/// Even case: each diagonal interval `I_{i,i}` is reversed about its
/// midpoint and `I_{i,j}`, `I_{j,i}` are exchanged order-reversingly.
/// Odd case: diagonal intervals are fixed pointwise and `I_{i,j}`,
/// `I_{j,i}` are exchanged preserving order.
pub fn block_involution(s: &CosetMatrix) -> BlockInvolution {
    let layout = fine_layout(s);
    let nblocks = layout.blocks.len();
    let pairing: Vec<usize> = layout
        .blocks
        .iter()
        .map(|b| layout.find(b.col, b.row).expect("symmetric matrix"))
        .collect();
    let fixed_blocks: Vec<usize> = (0..nblocks).filter(|&b| pairing[b] == b).collect();

    let n = layout.total();
    let mut images = vec![0; n];
    for b in 0..nblocks {
        let partner = pairing[b];
        let k = layout.blocks[b].size;
        let from = layout.start[b];
        let to = layout.start[partner];
        for off in 0..k {
            let target = match s.case() {
                CaseTag::Even => to + (k - 1 - off),
                CaseTag::Odd => to + off,
            };
            images[from + off - 1] = target;
        }
    }
    BlockInvolution {
        pairing,
        fixed_blocks,
        position_map: Permutation::new(images).expect("τ_s is a bijection"),
    }
}
