//! Action of `τ_s` on the roots of the standard Levi `M` of `P`.
//!
//! A root is an ordered pair `(p, q)` of distinct positions; it is positive
//! when `p < q`. `Φ_M` consists of the roots whose two positions lie in the
//! same part of the partition.

use serde::{Deserialize, Serialize};

use super::{block_involution, fine_layout, CosetMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootImage {
    pub root: (usize, usize),
    pub image: (usize, usize),
    /// Both positions in one block of the fine layout, i.e. a root of `M_s`.
    pub in_fine_block: bool,
}

impl RootImage {
    pub fn is_positive(&self) -> bool {
        self.root.0 < self.root.1
    }

    pub fn sign_preserved(&self) -> bool {
        (self.root.0 < self.root.1) == (self.image.0 < self.image.1)
    }
}

/// Sign table of `τ_s` on `Φ_M^+ ∪ Φ_M^-`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootAction {
    pub s: CosetMatrix,
    pub table: Vec<RootImage>,
}

impl RootAction {
    /// Roots of `Φ_M^±` sent to the opposite sign.
    pub fn violations(&self) -> Vec<RootImage> {
        self.table
            .iter()
            .filter(|r| !r.sign_preserved())
            .copied()
            .collect()
    }

    /// `τ_s(Φ_M^+) ⊂ Φ^+` and `τ_s(Φ_M^-) ⊂ Φ^-`.
    pub fn holds(&self) -> bool {
        self.table.iter().all(RootImage::sign_preserved)
    }

    /// Sign changes on roots of `Φ_M` outside `Φ_{M_s}`.
    pub fn crossing_violations(&self) -> Vec<RootImage> {
        self.table
            .iter()
            .filter(|r| !r.in_fine_block && !r.sign_preserved())
            .copied()
            .collect()
    }

    /// Sign changes on roots of `Φ_{M_s}`. In the even case `τ_s` reverses
    /// every fine block, so each such root with both ends in one block of
    /// size ≥ 2 lands here.
    pub fn fine_block_flips(&self) -> Vec<RootImage> {
        self.table
            .iter()
            .filter(|r| r.in_fine_block && !r.sign_preserved())
            .copied()
            .collect()
    }
}

pub fn root_action(s: &CosetMatrix) -> RootAction {
    let tau = block_involution(s).position_map;
    let layout = fine_layout(s);
    let mut coarse = Vec::with_capacity(s.total());
    for (i, &part) in s.partition().parts().iter().enumerate() {
        coarse.extend(std::iter::repeat_n(i, part));
    }
    let n = s.total();
    let mut table = Vec::new();
    for p in 1..=n {
        for q in 1..=n {
            if p == q || coarse[p - 1] != coarse[q - 1] {
                continue;
            }
            table.push(RootImage {
                root: (p, q),
                image: (tau.apply(p), tau.apply(q)),
                in_fine_block: layout.block_of(p) == layout.block_of(q),
            });
        }
    }
    RootAction { s: s.clone(), table }
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_coset_matrices, CaseTag, Partition};
    use super::*;

    fn mat(case: CaseTag, parts: &[usize], e: Vec<Vec<usize>>) -> CosetMatrix {
        CosetMatrix::new(case, Partition::new(parts.to_vec()).unwrap(), e).unwrap()
    }

    #[test]
    fn minimal_partition_has_no_levi_roots() {
        let s = mat(CaseTag::Even, &[1, 1], vec![vec![0, 1], vec![1, 0]]);
        let r = root_action(&s);
        assert!(r.table.is_empty());
        assert!(r.holds());
    }

    #[test]
    fn even_diagonal_blocks_are_reversed() {
        let s = mat(CaseTag::Even, &[2, 2], vec![vec![2, 0], vec![0, 2]]);
        let r = root_action(&s);
        assert_eq!(r.table.len(), 4);
        // (1,2) ↦ (2,1) and (3,4) ↦ (4,3): the midpoint symmetry flips them
        assert_eq!(r.fine_block_flips().len(), 4);
        assert!(r.crossing_violations().is_empty());
        // τ_s still maps Φ_M onto itself
        for img in &r.table {
            let (a, b) = img.image;
            assert_eq!((a - 1) / 2, (b - 1) / 2);
        }
    }

    #[test]
    fn odd_case_preserves_levi_signs() {
        for n in 1..=6 {
            for p in Partition::all_of(n) {
                for s in enumerate_coset_matrices(&p, CaseTag::Odd).unwrap() {
                    assert!(root_action(&s).holds(), "{s}");
                }
            }
        }
    }

    #[test]
    fn crossing_roots_keep_their_sign_in_both_cases() {
        for n in 1..=6 {
            for p in Partition::all_of(n) {
                for case in [CaseTag::Even, CaseTag::Odd] {
                    for s in enumerate_coset_matrices(&p, case).unwrap() {
                        assert!(root_action(&s).crossing_violations().is_empty(), "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn partition_211_even() {
        let p = Partition::new(vec![2, 1, 1]).unwrap();
        let all = enumerate_coset_matrices(&p, CaseTag::Even).unwrap();
        assert!(!all.is_empty());
        for s in &all {
            let r = root_action(s);
            assert!(r.crossing_violations().is_empty());
            // fine blocks of size 2 inside the first part are the only flips
            let big_blocks = fine_layout(s).blocks.iter().filter(|b| b.size == 2).count();
            assert_eq!(r.fine_block_flips().len(), 2 * big_blocks);
        }
    }
}
