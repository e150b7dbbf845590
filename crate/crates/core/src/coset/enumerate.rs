use super::{CaseTag, CosetMatrix, Partition};
use crate::error::Result;

/// All coset matrices for `partition`, each once, in canonical order.
///
/// The canonical order is lexicographic on the row-major entries, largest
/// first: the diagonal matrix (the closed orbit) leads whenever it exists.
pub fn enumerate_coset_matrices(partition: &Partition, case: CaseTag) -> Result<Vec<CosetMatrix>> {
    let t = partition.len();
    let parts = partition.parts();
    let mut entries = vec![vec![0usize; t]; t];
    let mut remaining: Vec<usize> = parts.to_vec();
    let mut out = Vec::new();
    fill_row(0, case, &mut entries, &mut remaining, &mut out);

    let mut mats: Vec<CosetMatrix> = out
        .into_iter()
        .map(|e| CosetMatrix::new_unchecked(case, partition.clone(), e))
        .collect();
    mats.sort_by(|a, b| b.row_major().cmp(&a.row_major()));
    Ok(mats)
}

// Rows are filled top to bottom; entries left of the diagonal are already
// fixed by symmetry, so row `i` distributes what is left of `remaining[i]`
// over the diagonal and the columns to its right.
fn fill_row(
    i: usize,
    case: CaseTag,
    entries: &mut Vec<Vec<usize>>,
    remaining: &mut Vec<usize>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let t = entries.len();
    if i == t {
        out.push(entries.clone());
        return;
    }
    let budget = remaining[i];
    let step = if case == CaseTag::Even { 2 } else { 1 };
    let mut diag = 0;
    while diag <= budget {
        entries[i][i] = diag;
        remaining[i] = budget - diag;
        fill_offdiag(i, i + 1, case, entries, remaining, out);
        diag += step;
    }
    entries[i][i] = 0;
    remaining[i] = budget;
}

fn fill_offdiag(
    i: usize,
    j: usize,
    case: CaseTag,
    entries: &mut Vec<Vec<usize>>,
    remaining: &mut Vec<usize>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let t = entries.len();
    if j == t {
        if remaining[i] == 0 {
            fill_row(i + 1, case, entries, remaining, out);
        }
        return;
    }
    let max = remaining[i].min(remaining[j]);
    for x in 0..=max {
        entries[i][j] = x;
        entries[j][i] = x;
        remaining[i] -= x;
        remaining[j] -= x;
        fill_offdiag(i, j + 1, case, entries, remaining, out);
        remaining[i] += x;
        remaining[j] += x;
    }
    entries[i][j] = 0;
    entries[j][i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn entries(ms: &[CosetMatrix]) -> Vec<Vec<Vec<usize>>> {
        ms.iter().map(|m| m.entries().to_vec()).collect()
    }

    #[test]
    fn two_singletons_odd() {
        let ms = enumerate_coset_matrices(&part(&[1, 1]), CaseTag::Odd).unwrap();
        assert_eq!(
            entries(&ms),
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]]
        );
    }

    #[test]
    fn two_singletons_even() {
        let ms = enumerate_coset_matrices(&part(&[1, 1]), CaseTag::Even).unwrap();
        assert_eq!(entries(&ms), vec![vec![vec![0, 1], vec![1, 0]]]);
    }

    #[test]
    fn two_twos_odd() {
        let ms = enumerate_coset_matrices(&part(&[2, 2]), CaseTag::Odd).unwrap();
        assert_eq!(
            entries(&ms),
            vec![
                vec![vec![2, 0], vec![0, 2]],
                vec![vec![1, 1], vec![1, 1]],
                vec![vec![0, 2], vec![2, 0]],
            ]
        );
    }

    #[test]
    fn odd_single_part_can_be_empty_in_even_case() {
        let ms = enumerate_coset_matrices(&part(&[1]), CaseTag::Even).unwrap();
        assert!(ms.is_empty());
        let ms = enumerate_coset_matrices(&part(&[3]), CaseTag::Odd).unwrap();
        assert_eq!(ms.len(), 1);
    }

    // Brute force: every symmetric matrix with entries bounded by the parts.
    fn brute_force(p: &Partition, case: CaseTag) -> HashSet<Vec<Vec<usize>>> {
        let t = p.len();
        let bound = *p.parts().iter().max().unwrap();
        let cells: Vec<(usize, usize)> = (0..t).flat_map(|i| (i..t).map(move |j| (i, j))).collect();
        let mut out = HashSet::new();
        let mut digits = vec![0usize; cells.len()];
        loop {
            let mut m = vec![vec![0; t]; t];
            for (&(i, j), &x) in cells.iter().zip(&digits) {
                m[i][j] = x;
                m[j][i] = x;
            }
            if CosetMatrix::new(case, p.clone(), m.clone()).is_ok() {
                out.insert(m);
            }
            let mut k = 0;
            loop {
                if k == digits.len() {
                    return out;
                }
                digits[k] += 1;
                if digits[k] <= bound {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn matches_brute_force_up_to_five() {
        for n in 1..=5 {
            for p in Partition::all_of(n) {
                if p.len() > 4 {
                    continue;
                }
                for case in [CaseTag::Even, CaseTag::Odd] {
                    let ms = enumerate_coset_matrices(&p, case).unwrap();
                    let got: HashSet<_> = entries(&ms).into_iter().collect();
                    assert_eq!(got.len(), ms.len(), "duplicates for {p} {case}");
                    assert_eq!(got, brute_force(&p, case), "{p} {case}");
                }
            }
        }
    }

    #[test]
    fn minimal_partition_counts_involutions() {
        // involutions of n points, and fixed-point-free ones
        let involutions = [1, 2, 4, 10, 26, 76];
        let fpf = [0, 1, 0, 3, 0, 15];
        for n in 1..=6 {
            let p = Partition::minimal(n).unwrap();
            assert_eq!(
                enumerate_coset_matrices(&p, CaseTag::Odd).unwrap().len(),
                involutions[n - 1]
            );
            assert_eq!(
                enumerate_coset_matrices(&p, CaseTag::Even).unwrap().len(),
                fpf[n - 1]
            );
        }
    }
}
