//! Moving an arbitrary flag to its orbit representative by an element of
//! `GL(n, F_q)`.
//!
//! With `A_{i,j} = V_i ∩ θV_j` and `B_{i,j} = V_i ∩ θV_{j−1} + V_{i−1} ∩ θV_j`,
//! pick complements `S_{i,j}` of `B_{i,j}` in `A_{i,j}` such that
//! `S_{j,i} = θ(S_{i,j})` and `S_{i,i}` is θ-stable. Then `V_k = ⊕_{i≤k} S_{i,j}`,
//! and sending a basis of each `S_{i,j}` to the matching columns of the
//! representative gives a θ-equivariant map, i.e. a matrix over `F_q`.

use serde::{Deserialize, Serialize};

use super::field::{Fe, FieldSpec};
use super::flags::{flag_profile, representative_flag, Flag};
use super::linalg::{self, Vector};
use crate::coset::{fine_layout, CosetMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub profile: CosetMatrix,
    /// Rows of `h`.
    pub h: Vec<Vector>,
}

fn subspace_sum(f: &FieldSpec, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    linalg::span_basis(f, &linalg::union(a, b))
}

/// θ-fixed vectors spanning the θ-stable subspace spanned by `basis`.
fn fixed_spanning_set(f: &FieldSpec, basis: &[Vector]) -> Vec<Vector> {
    let l = f.lambda();
    basis
        .iter()
        .flat_map(|x| {
            let tx = linalg::frob_vec(f, x);
            [
                linalg::add_vec(f, x, &tx),
                linalg::scale(f, l, &linalg::sub_vec(f, x, &tx)),
            ]
        })
        .collect()
}

pub fn is_frobenius_fixed(f: &FieldSpec, m: &[Vector]) -> bool {
    m.iter().flatten().all(|&x| f.is_base(x))
}

pub fn reduce_to_representative(flag: &Flag, f: &FieldSpec) -> Result<Reduction> {
    let n = flag.n();
    let s = flag_profile(flag, f);
    let target = representative_flag(&s, f)?;
    let layout = fine_layout(&s);

    // V_0 = 0 at index 0
    let v: Vec<Vec<Vector>> = std::iter::once(Vec::new())
        .chain(flag.bases.iter().cloned())
        .collect();
    let tv: Vec<Vec<Vector>> = v.iter().map(|b| linalg::frob_all(f, b)).collect();
    let a = |i: usize, j: usize| linalg::intersection(f, &v[i], &tv[j], n);

    let l = f.lambda();
    let l_inv = f.inv(l).expect("λ ≠ 0");
    let mut x_cols: Vec<Option<Vector>> = vec![None; n];
    let mut g_cols: Vec<Option<Vector>> = vec![None; n];
    let unit = |p: usize| -> Vector { (0..n).map(|i| Fe::from(i == p)).collect() };

    for (b, block) in layout.blocks.iter().enumerate() {
        let (i, j) = (block.row + 1, block.col + 1);
        if i > j {
            continue;
        }
        let big = a(i, j);
        let small = subspace_sum(f, &a(i, j - 1), &a(i - 1, j));
        let candidates = if i == j {
            fixed_spanning_set(f, &big)
        } else {
            big.clone()
        };
        let basis = linalg::extend_basis(f, &small, &candidates);
        if basis.len() != block.size {
            return Err(Error::DegenerateModel(format!(
                "complement S_({i},{j}) has dimension {}, expected {}",
                basis.len(),
                block.size
            )));
        }
        let positions: Vec<usize> = layout.positions(b).map(|p| p - 1).collect();
        if i == j {
            for (x, &p) in basis.into_iter().zip(&positions) {
                x_cols[p] = Some(x);
                g_cols[p] = Some(unit(p));
            }
        } else {
            let partner = layout.find(block.col, block.row).expect("symmetric profile");
            let partner_pos: Vec<usize> = layout.positions(partner).map(|p| p - 1).collect();
            for ((x, &p), &q) in basis.into_iter().zip(&positions).zip(&partner_pos) {
                // g_p = e_p − λ^{-1} e_q spans column p of u_s^{-1}; g_q = θ(g_p)
                let mut g = unit(p);
                g[q] = f.neg(l_inv);
                let tg = linalg::frob_vec(f, &g);
                let tx = linalg::frob_vec(f, &x);
                x_cols[p] = Some(x);
                x_cols[q] = Some(tx);
                g_cols[p] = Some(g);
                g_cols[q] = Some(tg);
            }
        }
    }

    let collect = |cols: Vec<Option<Vector>>| -> Result<Vec<Vector>> {
        let cols = cols
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::DegenerateModel("complements do not cover V".into()))?;
        Ok(linalg::transpose(&cols))
    };
    let x = collect(x_cols)?;
    let g = collect(g_cols)?;
    let x_inv = linalg::inverse(f, &x)
        .ok_or_else(|| Error::DegenerateModel("complements are not independent".into()))?;
    let h = linalg::mat_mul(f, &g, &x_inv);

    if !is_frobenius_fixed(f, &h) {
        return Err(Error::DegenerateModel("h is not defined over F_q".into()));
    }
    if !flag.transform(f, &h)?.same_as(f, &target) {
        return Err(Error::DegenerateModel(
            "h does not carry the flag to its representative".into(),
        ));
    }
    Ok(Reduction { profile: s, h })
}
