//! Exact linear algebra over `F_{q²}`. Subspaces are lists of row vectors.

use super::field::{Fe, FieldSpec};

pub type Vector = Vec<Fe>;

/// Reduced row echelon form in place; zero rows are dropped. Returns pivot
/// columns.
pub fn rref(f: &FieldSpec, rows: &mut Vec<Vector>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &FieldSpec, rows: &[Vector]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

pub fn span_basis(f: &FieldSpec, rows: &[Vector]) -> Vec<Vector> {
    let mut m = rows.to_vec();
    rref(f, &mut m);
    m
}

pub fn union(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    a.iter().chain(b).cloned().collect()
}

pub fn same_span(f: &FieldSpec, a: &[Vector], b: &[Vector]) -> bool {
    let r = rank(f, a);
    r == rank(f, b) && r == rank(f, &union(a, b))
}

/// Zassenhaus: echelonize `[a | a]` over `[b | 0]`; rows `[0 | w]` span `A ∩ B`.
pub fn intersection(f: &FieldSpec, a: &[Vector], b: &[Vector], n: usize) -> Vec<Vector> {
    let mut m: Vec<Vector> = a
        .iter()
        .map(|x| x.iter().chain(x.iter()).copied().collect())
        .chain(
            b.iter()
                .map(|x| x.iter().copied().chain(std::iter::repeat_n(0, n)).collect()),
        )
        .collect();
    if m.is_empty() {
        return Vec::new();
    }
    rref(f, &mut m);
    m.into_iter()
        .filter(|row| row[..n].iter().all(|&x| x == 0))
        .map(|row| row[n..].to_vec())
        .collect()
}

/// Candidates that extend `base` to a basis of `span(base ∪ candidates)`.
pub fn extend_basis(f: &FieldSpec, base: &[Vector], candidates: &[Vector]) -> Vec<Vector> {
    let mut acc = base.to_vec();
    let mut r = rank(f, &acc);
    let mut picked = Vec::new();
    for c in candidates {
        acc.push(c.clone());
        let r2 = rank(f, &acc);
        if r2 > r {
            r = r2;
            picked.push(c.clone());
        } else {
            acc.pop();
        }
    }
    picked
}

pub fn frob_vec(f: &FieldSpec, v: &[Fe]) -> Vector {
    v.iter().map(|&x| f.frob(x)).collect()
}

pub fn frob_all(f: &FieldSpec, rows: &[Vector]) -> Vec<Vector> {
    rows.iter().map(|v| frob_vec(f, v)).collect()
}

pub fn scale(f: &FieldSpec, c: Fe, v: &[Fe]) -> Vector {
    v.iter().map(|&x| f.mul(c, x)).collect()
}

pub fn add_vec(f: &FieldSpec, a: &[Fe], b: &[Fe]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn sub_vec(f: &FieldSpec, a: &[Fe], b: &[Fe]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

/// Square matrices are stored by rows.
pub fn mat_vec(f: &FieldSpec, m: &[Vector], v: &[Fe]) -> Vector {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
        .collect()
}

pub fn mat_mul(f: &FieldSpec, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(0, |acc, (&x, brow)| f.add(acc, f.mul(x, brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vector]) -> Vec<Vector> {
    let n = m.first().map_or(0, Vec::len);
    (0..n).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn identity(n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| (0..n).map(|j| Fe::from(i == j)).collect())
        .collect()
}

pub fn inverse(f: &FieldSpec, m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let mut aug: Vec<Vector> = m
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().copied().chain(e).collect())
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
