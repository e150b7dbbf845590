//! Explicit double-coset representatives: the permutation `w_s` of the
//! even case and the symbolic matrix `u_s` of the odd case.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{block_involution, fine_layout, CaseTag, CosetMatrix, Permutation};
use crate::error::{Error, Result};
use crate::quadratic::{mat_inverse, mat_mul, Quadratic};

/// Which construction produced a `w_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WsSource {
    IndexFormulas,
    Intervals,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FormulaDiagnostic {
    /// Several source positions are sent to the same target.
    NotBijective {
        s: CosetMatrix,
        collisions: Vec<(usize, Vec<usize>)>,
    },
    /// A bijection, but `w_s w w_s^{-1}` is not `τ_s`.
    ConjugationMismatch {
        s: CosetMatrix,
        expected: Permutation,
        found: Permutation,
    },
}

impl fmt::Display for FormulaDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaDiagnostic::NotBijective { s, collisions } => {
                write!(f, "w_s index formulas not bijective for s = {s}:")?;
                for (target, sources) in collisions {
                    write!(f, " {sources:?} -> {target}")?;
                }
                Ok(())
            }
            FormulaDiagnostic::ConjugationMismatch { s, expected, found } => write!(
                f,
                "w_s index formulas give tau = {found}, interval description gives {expected} (s = {s})"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WsConstruction {
    pub permutation: Permutation,
    pub source: WsSource,
    pub diagnostic: Option<FormulaDiagnostic>,
}

// A maximal run of the ordered sum `m_{1,1} + n_{1,2} + … + m_{1,1}`:
// `first_half` distinguishes the two copies of a diagonal half-block.
#[derive(Clone, Copy, Debug)]
struct Segment {
    row: usize,
    col: usize,
    size: usize,
    first_half: bool,
}

// The ordered sum indexing the basis `u_1, …, u_n`: the upper triangle with
// halved diagonal read row by row, followed by its mirror image.
fn source_segments(s: &CosetMatrix) -> Vec<Segment> {
    let t = s.size();
    let mut first = Vec::new();
    for i in 0..t {
        let half = s.get(i, i) / 2;
        if half > 0 {
            first.push(Segment {
                row: i,
                col: i,
                size: half,
                first_half: true,
            });
        }
        for j in i + 1..t {
            if s.get(i, j) > 0 {
                first.push(Segment {
                    row: i,
                    col: j,
                    size: s.get(i, j),
                    first_half: true,
                });
            }
        }
    }
    let second: Vec<Segment> = first
        .iter()
        .rev()
        .map(|seg| Segment {
            row: seg.col,
            col: seg.row,
            size: seg.size,
            first_half: false,
        })
        .collect();
    first.into_iter().chain(second).collect()
}

// 0-based offset of the lexicographic interval `I_{i,j}`.
fn lex_offset(s: &CosetMatrix, i: usize, j: usize) -> usize {
    let before_rows: usize = s.partition().parts()[..i].iter().sum();
    before_rows + s.entries()[i][..j].iter().sum::<usize>()
}

fn row_offset(s: &CosetMatrix, i: usize) -> usize {
    s.partition().parts()[..i].iter().sum()
}

/// `w_s` built by sending each run of the ordered sum, in order, onto its
/// lexicographic interval (the two halves of `I_{i,i}` in turn).
pub fn ws_from_intervals(s: &CosetMatrix) -> Permutation {
    let mut images = Vec::with_capacity(s.total());
    for seg in source_segments(s) {
        let base = if seg.row == seg.col {
            lex_offset(s, seg.row, seg.row) + if seg.first_half { 0 } else { seg.size }
        } else {
            lex_offset(s, seg.row, seg.col)
        };
        images.extend((1..=seg.size).map(|k| base + k));
    }
    Permutation::new(images).expect("interval construction is bijective")
}

/// The displayed index formulas for `w_s`, read literally on their
/// right-hand sides. For a diagonal half-block the displayed target is the
/// start of row `i` (not of `I_{i,i}`), so the terms `n_{i,1} + … +
/// n_{i,i-1}` are absent.
pub fn ws_from_index_formulas(s: &CosetMatrix) -> std::result::Result<Permutation, FormulaDiagnostic> {
    let n = s.total();
    let mut images = Vec::with_capacity(n);
    for seg in source_segments(s) {
        let base = if seg.row == seg.col {
            let half = s.get(seg.row, seg.row) / 2;
            row_offset(s, seg.row) + if seg.first_half { 0 } else { half }
        } else {
            lex_offset(s, seg.row, seg.col)
        };
        images.extend((1..=seg.size).map(|k| base + k));
    }
    let mut preimages: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (src, &dst) in images.iter().enumerate() {
        preimages[dst - 1].push(src + 1);
    }
    let collisions: Vec<(usize, Vec<usize>)> = preimages
        .into_iter()
        .enumerate()
        .filter(|(_, v)| v.len() > 1)
        .map(|(t, v)| (t + 1, v))
        .collect();
    if !collisions.is_empty() {
        return Err(FormulaDiagnostic::NotBijective {
            s: s.clone(),
            collisions,
        });
    }
    let ws = Permutation::new(images).expect("checked bijective");
    let expected = block_involution(s).position_map;
    let found = conjugate_reversal(&ws);
    if found != expected {
        return Err(FormulaDiagnostic::ConjugationMismatch {
            s: s.clone(),
            expected,
            found,
        });
    }
    Ok(ws)
}

/// `w_s ∘ w ∘ w_s^{-1}` with `w` the order reversal.
pub(crate) fn conjugate_reversal(ws: &Permutation) -> Permutation {
    let w = Permutation::reversal(ws.len());
    ws.compose(&w).compose(&ws.inverse())
}

/// `w_s` for an even-case coset matrix. The index formulas are tried first;
/// when they fail the interval construction is used and the failure is kept
/// as a diagnostic.
pub fn build_ws_even(s: &CosetMatrix) -> Result<WsConstruction> {
    if s.case() != CaseTag::Even {
        return Err(Error::CaseMismatch {
            expected: "even".into(),
            found: s.case().to_string(),
        });
    }
    match ws_from_index_formulas(s) {
        Ok(permutation) => Ok(WsConstruction {
            permutation,
            source: WsSource::IndexFormulas,
            diagnostic: None,
        }),
        Err(diag) => Ok(WsConstruction {
            permutation: ws_from_intervals(s),
            source: WsSource::Intervals,
            diagnostic: Some(diag),
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepSymbol {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "l")]
    Lambda,
    #[serde(rename = "-l")]
    NegLambda,
}

impl RepSymbol {
    fn instantiate(self, lambda: &Quadratic) -> Quadratic {
        match self {
            RepSymbol::Zero => lambda.zero_like(),
            RepSymbol::One => lambda.one_like(),
            RepSymbol::Lambda => lambda.clone(),
            RepSymbol::NegLambda => -lambda,
        }
    }
}

impl fmt::Display for RepSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepSymbol::Zero => "0",
            RepSymbol::One => "1",
            RepSymbol::Lambda => "λ",
            RepSymbol::NegLambda => "-λ",
        })
    }
}

/// The odd-case representative `u_s` with `λ` kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicRepMatrix {
    pub entries: Vec<Vec<RepSymbol>>,
}

impl SymbolicRepMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Substitutes `λ = √c`; `c` must not be a rational square for `θ` to be
    /// a field automorphism.
    pub fn instantiate(&self, c: &BigRational) -> Vec<Vec<Quadratic>> {
        let lambda = Quadratic::sqrt_of(c.clone());
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| x.instantiate(&lambda)).collect())
            .collect()
    }
}

impl fmt::Display for SymbolicRepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `u_s`: identity on each `B_{i,i}` and `[[I, -λI], [I, λI]]` on each
/// `B_{i,j} ∪ B_{j,i}`, `i < j`.
pub fn build_us_odd(s: &CosetMatrix) -> Result<SymbolicRepMatrix> {
    if s.case() != CaseTag::Odd {
        return Err(Error::CaseMismatch {
            expected: "odd".into(),
            found: s.case().to_string(),
        });
    }
    let layout = fine_layout(s);
    let n = layout.total();
    let mut entries = vec![vec![RepSymbol::Zero; n]; n];
    for (b, block) in layout.blocks.iter().enumerate() {
        if block.row == block.col {
            for p in layout.positions(b) {
                entries[p - 1][p - 1] = RepSymbol::One;
            }
        } else if block.row < block.col {
            let partner = layout.find(block.col, block.row).expect("symmetric");
            for (p, q) in layout.positions(b).zip(layout.positions(partner)) {
                entries[p - 1][p - 1] = RepSymbol::One;
                entries[p - 1][q - 1] = RepSymbol::NegLambda;
                entries[q - 1][p - 1] = RepSymbol::One;
                entries[q - 1][q - 1] = RepSymbol::Lambda;
            }
        }
    }
    Ok(SymbolicRepMatrix { entries })
}

/// Computes `u_s θ(u_s)^{-1}` exactly with `λ = √c` and reads it as a
/// permutation (column `p` holding its 1 in row `τ(p)`).
pub fn extract_odd_involution(u: &SymbolicRepMatrix, c: &BigRational) -> Result<Permutation> {
    let num = u.instantiate(c);
    let twisted: Vec<Vec<Quadratic>> = num.iter().map(|r| r.iter().map(|x| x.conj()).collect()).collect();
    let inv = mat_inverse(&twisted)
        .ok_or_else(|| Error::DegenerateModel(format!("u_s is singular for λ² = {c}")))?;
    let prod = mat_mul(&num, &inv);
    let n = prod.len();
    let one = num[0][0].one_like();
    let mut images = vec![0; n];
    for col in 0..n {
        let nonzero: Vec<usize> = (0..n).filter(|&r| !prod[r][col].is_zero()).collect();
        if nonzero.len() != 1 || prod[nonzero[0]][col] != one {
            return Err(Error::DegenerateModel(format!(
                "u_s θ(u_s)^-1 is not a permutation matrix (column {})",
                col + 1
            )));
        }
        images[col] = nonzero[0] + 1;
    }
    Permutation::new(images)
}
