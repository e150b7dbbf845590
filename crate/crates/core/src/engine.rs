//! Decision procedure for distinction of `St(χ)`.
//!
//! Step one asks whether the open orbit of the minimal parabolic supports
//! `χ`. Step two sweeps every next-to-minimal parabolic: if the coarsening
//! of the open orbit supports `χ`, the invariant form restricts non-trivially
//! to the corresponding induced representation and `St(χ)` is not
//! distinguished.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::coset::{anti_diagonal, coarsen, enumerate_coset_matrices, CaseTag, Partition};
use crate::error::Result;
use crate::solver::{matrix_size, orbit_supports, ChiToken, SupportReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Distinguished,
    NotDistinguished,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Distinguished => "DISTINGUISHED",
            Status::NotDistinguished => "NOT_DISTINGUISHED",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Minimal,
    NextToMinimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub stage: Stage,
    pub partition: Partition,
    /// `s` is the open orbit (minimal stage) or its coarsening.
    pub distinguished_orbit: bool,
    pub report: SupportReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctionVerdict {
    pub case: CaseTag,
    pub m: usize,
    pub d: usize,
    pub chi: ChiToken,
    pub status: Status,
    pub multiplicity: u8,
    pub trace: Vec<TraceEntry>,
}

impl DistinctionVerdict {
    /// Trace entries whose orbit supports `χ`.
    pub fn supporting(&self) -> impl Iterator<Item = &TraceEntry> {
        self.trace.iter().filter(|e| e.report.feasible)
    }
}

pub fn steinberg_decision(case: CaseTag, m: usize, d: usize, chi: ChiToken) -> Result<DistinctionVerdict> {
    let n = matrix_size(case, m, d)?;
    let kappa = Rational64::from_integer(1);
    let open = anti_diagonal(case, n);
    let mut trace = Vec::new();

    let minimal = Partition::minimal(n)?;
    for s in enumerate_coset_matrices(&minimal, case)? {
        trace.push(TraceEntry {
            stage: Stage::Minimal,
            partition: minimal.clone(),
            distinguished_orbit: s == open,
            report: orbit_supports(&s, chi, kappa)?,
        });
    }
    let open_supports = trace.iter().any(|e| e.distinguished_orbit && e.report.feasible);

    let mut killed = false;
    let mut stray = false;
    if open_supports {
        for at in 0..n.saturating_sub(1) {
            let p = Partition::next_to_minimal(n, at)?;
            let coarse = coarsen(&open, at + 1)?;
            for s in enumerate_coset_matrices(&p, case)? {
                let report = orbit_supports(&s, chi, kappa)?;
                let is_coarse = s == coarse;
                if report.feasible {
                    if is_coarse {
                        killed = true;
                    } else {
                        stray = true;
                    }
                }
                trace.push(TraceEntry {
                    stage: Stage::NextToMinimal,
                    partition: p.clone(),
                    distinguished_orbit: is_coarse,
                    report,
                });
            }
        }
    }

    let status = if !open_supports || killed {
        Status::NotDistinguished
    } else if stray {
        Status::Inconclusive
    } else {
        Status::Distinguished
    };
    Ok(DistinctionVerdict {
        case,
        m,
        d,
        chi,
        status,
        multiplicity: u8::from(status == Status::Distinguished),
        trace,
    })
}

/// `η^{md−1}` as a token.
pub fn exponent_parity_formula(m: usize, d: usize) -> ChiToken {
    if (m * d).is_multiple_of(2) {
        ChiToken::Eta
    } else {
        ChiToken::Triv
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub case: CaseTag,
    pub m: usize,
    pub d: usize,
    pub expected: ChiToken,
    pub triv: Status,
    pub eta: Status,
    pub consistent: bool,
    pub diagnostic: Option<String>,
}

pub fn cross_check_report(case: CaseTag, m: usize, d: usize) -> Result<CrossCheck> {
    let expected = exponent_parity_formula(m, d);
    let triv = steinberg_decision(case, m, d, ChiToken::Triv)?.status;
    let eta = steinberg_decision(case, m, d, ChiToken::Eta)?.status;
    let status_of = |chi| if chi == ChiToken::Triv { triv } else { eta };

    let mut problems = Vec::new();
    for chi in ChiToken::ALL {
        let want = if chi == expected {
            Status::Distinguished
        } else {
            Status::NotDistinguished
        };
        let got = status_of(chi);
        if got != want {
            problems.push(format!("chi = {chi}: expected {want}, engine says {got}"));
        }
    }
    Ok(CrossCheck {
        case,
        m,
        d,
        expected,
        triv,
        eta,
        consistent: problems.is_empty(),
        diagnostic: (!problems.is_empty()).then(|| problems.join("; ")),
    })
}

pub fn cross_check(case: CaseTag, m: usize, d: usize) -> Result<bool> {
    Ok(cross_check_report(case, m, d)?.consistent)
}
