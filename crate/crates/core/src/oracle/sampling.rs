use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::field::FieldSpec;
use super::flags::{flag_profile, representative_flag};
use super::linalg::{self, Vector};
use crate::coset::{enumerate_coset_matrices, CaseTag, CosetMatrix, Partition};
use crate::error::Result;

/// A uniformly random element of `GL(n, F_q)`.
pub fn random_base_gl<R: Rng>(f: &FieldSpec, n: usize, rng: &mut R) -> Vec<Vector> {
    let base = f.base_elements();
    loop {
        let m: Vec<Vector> = (0..n)
            .map(|_| (0..n).map(|_| *base.choose(rng).expect("F_q nonempty")).collect())
            .collect();
        if linalg::rank(f, &m) == n {
            return m;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceFailure {
    pub s: CosetMatrix,
    pub h: Vec<Vector>,
    pub found: CosetMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub classes: usize,
    pub samples_per_class: usize,
    pub failures: Vec<InvarianceFailure>,
}

/// Moves each representative flag by `samples` random `h` and recomputes
/// the profile.
pub fn profile_invariance_check(
    f: &FieldSpec,
    partition: &Partition,
    samples: usize,
    seed: u64,
) -> Result<InvarianceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes = enumerate_coset_matrices(partition, CaseTag::Odd)?;
    let mut failures = Vec::new();
    for s in &classes {
        let flag = representative_flag(s, f)?;
        for _ in 0..samples {
            let h = random_base_gl(f, partition.total(), &mut rng);
            let found = flag_profile(&flag.transform(f, &h)?, f);
            if &found != s {
                failures.push(InvarianceFailure {
                    s: s.clone(),
                    h,
                    found,
                });
            }
        }
    }
    Ok(InvarianceReport {
        classes: classes.len(),
        samples_per_class: samples,
        failures,
    })
}
