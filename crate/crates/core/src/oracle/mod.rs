//! Brute-force checks at desk scale: flags over finite fields for the odd
//! case, and an exact quaternion-algebra model for the Galois involution.
//!
//! Finite fields carry no noncommutative division algebras, so the flag
//! oracle only probes the split odd-case combinatorics.

pub mod cache;
pub mod field;
pub mod flags;
pub mod linalg;
pub mod quaternion;
pub mod reduce;
pub mod sampling;

pub use cache::{cached_census, resolve_cache_dir, CacheStatus, CACHE_DIR_ENV, CACHE_VERSION};
pub use field::{Fe, FieldSpec};
pub use flags::{
    enumerate_flags, flag_count, flag_profile, gaussian_binomial, profile_census, representative_flag,
    visit_flags, Flag, FlagProfile, ProfileCensus, DEFAULT_BUDGET,
};
pub use quaternion::{quaternion_model_check, quaternion_model_check_int, QuaternionElem, QuaternionReport};
pub use reduce::{is_frobenius_fixed, reduce_to_representative, Reduction};
pub use sampling::{profile_invariance_check, random_base_gl, InvarianceReport};
