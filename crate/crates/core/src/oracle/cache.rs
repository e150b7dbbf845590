//! On-disk cache of profile censuses, one JSON file per `(q, partition)`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::field::FieldSpec;
use super::flags::{profile_census, ProfileCensus};
use crate::coset::Partition;
use crate::error::{Error, Result};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "DISTINCTION_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    census: ProfileCensus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
}

/// The explicit directory if given, else `$DISTINCTION_CACHE_DIR`.
pub fn resolve_cache_dir(explicit: Option<PathBuf>) -> Option<PathBuf> {
    explicit.or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
}

pub fn cache_path(dir: &Path, q: usize, partition: &Partition) -> PathBuf {
    let parts: Vec<String> = partition.parts().iter().map(|p| p.to_string()).collect();
    dir.join(format!(
        "census-v{CACHE_VERSION}-q{q}-n{}-p{}.json",
        partition.total(),
        parts.join("_")
    ))
}

fn load(path: &Path, q: usize, partition: &Partition) -> Option<ProfileCensus> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    (file.version == CACHE_VERSION && file.census.q == q && &file.census.partition == partition)
        .then_some(file.census)
}

/// Census from the cache when present and current; computes and stores it
/// otherwise. Unreadable or stale files are recomputed and overwritten.
pub fn cached_census(
    f: &FieldSpec,
    partition: &Partition,
    budget: u128,
    dir: Option<&Path>,
) -> Result<(ProfileCensus, CacheStatus)> {
    let Some(dir) = dir else {
        return Ok((profile_census(f, partition, budget)?, CacheStatus::Disabled));
    };
    let path = cache_path(dir, f.q(), partition);
    if let Some(c) = load(&path, f.q(), partition) {
        return Ok((c, CacheStatus::Hit));
    }
    let census = profile_census(f, partition, budget)?;
    fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
    let text = serde_json::to_string(&CacheFile {
        version: CACHE_VERSION,
        census: census.clone(),
    })
    .map_err(|e| Error::Cache(e.to_string()))?;
    fs::write(&path, text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    Ok((census, CacheStatus::Miss))
}
