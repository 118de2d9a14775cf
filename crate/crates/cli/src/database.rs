//! Locating and loading the canonical collection files.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use hhl_core::fan::{parse_collection, VarietyRecord};

/// Environment variable naming the database directory.
pub const DB_ENV: &str = "HHL_DB_DIR";

/// Checksum manifest written next to the collection files.
pub const MANIFEST: &str = "SHA256SUMS";

/// The `data/` directory of this repository.
pub fn bundled_db_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn collection_file_name(dim: usize) -> String {
    format!("smooth_fano_{dim}.jsonl")
}

pub fn load_dimension(dir: &Path, dim: usize) -> Result<Vec<VarietyRecord>> {
    let path = dir.join(collection_file_name(dim));
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("no database for dimension {dim} at {}", path.display()))?;
    let records = parse_collection(&text).with_context(|| format!("reading {}", path.display()))?;
    if let Some(bad) = records.iter().find(|r| r.dim != dim) {
        bail!("{} contains a dimension-{} record", path.display(), bad.dim);
    }
    Ok(records)
}

pub fn find(dir: &Path, dim: usize, index: usize) -> Result<VarietyRecord> {
    load_dimension(dir, dim)?
        .into_iter()
        .find(|r| r.database_index == index)
        .with_context(|| format!("no variety with index {index} in dimension {dim}"))
}
