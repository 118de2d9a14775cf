//! Library side of the `hhl` command: database files, importers, the survey
//! runner and report rendering.

pub mod database;
pub mod import;
pub mod report;
pub mod survey;

use std::ops::Range;

use anyhow::{bail, Context, Result};
use hhl_core::fan::{class_group, DivisorClassMap, Fan};
use hhl_core::IntMatrix;

/// Parses `A..B`, `A..` or `..B` (half-open).
pub fn parse_range(s: &str) -> Result<Range<usize>> {
    let (a, b) = s.split_once("..").context("range must look like A..B")?;
    let a = if a.is_empty() {
        0
    } else {
        a.parse().context("range start")?
    };
    let b = if b.is_empty() {
        usize::MAX
    } else {
        b.parse().context("range end")?
    };
    if a > b {
        bail!("empty range {s}");
    }
    Ok(a..b)
}

/// The computed class map, or one given as `;`-separated rows of
/// `,`-separated integers.
pub fn class_map(fan: &Fan, rows: Option<&str>) -> Result<DivisorClassMap> {
    let Some(text) = rows else {
        return Ok(class_group(fan)?);
    };
    let rows: Vec<Vec<i64>> = text
        .split(';')
        .map(|r| r.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()
        .context("class map must be rows of integers like 1,1,0;0,1,1")?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        bail!("class map rows have different lengths");
    }
    Ok(DivisorClassMap::from_matrix(fan, IntMatrix::from_i64_rows(&rows))?)
}
