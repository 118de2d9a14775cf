//! Inputs shared by the benchmarks.

#[path = "../../core/tests/fixtures/mod.rs"]
pub mod fixtures;

use hhl_core::fan::{parse_collection, Fan};

const FOURFOLDS: &str = include_str!("../../../data/smooth_fano_4.jsonl");

/// The bundled fourfolds in index order.
pub fn fourfolds() -> Vec<Fan> {
    parse_collection(FOURFOLDS)
        .expect("bundled database parses")
        .into_iter()
        .map(|r| r.fan)
        .collect()
}
