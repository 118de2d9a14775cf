//! Parallel per-variety certification with an append-only result cache.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use hhl_core::exceptional::{certify_with, CertifyOptions};
use hhl_core::fan::{bondal_criterion, class_group, unimodular, VarietyRecord};
use hhl_core::{Budget, CheckError, ENGINE_VERSION};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Timeout,
    Error,
}

/// Outcome for one variety. Fields that depend on the certification are
/// `None` unless `status` is `ok`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub dim: usize,
    pub index: usize,
    pub status: Status,
    pub unimodular: bool,
    pub bondal_criterion: bool,
    pub hhl_success: Option<bool>,
    pub strong: Option<bool>,
    pub ordering_exists: Option<bool>,
    pub collection_size: Option<usize>,
    pub resolution_ranks: Option<Vec<usize>>,
    pub runtime_ms: u64,
    pub engine_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Runs every check on one variety, stopping at `timeout`.
pub fn evaluate(record: &VarietyRecord, timeout: Option<Duration>) -> SurveyRecord {
    let start = Instant::now();
    let fan = &record.fan;
    let mut out = SurveyRecord {
        dim: record.dim,
        index: record.database_index,
        status: Status::Ok,
        unimodular: unimodular(fan),
        bondal_criterion: bondal_criterion(fan).map(|c| c.holds).unwrap_or(false),
        hhl_success: None,
        strong: None,
        ordering_exists: None,
        collection_size: None,
        resolution_ranks: None,
        runtime_ms: 0,
        engine_version: ENGINE_VERSION.to_string(),
        error: None,
    };
    let budget = timeout.map_or_else(Budget::unlimited, |t| Budget::until(start + t));
    let opts = CertifyOptions {
        budget,
        ..CertifyOptions::default()
    };
    let verdict = class_group(fan)
        .map_err(CheckError::from)
        .and_then(|pi| certify_with(fan, &pi, &opts));
    match verdict {
        Ok(v) => {
            out.hhl_success = Some(v.success());
            out.strong = Some(v.strong);
            out.ordering_exists = Some(v.ordering_exists);
            out.collection_size = Some(v.collection.len());
            out.resolution_ranks = Some(v.resolution_ranks);
        }
        Err(CheckError::Cancelled) => out.status = Status::Timeout,
        Err(e) => {
            out.status = Status::Error;
            out.error = Some(e.to_string());
        }
    }
    out.runtime_ms = start.elapsed().as_millis() as u64;
    out
}

/// Records for the current engine version, read from an append-only
/// newline-delimited file. A later record for the same variety wins.
pub struct ResultCache {
    path: PathBuf,
    records: BTreeMap<(usize, usize), SurveyRecord>,
    writer: Option<File>,
}

impl ResultCache {
    pub fn open(path: &Path) -> Result<Self> {
        let mut records = BTreeMap::new();
        if path.exists() {
            let file = File::open(path).with_context(|| format!("opening cache {}", path.display()))?;
            for line in BufReader::new(file).lines() {
                let line = line?;
                // an interrupted run can leave a partial last line
                let Ok(r) = serde_json::from_str::<SurveyRecord>(&line) else {
                    continue;
                };
                if r.engine_version == ENGINE_VERSION {
                    records.insert((r.dim, r.index), r);
                }
            }
        }
        Ok(ResultCache {
            path: path.to_path_buf(),
            records,
            writer: None,
        })
    }

    pub fn get(&self, dim: usize, index: usize) -> Option<&SurveyRecord> {
        self.records.get(&(dim, index))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn append(&mut self, record: &SurveyRecord) -> Result<()> {
        if self.writer.is_none() {
            if let Some(dir) = self.path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
            // start on a fresh line if the previous run stopped mid-record
            let len = f.metadata()?.len();
            if len > 0 {
                let bytes = std::fs::read(&self.path)?;
                if bytes.last() != Some(&b'\n') {
                    f.write_all(b"\n")?;
                }
            }
            self.writer = Some(f);
        }
        let w = self.writer.as_mut().expect("writer opened above");
        writeln!(w, "{}", serde_json::to_string(record)?)?;
        w.flush()?;
        self.records.insert((record.dim, record.index), record.clone());
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct SurveyOptions {
    pub jobs: usize,
    pub timeout: Option<Duration>,
    /// database indices to include
    pub range: Option<Range<usize>>,
    pub cache: Option<PathBuf>,
    /// recompute varieties whose cached status is `timeout`
    pub retry_timeouts: bool,
}

/// Evaluates the selected varieties on `jobs` worker threads. The calling
/// thread is the only cache writer. Records come back sorted by index.
pub fn run_survey(
    varieties: &[VarietyRecord],
    opts: &SurveyOptions,
    mut progress: impl FnMut(&SurveyRecord, usize, usize),
) -> Result<Vec<SurveyRecord>> {
    let selected: Vec<&VarietyRecord> = varieties
        .iter()
        .filter(|v| opts.range.as_ref().is_none_or(|r| r.contains(&v.database_index)))
        .collect();
    let mut cache = opts.cache.as_deref().map(ResultCache::open).transpose()?;
    let mut done: BTreeMap<usize, SurveyRecord> = BTreeMap::new();
    let mut todo: Vec<&VarietyRecord> = Vec::new();
    for v in selected {
        match cache.as_ref().and_then(|c| c.get(v.dim, v.database_index)) {
            Some(r) if !(opts.retry_timeouts && r.status == Status::Timeout) => {
                done.insert(v.database_index, r.clone());
            }
            _ => todo.push(v),
        }
    }
    let total = done.len() + todo.len();
    let jobs = opts.jobs.max(1).min(todo.len().max(1));
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<SurveyRecord>();
    let mut write_error = None;
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            let tx = tx.clone();
            let (next, todo) = (&next, &todo);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(v) = todo.get(i) else { break };
                if tx.send(evaluate(v, opts.timeout)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for record in rx {
            if let Some(c) = cache.as_mut() {
                if let Err(e) = c.append(&record) {
                    write_error.get_or_insert(e);
                }
            }
            progress(&record, done.len() + 1, total);
            done.insert(record.index, record);
        }
    });
    if let Some(e) = write_error {
        return Err(e.context("writing the result cache"));
    }
    Ok(done.into_values().collect())
}

/// Counts over a set of records; contains no timing data, so it is identical
/// across runs and job counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub dim: usize,
    pub varieties: usize,
    pub success: usize,
    pub unimodular: usize,
    pub bondal_criterion: usize,
    pub ordering_exists: usize,
    pub strong: usize,
    /// varieties with an exceptional ordering whose Homs are not all in
    /// degree zero
    pub ordering_without_strong: Vec<usize>,
    pub timeouts: Vec<usize>,
    pub errors: Vec<usize>,
    pub success_indices: Vec<usize>,
    pub unimodular_indices: Vec<usize>,
}

impl Summary {
    pub fn new(dim: usize, records: &[SurveyRecord]) -> Self {
        let pick = |f: &dyn Fn(&SurveyRecord) -> bool| -> Vec<usize> {
            let mut v: Vec<usize> = records.iter().filter(|r| f(r)).map(|r| r.index).collect();
            v.sort_unstable();
            v
        };
        let success_indices = pick(&|r| r.hhl_success == Some(true));
        let unimodular_indices = pick(&|r| r.unimodular);
        Summary {
            dim,
            varieties: records.len(),
            success: success_indices.len(),
            unimodular: unimodular_indices.len(),
            bondal_criterion: records.iter().filter(|r| r.bondal_criterion).count(),
            ordering_exists: records.iter().filter(|r| r.ordering_exists == Some(true)).count(),
            strong: records.iter().filter(|r| r.strong == Some(true)).count(),
            ordering_without_strong: pick(&|r| r.ordering_exists == Some(true) && r.strong == Some(false)),
            timeouts: pick(&|r| r.status == Status::Timeout),
            errors: pick(&|r| r.status == Status::Error),
            success_indices,
            unimodular_indices,
        }
    }

    /// `(success, varieties)` in lowest terms.
    pub fn proportion(&self) -> (usize, usize) {
        let g = self.success.gcd(&self.varieties).max(1);
        (self.success / g, self.varieties / g)
    }

    pub fn complete(&self) -> bool {
        self.timeouts.is_empty() && self.errors.is_empty()
    }
}

fn index_list(f: &mut fmt::Formatter<'_>, label: &str, v: &[usize]) -> fmt::Result {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    writeln!(f, "{label}: {}", items.join(" "))
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.varieties;
        let (p, q) = self.proportion();
        writeln!(f, "dimension: {}", self.dim)?;
        writeln!(f, "varieties: {n}")?;
        writeln!(f, "success: {}/{n}", self.success)?;
        let bound = if self.complete() { "" } else { " (lower bound)" };
        writeln!(f, "f({}) = {}/{n} = {p}/{q}{bound}", self.dim, self.success)?;
        writeln!(f, "unimodular: {}/{n}", self.unimodular)?;
        writeln!(f, "bondal criterion: {}/{n}", self.bondal_criterion)?;
        writeln!(f, "ordering exists: {}/{n}", self.ordering_exists)?;
        writeln!(f, "strong: {}/{n}", self.strong)?;
        index_list(f, "ordering without strong", &self.ordering_without_strong)?;
        index_list(f, "timeouts", &self.timeouts)?;
        index_list(f, "errors", &self.errors)?;
        index_list(f, "success indices", &self.success_indices)
    }
}
