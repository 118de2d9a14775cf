//! Converters from external database dumps to the canonical collection
//! format, plus the checksum manifest.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use hhl_core::fan::{parse_collection, record_from_canonical, CanonicalFan, VarietyRecord, DEFAULT_DATABASE};
use hhl_core::FanError;
use sha2::{Digest, Sha256};

use crate::database::{collection_file_name, MANIFEST};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Macaulay2 `NormalToricVarieties` text: `d,i,{{rays}},{{cones}}[,{{…}}]`
    M2,
    /// newline-delimited canonical JSON
    Canonical,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor {
            chars: text.chars().peekable(),
            line,
            column: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> FanError {
        FanError::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn skip_space(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next();
        self.column += 1;
        c
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_space();
        self.chars.peek().copied()
    }

    fn expect(&mut self, want: char) -> Result<(), FanError> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of line"))),
        }
    }

    fn integer(&mut self) -> Result<i64, FanError> {
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push('-');
            self.bump();
        }
        while let Some(c) = self.chars.peek().copied().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s.parse().map_err(|_| self.error("expected an integer"))
    }

    /// `{a,b,…}`, possibly empty.
    fn int_list(&mut self) -> Result<Vec<i64>, FanError> {
        self.expect('{')?;
        let mut out = Vec::new();
        if self.peek() == Some('}') {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.integer()?);
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                _ => break,
            }
        }
        self.expect('}')?;
        Ok(out)
    }

    /// `{{…},{…},…}`
    fn matrix(&mut self) -> Result<Vec<Vec<i64>>, FanError> {
        self.expect('{')?;
        let mut out = Vec::new();
        if self.peek() == Some('}') {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.int_list()?);
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                _ => break,
            }
        }
        self.expect('}')?;
        Ok(out)
    }
}

fn parse_m2_line(text: &str, line: usize) -> Result<CanonicalFan, FanError> {
    let mut cur = Cursor::new(text, line);
    let dim = cur.integer()?;
    cur.expect(',')?;
    let index = cur.integer()?;
    cur.expect(',')?;
    let rays = cur.matrix()?;
    cur.expect(',')?;
    let cones = cur.matrix()?;
    // an optional trailing group carries Weil divisor data we do not use
    if cur.peek() == Some(',') {
        cur.bump();
        cur.matrix()?;
    }
    if let Some(c) = cur.peek() {
        return Err(cur.error(format!("unexpected '{c}' after record")));
    }
    let non_negative = |x: i64, what: &str| {
        usize::try_from(x).map_err(|_| FanError::Parse {
            line,
            column: 1,
            message: format!("{what} {x} is negative"),
        })
    };
    let max_cones = cones
        .into_iter()
        .map(|c| c.into_iter().map(|i| non_negative(i, "ray index")).collect())
        .collect::<Result<_, _>>()?;
    Ok(CanonicalFan {
        dim: non_negative(dim, "dimension")?,
        index: non_negative(index, "index")?,
        rays,
        max_cones,
    })
}

/// Parses a Macaulay2 dump without validating the fans.
pub fn parse_m2(text: &str) -> Result<Vec<CanonicalFan>, FanError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_m2_line(l, i + 1))
        .collect()
}

/// Parses and validates a source file, grouping records by dimension in
/// ascending index order.
pub fn import(text: &str, format: Format) -> Result<BTreeMap<usize, Vec<VarietyRecord>>, FanError> {
    let records = match format {
        Format::Canonical => parse_collection(text)?,
        Format::M2 => parse_m2(text)?
            .into_iter()
            .map(|raw| {
                let (dim, index) = (raw.dim, raw.index);
                record_from_canonical(raw, DEFAULT_DATABASE)
                    .map_err(|e| FanError::Validation(format!("variety {dim}/{index}: {e}")))
            })
            .collect::<Result<_, _>>()?,
    };
    let mut grouped: BTreeMap<usize, Vec<VarietyRecord>> = BTreeMap::new();
    for r in records {
        grouped.entry(r.dim).or_default().push(r);
    }
    for (dim, list) in grouped.iter_mut() {
        list.sort_by_key(|r| r.database_index);
        if list.windows(2).any(|w| w[0].database_index == w[1].database_index) {
            return Err(FanError::Validation(format!("duplicate index in dimension {dim}")));
        }
    }
    Ok(grouped)
}

pub fn render_collection(records: &[VarietyRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.to_canonical_line());
        out.push('\n');
    }
    out
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes one collection file per dimension and refreshes the manifest with
/// the checksums of every collection file in `dir`.
pub fn write_collections(dir: &Path, grouped: &BTreeMap<usize, Vec<VarietyRecord>>) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    for (&dim, records) in grouped {
        let path = dir.join(collection_file_name(dim));
        std::fs::write(&path, render_collection(records)).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    write_manifest(dir)?;
    Ok(written)
}

pub fn write_manifest(dir: &Path) -> Result<()> {
    let mut names: Vec<String> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.starts_with("smooth_fano_") && n.ends_with(".jsonl"))
        .collect();
    names.sort();
    let mut manifest = String::new();
    for name in names {
        let bytes = std::fs::read(dir.join(&name))?;
        writeln!(manifest, "{}  {name}", sha256_hex(&bytes)).expect("writing to a string");
    }
    std::fs::write(dir.join(MANIFEST), manifest)?;
    Ok(())
}

/// Files whose checksum differs from the manifest (or that are missing).
pub fn verify_manifest(dir: &Path) -> Result<Vec<String>> {
    let manifest = std::fs::read_to_string(dir.join(MANIFEST))
        .with_context(|| format!("reading {}", dir.join(MANIFEST).display()))?;
    let mut bad = Vec::new();
    for line in manifest.lines().filter(|l| !l.trim().is_empty()) {
        let (sum, name) = line.split_once("  ").context("malformed manifest line")?;
        match std::fs::read(dir.join(name)) {
            Ok(bytes) if sha256_hex(&bytes) == sum => {}
            _ => bad.push(name.to_string()),
        }
    }
    Ok(bad)
}
