//! Human and JSON reports for a single variety.

use std::fmt::{self, Write as _};

use hhl_core::exceptional::{Ordering, Verdict};
use hhl_core::fan::{DivisorClassMap, VarietyRecord};
use serde::Serialize;

/// Everything `check` prints, in a serializable form.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub dim: usize,
    pub index: usize,
    pub provenance: String,
    pub rays: Vec<Vec<i64>>,
    pub class_map: Vec<Vec<i64>>,
    pub unimodular: bool,
    pub bondal_criterion: bool,
    pub resolution_ranks: Vec<usize>,
    /// classes in certified order (or lexicographic order on failure)
    pub collection: Vec<Vec<i64>>,
    /// torus-invariant divisor used for each class, same order
    pub representatives: Vec<Vec<i64>>,
    pub ordering_exists: bool,
    pub strong: bool,
    pub full: bool,
    pub full_source: &'static str,
    pub success: bool,
    /// shortest cycle of classes, when no ordering exists
    pub cycle: Option<Vec<Vec<i64>>>,
    pub two_cycles: Vec<PairReport>,
    pub strong_violations: Vec<PairReport>,
    /// `hom0[i][j] = dim Hom⁰(E_j, E_i)` in `collection` order
    pub hom0: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    /// `dim Hom(source, target[ℓ])`, `ℓ = 0..=d`
    pub ranks: Vec<u64>,
    /// the other direction
    pub reverse: Vec<u64>,
}

impl CheckReport {
    pub fn new(
        record: &VarietyRecord,
        class_map: &DivisorClassMap,
        verdict: &Verdict,
        unimodular: bool,
        bondal: bool,
    ) -> Self {
        let ranks = |i: usize, j: usize| -> Vec<u64> {
            verdict
                .homs
                .iter()
                .find(|h| h.source == i && h.target == j)
                .map(|h| h.ranks.0.clone())
                .unwrap_or_default()
        };
        let class = |i: usize| verdict.collection[i].clone();
        let pair = |(i, j): (usize, usize)| PairReport {
            source: class(i),
            target: class(j),
            ranks: ranks(i, j),
            reverse: ranks(j, i),
        };
        let collection: Vec<Vec<i64>> = verdict.display_order.iter().map(|&i| class(i)).collect();
        CheckReport {
            dim: record.dim,
            index: record.database_index,
            provenance: record.provenance.to_string(),
            rays: record.fan.rays().to_vec(),
            class_map: class_map.matrix().to_i64_rows().unwrap_or_default(),
            unimodular,
            bondal_criterion: bondal,
            resolution_ranks: verdict.resolution_ranks.clone(),
            representatives: collection.iter().map(|c| class_map.preimage(c)).collect(),
            collection,
            ordering_exists: verdict.ordering_exists,
            strong: verdict.strong,
            full: verdict.full,
            full_source: "theorem",
            success: verdict.success(),
            cycle: match &verdict.witness {
                Ordering::Cycle(c) => Some(c.iter().map(|&i| class(i)).collect()),
                Ordering::Exceptional(_) => None,
            },
            two_cycles: verdict.two_cycles.iter().copied().map(pair).collect(),
            strong_violations: verdict.strong_violations.iter().copied().map(pair).collect(),
            hom0: verdict.hom0.clone(),
        }
    }
}

fn tuple(v: &[i64]) -> String {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", items.join(","))
}

fn ranks(v: &[u64]) -> String {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(" "))
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes = |b: bool| if b { "true" } else { "false" };
        writeln!(f, "variety: {}/{} ({})", self.dim, self.index, self.provenance)?;
        let rays: Vec<String> = self.rays.iter().map(|r| tuple(r)).collect();
        writeln!(f, "rays: {}", rays.join(" "))?;
        let rows: Vec<String> = self.class_map.iter().map(|r| tuple(r)).collect();
        writeln!(f, "class map rows: {}", rows.join(" "))?;
        writeln!(f, "unimodular: {}", yes(self.unimodular))?;
        writeln!(f, "bondal criterion: {}", yes(self.bondal_criterion))?;
        let r: Vec<String> = self.resolution_ranks.iter().map(ToString::to_string).collect();
        writeln!(f, "resolution ranks: {}", r.join(" "))?;
        writeln!(f, "collection size: {}", self.collection.len())?;
        writeln!(f, "collection:")?;
        for (c, a) in self.collection.iter().zip(&self.representatives) {
            writeln!(f, "  {}  divisor {}", tuple(c), tuple(a))?;
        }
        writeln!(f, "ordering exists: {}", yes(self.ordering_exists))?;
        writeln!(f, "strong: {}", yes(self.strong))?;
        writeln!(f, "full: {} (by theorem)", yes(self.full))?;
        writeln!(f, "verdict: {}", if self.success { "success" } else { "failure" })?;
        if let Some(cycle) = &self.cycle {
            let c: Vec<String> = cycle.iter().map(|x| tuple(x)).collect();
            writeln!(f, "cycle: {} -> {}", c.join(" -> "), c[0])?;
        }
        if !self.two_cycles.is_empty() {
            writeln!(f, "two-way pairs: {}", self.two_cycles.len())?;
            for p in &self.two_cycles {
                writeln!(
                    f,
                    "  Hom{} = {}  Hom{} = {}",
                    pair_name(&p.source, &p.target),
                    ranks(&p.ranks),
                    pair_name(&p.target, &p.source),
                    ranks(&p.reverse)
                )?;
            }
        }
        if !self.strong_violations.is_empty() {
            writeln!(f, "higher Homs: {}", self.strong_violations.len())?;
            for p in &self.strong_violations {
                writeln!(f, "  Hom{} = {}", pair_name(&p.source, &p.target), ranks(&p.ranks))?;
            }
        }
        writeln!(f, "hom0 matrix (row i, column j: dim Hom^0(E_j, E_i)):")?;
        let width = self
            .hom0
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &self.hom0 {
            let mut line = String::from(" ");
            for x in row {
                write!(line, " {x:>width$}").expect("writing to a string");
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn pair_name(a: &[i64], b: &[i64]) -> String {
    format!("({}, {})", tuple(a), tuple(b))
}
