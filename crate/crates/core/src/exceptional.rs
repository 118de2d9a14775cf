//! Ordering and strongness checks for a collection of line bundles, given all
//! graded Homs between its members.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cancel::Budget;
use crate::cohomology::{CohomologyEngine, CohomologyRanks};
use crate::error::{CheckError, CohomologyError, ResolutionError};
use crate::fan::{DivisorClassMap, Fan};
use crate::resolution::{
    bondal_thomsen_collection, enumerate_cells_within, resolution_rank_vector, BTCollection, LabelConvention,
};

/// `ranks[ℓ] = dim Hom(E_source, E_target[ℓ])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedHom {
    pub source: usize,
    pub target: usize,
    pub ranks: CohomologyRanks,
}

/// Edge `i → j` whenever `i ≠ j` and `Hom^•(E_i, E_j) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDigraph {
    classes: Vec<Vec<i64>>,
    /// sorted successor lists
    out: Vec<Vec<usize>>,
    ranks: BTreeMap<(usize, usize), CohomologyRanks>,
}

impl HomDigraph {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<i64>] {
        &self.classes
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.out[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.out[i].binary_search(&j).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// Rank vector of `Hom^•(E_i, E_j)`, including `i = j`.
    pub fn ranks(&self, i: usize, j: usize) -> &CohomologyRanks {
        &self.ranks[&(i, j)]
    }
}

pub fn build_digraph(classes: &[Vec<i64>], homs: &[GradedHom]) -> Result<HomDigraph, CheckError> {
    let r = classes.len();
    let ranks: BTreeMap<(usize, usize), CohomologyRanks> =
        homs.iter().map(|h| ((h.source, h.target), h.ranks.clone())).collect();
    for i in 0..r {
        for j in 0..r {
            if !ranks.contains_key(&(i, j)) {
                return Err(CheckError::MissingPair(i, j));
            }
        }
    }
    let out = (0..r)
        .map(|i| (0..r).filter(|&j| j != i && !ranks[&(i, j)].is_zero()).collect())
        .collect();
    Ok(HomDigraph {
        classes: classes.to_vec(),
        out,
        ranks,
    })
}

/// Either an order in which every edge points forward, or a shortest directed
/// cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ordering {
    Exceptional(Vec<usize>),
    Cycle(Vec<usize>),
}

/// Topological order with ties broken by the smallest class; a shortest
/// cycle when none exists.
pub fn find_exceptional_ordering(g: &HomDigraph) -> Ordering {
    let r = g.len();
    let mut indegree = vec![0usize; r];
    for i in 0..r {
        for &j in g.successors(i) {
            indegree[j] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<(&[i64], usize)>> = (0..r)
        .filter(|&i| indegree[i] == 0)
        .map(|i| Reverse((g.classes[i].as_slice(), i)))
        .collect();
    let mut order = Vec::with_capacity(r);
    while let Some(Reverse((_, i))) = ready.pop() {
        order.push(i);
        for &j in g.successors(i) {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.push(Reverse((g.classes[j].as_slice(), j)));
            }
        }
    }
    if order.len() == r {
        Ordering::Exceptional(order)
    } else {
        Ordering::Cycle(shortest_cycle(g).expect("a graph without a topological order has a cycle"))
    }
}

/// Shortest directed cycle by breadth-first search from every vertex. Ties
/// between the cycles found from different starts go to the one nearest the
/// trivial class (smallest sum of `|c_k|`), then the lexicographically smallest.
pub fn shortest_cycle(g: &HomDigraph) -> Option<Vec<usize>> {
    let r = g.len();
    let rank = |cycle: &[usize]| {
        let norm: i64 = cycle.iter().flat_map(|&i| g.classes[i].iter()).map(|x| x.abs()).sum();
        let mut classes: Vec<&[i64]> = cycle.iter().map(|&i| g.classes[i].as_slice()).collect();
        classes.sort_unstable();
        (cycle.len(), norm, classes)
    };
    let mut best: Option<Vec<usize>> = None;
    for s in 0..r {
        let mut parent = vec![usize::MAX; r];
        let mut dist = vec![usize::MAX; r];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        let mut closing = None;
        'bfs: while let Some(v) = queue.pop_front() {
            if best.as_ref().is_some_and(|b| dist[v] + 1 > b.len()) {
                break;
            }
            for &w in g.successors(v) {
                if w == s {
                    closing = Some(v);
                    break 'bfs;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if let Some(mut v) = closing {
            let mut cycle = vec![v];
            while v != s {
                v = parent[v];
                cycle.push(v);
            }
            cycle.reverse();
            if best.as_ref().is_none_or(|b| rank(&cycle) < rank(b)) {
                best = Some(cycle);
            }
        }
    }
    best
}

/// Pairs `(i, j)`, `i < j`, with nonzero Homs in both directions.
pub fn two_cycles(g: &HomDigraph) -> Vec<(usize, usize)> {
    (0..g.len())
        .flat_map(|i| g.successors(i).iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
        .filter(|&(i, j)| g.has_edge(j, i))
        .collect()
}

/// Ordered pairs with a nonzero Hom in some degree `ℓ ≥ 1`.
pub fn check_strong(homs: &[GradedHom]) -> (bool, Vec<(usize, usize)>) {
    let mut bad: Vec<(usize, usize)> = homs
        .iter()
        .filter(|h| h.ranks.0.iter().skip(1).any(|&x| x > 0))
        .map(|h| (h.source, h.target))
        .collect();
    bad.sort_unstable();
    (bad.is_empty(), bad)
}

/// Outcome of the full pipeline on one variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub collection: Vec<Vec<i64>>,
    pub resolution_ranks: Vec<usize>,
    pub ordering_exists: bool,
    pub strong: bool,
    /// taken from the theorem that the resolution is exact; never computed
    pub full: bool,
    /// collection indices in certified order, or a shortest cycle
    pub witness: Ordering,
    /// all pairs with Homs both ways
    pub two_cycles: Vec<(usize, usize)>,
    pub strong_violations: Vec<(usize, usize)>,
    /// `hom0[i][j] = dim Hom⁰(E_j, E_i)` in `display_order`
    pub hom0: Vec<Vec<u64>>,
    /// the certified order, or the lexicographic order when none exists
    pub display_order: Vec<usize>,
    /// `(i, j, ranks)` for every ordered pair
    pub homs: Vec<GradedHom>,
}

impl Verdict {
    pub fn success(&self) -> bool {
        self.ordering_exists && self.strong
    }
}

/// Knobs for [`certify_with`].
#[derive(Clone, Debug, Default)]
pub struct CertifyOptions {
    pub convention: LabelConvention,
    pub budget: Budget,
}

pub fn certify(fan: &Fan, class_map: &DivisorClassMap) -> Result<Verdict, CheckError> {
    certify_with(fan, class_map, &CertifyOptions::default())
}

/// Cells, collection, all graded Homs, digraph, ordering and strongness.
pub fn certify_with(fan: &Fan, class_map: &DivisorClassMap, opts: &CertifyOptions) -> Result<Verdict, CheckError> {
    let cells = enumerate_cells_within(fan, &opts.budget).map_err(|e| match e {
        ResolutionError::Cancelled => CheckError::Cancelled,
        e => e.into(),
    })?;
    let collection = bondal_thomsen_collection(class_map, &cells, opts.convention);
    let engine = CohomologyEngine::new(fan).with_budget(opts.budget.clone());
    let homs = all_homs(&engine, class_map, &collection)?;
    let mut verdict = judge(&collection.classes, homs)?;
    verdict.resolution_ranks = resolution_rank_vector(&cells);
    Ok(verdict)
}

pub fn all_homs(
    engine: &CohomologyEngine,
    class_map: &DivisorClassMap,
    collection: &BTCollection,
) -> Result<Vec<GradedHom>, CheckError> {
    let r = collection.len();
    let mut homs = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let ranks = engine
                .graded_hom(class_map, &collection.classes[i], &collection.classes[j])
                .map_err(|e| match e {
                    CohomologyError::Cancelled => CheckError::Cancelled,
                    e => e.into(),
                })?;
            homs.push(GradedHom {
                source: i,
                target: j,
                ranks,
            });
        }
    }
    Ok(homs)
}

/// Verdict from precomputed Homs; `resolution_ranks` is left empty.
pub fn judge(classes: &[Vec<i64>], homs: Vec<GradedHom>) -> Result<Verdict, CheckError> {
    let g = build_digraph(classes, &homs)?;
    let witness = find_exceptional_ordering(&g);
    let (strong, strong_violations) = check_strong(&homs);
    let display_order = match &witness {
        Ordering::Exceptional(order) => order.clone(),
        Ordering::Cycle(_) => (0..classes.len()).collect(),
    };
    let hom0 = display_order
        .iter()
        .map(|&i| display_order.iter().map(|&j| g.ranks(j, i).degree(0)).collect())
        .collect();
    Ok(Verdict {
        collection: classes.to_vec(),
        resolution_ranks: Vec::new(),
        ordering_exists: matches!(witness, Ordering::Exceptional(_)),
        strong,
        full: true,
        two_cycles: two_cycles(&g),
        witness,
        strong_violations,
        hom0,
        display_order,
        homs,
    })
}
