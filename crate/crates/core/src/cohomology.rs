//! Line-bundle cohomology on a smooth complete toric variety.
//!
//! `H^p(X, O(D))` splits over characters `m ∈ M`; the `m`-part is
//! `H̃^{p-1}` of the full subcomplex of the fan on the violating rays
//! `V(m) = {ρ : ⟨m, u_ρ⟩ < -a_ρ}`. Characters with the same violating set
//! form a chamber
//!
//! ```text
//! ⟨m, u_ρ⟩ ≤ -a_ρ - 1   (ρ ∈ R)        ⟨m, u_ρ⟩ ≥ -a_ρ   (ρ ∉ R)
//! ```
//!
//! and the engine sums `#(lattice points) × rank H̃(R)` over chambers. The
//! chambers are disjoint closed polytopes, so every vertex of the arrangement
//! `{⟨m, u_ρ⟩ ∈ {-a_ρ, -a_ρ - 1}}` belongs to at most one of them; collecting
//! those vertices yields the bounding box of every nonempty chamber at once.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::cancel::Budget;
use crate::error::{CohomologyError, LatticeError};
use crate::fan::{DivisorClassMap, Fan};
use crate::lattice::{adjugate, combinations, generalized_cross, rank_i64, IntMatrix};

/// Faces of the fan as ray bitmasks (bit `i` is ray `i`), closed under
/// subsets, including the empty face.
#[derive(Clone, Debug)]
pub struct SimplicialModel {
    n: usize,
    /// `faces[k]` holds the faces with `k` vertices, sorted.
    faces: Vec<Vec<u64>>,
}

impl SimplicialModel {
    pub fn new(fan: &Fan) -> Self {
        assert!(fan.n_rays() <= 64, "at most 64 rays are supported");
        let d = fan.dim();
        let mut faces: Vec<Vec<u64>> = vec![Vec::new(); d + 1];
        for cone in fan.max_cones() {
            let k = cone.len();
            for sub in 0u64..(1 << k) {
                let mask = (0..k)
                    .filter(|&i| sub >> i & 1 == 1)
                    .fold(0u64, |m, i| m | 1 << cone[i]);
                faces[sub.count_ones() as usize].push(mask);
            }
        }
        for f in &mut faces {
            f.sort_unstable();
            f.dedup();
        }
        SimplicialModel { n: fan.n_rays(), faces }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// Faces with `k` vertices.
    pub fn faces_of_size(&self, k: usize) -> &[u64] {
        self.faces.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn max_face_size(&self) -> usize {
        self.faces.len() - 1
    }
}

/// Reduced cohomology ranks over `Q` of the full subcomplex on the vertex set
/// `subset`, indexed by degree `-1, 0, …, d-1` (entry `j` is degree `j - 1`).
pub fn reduced_cohomology_ranks(model: &SimplicialModel, subset: u64) -> Vec<usize> {
    let top = model.max_face_size();
    // chain groups C_{k-1} = faces with k vertices inside `subset`
    let groups: Vec<Vec<u64>> = (0..=top)
        .map(|k| {
            model
                .faces_of_size(k)
                .iter()
                .copied()
                .filter(|f| f & !subset == 0)
                .collect()
        })
        .collect();
    // boundary ranks: rank[k] = rank of ∂ from faces of size k to size k-1
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        if groups[k].is_empty() || groups[k - 1].is_empty() {
            continue;
        }
        let index: HashMap<u64, usize> = groups[k - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let rows: Vec<Vec<i64>> = groups[k]
            .iter()
            .map(|&face| {
                let mut row = vec![0i64; groups[k - 1].len()];
                let mut sign = 1;
                for v in 0..64 {
                    if face >> v & 1 == 1 {
                        row[index[&(face & !(1 << v))]] = sign;
                        sign = -sign;
                    }
                }
                row
            })
            .collect();
        ranks[k] = rank_i64(rows.clone()).unwrap_or_else(|| IntMatrix::from_i64_rows(&rows).rank());
    }
    (0..=top).map(|k| groups[k].len() - ranks[k] - ranks[k + 1]).collect()
}

/// `D = Σ a_ρ D_ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusDivisor(pub Vec<i64>);

impl TorusDivisor {
    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    /// The canonical divisor `K = -Σ D_ρ`.
    pub fn canonical(n: usize) -> Self {
        TorusDivisor(vec![-1; n])
    }
}

/// `h[p] = dim H^p(X, O(D))` for `p = 0..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct CohomologyRanks(pub Vec<u64>);

impl CohomologyRanks {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn degree(&self, p: usize) -> u64 {
        self.0.get(p).copied().unwrap_or(0)
    }
}

/// A nonsingular `d`-subset of rays with `B_S · adj = det · I`, `det > 0`.
#[derive(Clone, Debug)]
struct Basis {
    rays: Vec<usize>,
    adj: Vec<Vec<i64>>,
    det: i64,
}

#[derive(Clone, Debug)]
struct Bounds {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

/// Per-variety cohomology evaluator with memo tables. Not shared between
/// threads; build one per worker.
pub struct CohomologyEngine<'a> {
    fan: &'a Fan,
    model: SimplicialModel,
    bases: Vec<Basis>,
    /// primitive edge directions of the arrangement of ray hyperplanes
    lines: Vec<Vec<i64>>,
    /// largest |entry| among adjugates, rays
    adj_bound: i64,
    ray_bound: i64,
    reduced: RefCell<HashMap<u64, Vec<usize>>>,
    bounded: RefCell<HashMap<u64, bool>>,
    by_class: RefCell<HashMap<Vec<i64>, CohomologyRanks>>,
    budget: Budget,
}

impl<'a> CohomologyEngine<'a> {
    pub fn new(fan: &'a Fan) -> Self {
        let d = fan.dim();
        let mut bases = Vec::new();
        for rays in combinations(fan.n_rays(), d) {
            let m = IntMatrix::from_rows(d, &rays.iter().map(|&i| fan.ray(i).to_vec()).collect::<Vec<_>>());
            let det = m.determinant();
            let det: i64 = (&det).try_into().expect("determinant fits in i64");
            if det == 0 {
                continue;
            }
            let mut adj = adjugate(&m).to_i64_rows().expect("adjugate fits in i64");
            let det = if det < 0 {
                adj.iter_mut().flatten().for_each(|x| *x = -*x);
                -det
            } else {
                det
            };
            bases.push(Basis { rays, adj, det });
        }
        let adj_bound = bases
            .iter()
            .flat_map(|b| b.adj.iter().flatten().map(|x| x.abs()).chain([b.det]))
            .max()
            .unwrap_or(1);
        let ray_bound = fan.rays().iter().flatten().map(|x| x.abs()).max().unwrap_or(1);
        CohomologyEngine {
            fan,
            model: SimplicialModel::new(fan),
            bases,
            lines: edge_directions(fan),
            adj_bound,
            ray_bound,
            reduced: RefCell::new(HashMap::new()),
            bounded: RefCell::new(HashMap::new()),
            by_class: RefCell::new(HashMap::new()),
            budget: Budget::unlimited(),
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn fan(&self) -> &Fan {
        self.fan
    }

    pub fn model(&self) -> &SimplicialModel {
        &self.model
    }

    /// Memoized reduced cohomology of the full subcomplex on `pattern`.
    pub fn reduced_ranks(&self, pattern: u64) -> Vec<usize> {
        if let Some(r) = self.reduced.borrow().get(&pattern) {
            return r.clone();
        }
        let r = reduced_cohomology_ranks(&self.model, pattern);
        self.reduced.borrow_mut().insert(pattern, r.clone());
        r
    }

    /// Whether the chamber of `pattern` has trivial recession cone.
    fn chamber_bounded(&self, pattern: u64) -> bool {
        if let Some(&b) = self.bounded.borrow().get(&pattern) {
            return b;
        }
        let in_cone = |w: &[i64]| {
            self.fan.rays().iter().enumerate().all(|(i, u)| {
                let s: i64 = u.iter().zip(w).map(|(x, y)| x * y).sum();
                if pattern >> i & 1 == 1 {
                    s <= 0
                } else {
                    s >= 0
                }
            })
        };
        let bounded = !self.lines.iter().any(|w| {
            let neg: Vec<i64> = w.iter().map(|x| -x).collect();
            in_cone(w) || in_cone(&neg)
        });
        self.bounded.borrow_mut().insert(pattern, bounded);
        bounded
    }

    /// `H^•(X, O(D))`.
    pub fn cohomology(&self, divisor: &TorusDivisor) -> Result<CohomologyRanks, CohomologyError> {
        let fan = self.fan;
        let (n, d) = (fan.n_rays(), fan.dim());
        let a = divisor.coefficients();
        if a.len() != n {
            return Err(CohomologyError::Length {
                expected: n,
                got: a.len(),
            });
        }
        if self.budget.exhausted() {
            return Err(CohomologyError::Cancelled);
        }
        // worst-case magnitude of det·t_ρ: keep well inside i64
        let amax = a.iter().map(|x| x.abs()).max().unwrap_or(0) + 1;
        let bound = (self.adj_bound as i128) * (d as i128) * (amax as i128) * (self.ray_bound as i128) * (d as i128)
            + (amax as i128) * (self.adj_bound as i128);
        if bound > (1i128 << 60) {
            return Err(LatticeError::Overflow.into());
        }

        let mut boxes: HashMap<u64, Bounds> = HashMap::new();
        let mut c = vec![0i64; d];
        let mut y = vec![0i64; d];
        for basis in &self.bases {
            let det = basis.det;
            'choice: for bits in 0u32..(1 << d) {
                for (i, &r) in basis.rays.iter().enumerate() {
                    c[i] = -a[r] - i64::from(bits >> i & 1);
                }
                for (yi, row) in y.iter_mut().zip(&basis.adj) {
                    *yi = row.iter().zip(&c).map(|(x, z)| x * z).sum();
                }
                let mut pattern = 0u64;
                for (rho, u) in fan.rays().iter().enumerate() {
                    let t: i64 = u.iter().zip(&y).map(|(x, z)| x * z).sum::<i64>() + a[rho] * det;
                    if t <= -det {
                        pattern |= 1 << rho;
                    } else if t < 0 {
                        continue 'choice;
                    }
                }
                let entry = boxes.entry(pattern).or_insert_with(|| Bounds {
                    lo: vec![i64::MAX; d],
                    hi: vec![i64::MIN; d],
                });
                for (i, &yi) in y.iter().enumerate().take(d) {
                    entry.lo[i] = entry.lo[i].min(div_ceil(yi, det));
                    entry.hi[i] = entry.hi[i].max(yi.div_euclid(det));
                }
            }
        }

        let mut h = vec![0u64; d + 1];
        let mut patterns: Vec<(u64, Bounds)> = boxes.into_iter().collect();
        patterns.sort_unstable_by_key(|(p, _)| *p);
        for (pattern, bounds) in patterns {
            let reduced = self.reduced_ranks(pattern);
            if reduced.iter().all(|&r| r == 0) {
                continue;
            }
            if !self.chamber_bounded(pattern) {
                return Err(CohomologyError::InfiniteContribution {
                    pattern: (0..n).filter(|&i| pattern >> i & 1 == 1).collect(),
                });
            }
            if self.budget.exhausted() {
                return Err(CohomologyError::Cancelled);
            }
            let count = count_chamber_points(fan, a, pattern, &bounds);
            if count == 0 {
                continue;
            }
            for (p, &r) in reduced.iter().enumerate() {
                h[p] += count * r as u64;
            }
        }
        Ok(CohomologyRanks(h))
    }

    /// Memoized cohomology of a line bundle given by its class.
    pub fn cohomology_of_class(
        &self,
        class_map: &DivisorClassMap,
        class: &[i64],
    ) -> Result<CohomologyRanks, CohomologyError> {
        if let Some(r) = self.by_class.borrow().get(class) {
            return Ok(r.clone());
        }
        let divisor = class_to_divisor(class, class_map)?;
        let r = self.cohomology(&divisor)?;
        self.by_class.borrow_mut().insert(class.to_vec(), r.clone());
        Ok(r)
    }

    /// Ranks of `Hom(O(E_i), O(E_j)[ℓ]) = H^ℓ(O(E_j - E_i))`.
    pub fn graded_hom(
        &self,
        class_map: &DivisorClassMap,
        source: &[i64],
        target: &[i64],
    ) -> Result<CohomologyRanks, CohomologyError> {
        let diff: Vec<i64> = target.iter().zip(source).map(|(t, s)| t - s).collect();
        self.cohomology_of_class(class_map, &diff)
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Integer points of one chamber inside its vertex bounding box.
fn count_chamber_points(fan: &Fan, a: &[i64], pattern: u64, bounds: &Bounds) -> u64 {
    let d = fan.dim();
    if bounds.lo.iter().zip(&bounds.hi).any(|(l, h)| l > h) {
        return 0;
    }
    let mut m = bounds.lo.clone();
    let mut count = 0u64;
    loop {
        let inside = fan.rays().iter().enumerate().all(|(rho, u)| {
            let t: i64 = u.iter().zip(&m).map(|(x, y)| x * y).sum::<i64>() + a[rho];
            if pattern >> rho & 1 == 1 {
                t <= -1
            } else {
                t >= 0
            }
        });
        if inside {
            count += 1;
        }
        let mut i = d;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if m[i] < bounds.hi[i] {
                m[i] += 1;
                m[i + 1..].copy_from_slice(&bounds.lo[i + 1..]);
                break;
            }
        }
    }
}

/// Primitive directions (up to sign) of all lines cut out by `d - 1`
/// independent ray hyperplanes.
fn edge_directions(fan: &Fan) -> Vec<Vec<i64>> {
    let d = fan.dim();
    if d == 1 {
        return vec![vec![1]];
    }
    let mut out: Vec<Vec<i64>> = Vec::new();
    for sub in combinations(fan.n_rays(), d - 1) {
        let m = IntMatrix::from_rows(d, &sub.iter().map(|&i| fan.ray(i).to_vec()).collect::<Vec<_>>());
        let w: Vec<i64> = generalized_cross(&m)
            .iter()
            .map(|x| x.try_into().expect("cross product fits in i64"))
            .collect();
        if let Some(w) = primitive_up_to_sign(w) {
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out
}

/// Divides out the content and fixes the sign so the first nonzero entry is
/// positive; `None` for the zero vector.
pub(crate) fn primitive_up_to_sign(mut w: Vec<i64>) -> Option<Vec<i64>> {
    use num_integer::Integer;
    let g = w.iter().fold(0i64, |g, x| g.gcd(x));
    if g == 0 {
        return None;
    }
    let first = *w.iter().find(|&&x| x != 0).unwrap();
    let g = if first < 0 { -g } else { g };
    w.iter_mut().for_each(|x| *x /= g);
    Some(w)
}

/// Cohomology of a single divisor without keeping an engine around.
pub fn line_bundle_cohomology(fan: &Fan, divisor: &TorusDivisor) -> Result<CohomologyRanks, CohomologyError> {
    CohomologyEngine::new(fan).cohomology(divisor)
}

/// Deterministic torus-invariant representative of a class.
pub fn class_to_divisor(class: &[i64], class_map: &DivisorClassMap) -> Result<TorusDivisor, CohomologyError> {
    if class.len() != class_map.cl_rank() {
        return Err(CohomologyError::NoPreimage(class.to_vec()));
    }
    let a = class_map.preimage(class);
    if class_map.class_of(&a) != class {
        return Err(CohomologyError::NoPreimage(class.to_vec()));
    }
    Ok(TorusDivisor(a))
}

/// Free-function form of [`CohomologyEngine::graded_hom`].
pub fn graded_hom(
    fan: &Fan,
    class_map: &DivisorClassMap,
    source: &[i64],
    target: &[i64],
) -> Result<CohomologyRanks, CohomologyError> {
    CohomologyEngine::new(fan).graded_hom(class_map, source, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::class_group;
    use crate::fan::tests::{hirzebruch, p1, p1xp1, p2, projective_space};

    #[test]
    fn reduced_cohomology_basics() {
        let model = SimplicialModel::new(&p1());
        assert_eq!(reduced_cohomology_ranks(&model, 0), vec![1, 0]);
        assert_eq!(reduced_cohomology_ranks(&model, 0b01), vec![0, 0]);
        // two points with no common cone
        assert_eq!(reduced_cohomology_ranks(&model, 0b11), vec![0, 1]);
    }

    #[test]
    fn full_fan_is_a_sphere() {
        for fan in [p2(), p1xp1(), projective_space(4)] {
            let model = SimplicialModel::new(&fan);
            let all = (1u64 << fan.n_rays()) - 1;
            let mut expected = vec![0; fan.dim() + 1];
            expected[fan.dim()] = 1;
            assert_eq!(reduced_cohomology_ranks(&model, all), expected);
        }
    }

    #[test]
    fn p1_minus_two() {
        let h = line_bundle_cohomology(&p1(), &TorusDivisor(vec![-2, 0])).unwrap();
        assert_eq!(h, CohomologyRanks(vec![0, 1]));
    }

    #[test]
    fn projective_plane_line_bundles() {
        let fan = p2();
        let eng = CohomologyEngine::new(&fan);
        // O(k) = k·D_2; h^0 = C(k+2, 2), h^2(O(-k)) = C(k-1, 2)
        for k in 0..6i64 {
            let h = eng.cohomology(&TorusDivisor(vec![0, 0, k])).unwrap();
            assert_eq!(h.0, vec![((k + 1) * (k + 2) / 2) as u64, 0, 0]);
        }
        assert_eq!(eng.cohomology(&TorusDivisor(vec![0, 0, -3])).unwrap().0, vec![0, 0, 1]);
        assert_eq!(eng.cohomology(&TorusDivisor(vec![0, 0, -5])).unwrap().0, vec![0, 0, 6]);
        assert!(eng.cohomology(&TorusDivisor(vec![0, 0, -1])).unwrap().is_zero());
    }

    #[test]
    fn hirzebruch_has_middle_cohomology() {
        // D = -2·D_1 on F_2: only y = 1, 0 ≤ x ≤ 2 contribute, each violating
        // the non-adjacent pair {1, 3}
        let fan = hirzebruch(2);
        let h = line_bundle_cohomology(&fan, &TorusDivisor(vec![0, -2, 0, 0])).unwrap();
        assert_eq!(h.0, vec![0, 3, 0]);
    }

    #[test]
    fn preimage_of_class() {
        let fan = p1();
        let pi = class_group(&fan).unwrap();
        let zero = class_to_divisor(&[0], &pi).unwrap();
        assert_eq!(pi.class_of(&zero.0), vec![0]);
        let one = class_to_divisor(&[1], &pi).unwrap();
        assert_eq!(pi.class_of(&one.0), vec![1]);
        assert!(class_to_divisor(&[1, 2], &pi).is_err());
    }

    #[test]
    fn self_hom_is_one_dimensional() {
        let fan = p1xp1();
        let pi = class_group(&fan).unwrap();
        let h = graded_hom(&fan, &pi, &[3, -1], &[3, -1]).unwrap();
        assert_eq!(h.0, vec![1, 0, 0]);
    }

    #[test]
    fn cancelled_budget_stops() {
        let fan = p2();
        let eng = CohomologyEngine::new(&fan).with_budget(Budget::until(std::time::Instant::now()));
        assert_eq!(
            eng.cohomology(&TorusDivisor(vec![0, 0, 1])),
            Err(CohomologyError::Cancelled)
        );
    }
}
