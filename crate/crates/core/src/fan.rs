//! Complete simplicial fans, their class-group presentation and the
//! numerical checks that run over toric curves (walls).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FanError;
use crate::lattice::{hermite_normal_form, maximal_minors, smith_normal_form, solve_integer, IntMatrix};

/// A fan given by primitive ray generators and maximal cones (index sets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Structural validation only: primitivity, arity, independence of each
    /// cone, no duplicate rays, every ray used. Smoothness and completeness
    /// are checked separately by [`validate_smooth_complete`].
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        let invalid = |msg: String| Err(FanError::Validation(msg));
        if dim == 0 {
            return invalid("dimension must be positive".into());
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return invalid(format!("ray {i} has {} coordinates, expected {dim}", r.len()));
            }
            let g = r.iter().fold(0i64, |g, &x| g.gcd(&x));
            if g != 1 {
                return invalid(format!("ray {i} = {r:?} is not primitive"));
            }
        }
        let distinct: BTreeSet<&Vec<i64>> = rays.iter().collect();
        if distinct.len() != rays.len() {
            return invalid("duplicate ray".into());
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        let mut used = vec![false; rays.len()];
        for (k, cone) in max_cones.into_iter().enumerate() {
            let mut c = cone;
            c.sort_unstable();
            c.dedup();
            if c.len() != dim {
                return invalid(format!("cone {k} has {} distinct rays, expected {dim}", c.len()));
            }
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return invalid(format!("cone {k} refers to missing ray {bad}"));
            }
            let m = IntMatrix::from_rows(dim, &c.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>());
            if m.determinant().is_zero() {
                return invalid(format!("cone {k} has linearly dependent rays"));
            }
            for &i in &c {
                used[i] = true;
            }
            cones.push(c);
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return invalid(format!("ray {i} lies in no maximal cone"));
        }
        Ok(Fan {
            dim,
            rays,
            max_cones: cones,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// The `n × d` matrix `B` whose rows are the rays.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.dim, &self.rays)
    }

    fn cone_matrix(&self, cone: &[usize]) -> IntMatrix {
        IntMatrix::from_rows(
            self.dim,
            &cone.iter().map(|&i| self.rays[i].clone()).collect::<Vec<_>>(),
        )
    }

    /// Same fan with rays listed in a different order; `perm[new] = old`.
    pub fn permute_rays(&self, perm: &[usize]) -> Fan {
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let rays = perm.iter().map(|&old| self.rays[old].clone()).collect();
        let cones = self
            .max_cones
            .iter()
            .map(|c| {
                let mut c: Vec<usize> = c.iter().map(|&i| inverse[i]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        Fan {
            dim: self.dim,
            rays,
            max_cones: cones,
        }
    }

    /// Applies `m ↦ m·U` to every ray (a lattice automorphism when `U` is
    /// unimodular).
    pub fn transform(&self, u: &IntMatrix) -> Fan {
        let rays = self
            .ray_matrix()
            .mul(u)
            .to_i64_rows()
            .expect("transformed rays fit in i64");
        Fan {
            dim: self.dim,
            rays,
            max_cones: self.max_cones.clone(),
        }
    }
}

/// Serialized form of one variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalFan {
    pub dim: usize,
    pub index: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub database: String,
    pub id: usize,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.database, self.id)
    }
}

/// A database entry: a validated smooth complete Fano fan with its index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyRecord {
    pub dim: usize,
    pub database_index: usize,
    pub fan: Fan,
    pub provenance: Provenance,
}

impl VarietyRecord {
    pub fn to_canonical(&self) -> CanonicalFan {
        CanonicalFan {
            dim: self.dim,
            index: self.database_index,
            rays: self.fan.rays.clone(),
            max_cones: self.fan.max_cones.clone(),
        }
    }

    /// One-line canonical JSON.
    pub fn to_canonical_line(&self) -> String {
        serde_json::to_string(&self.to_canonical()).expect("canonical record serializes")
    }
}

pub const DEFAULT_DATABASE: &str = "macaulay2";

/// Parses one canonical record and validates it as a smooth complete Fano
/// fan.
pub fn parse_variety(text: &str) -> Result<VarietyRecord, FanError> {
    let raw: CanonicalFan = serde_json::from_str(text.trim()).map_err(|e| FanError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    record_from_canonical(raw, DEFAULT_DATABASE)
}

pub fn record_from_canonical(raw: CanonicalFan, database: &str) -> Result<VarietyRecord, FanError> {
    let fan = Fan::new(raw.dim, raw.rays, raw.max_cones)?;
    validate_smooth_complete(&fan).map_err(|v| FanError::Validation(v.to_string()))?;
    if !fano_check(&fan) {
        return Err(FanError::Validation("anticanonical divisor is not ample".into()));
    }
    Ok(VarietyRecord {
        dim: raw.dim,
        database_index: raw.index,
        fan,
        provenance: Provenance {
            database: database.to_string(),
            id: raw.index,
        },
    })
}

/// Parses a newline-delimited collection; blank lines are skipped. Line
/// numbers in errors are 1-based file lines.
pub fn parse_collection(text: &str) -> Result<Vec<VarietyRecord>, FanError> {
    let mut out: Vec<VarietyRecord> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec = parse_variety(line).map_err(|e| match e {
            FanError::Parse { column, message, .. } => FanError::Parse {
                line: lineno + 1,
                column,
                message,
            },
            other => FanError::Validation(format!("line {}: {other}", lineno + 1)),
        })?;
        if let Some(prev) = out.last() {
            if (prev.dim, prev.database_index) >= (rec.dim, rec.database_index) {
                return Err(FanError::Validation(format!(
                    "line {}: records must be in ascending index order",
                    lineno + 1
                )));
            }
        }
        out.push(rec);
    }
    Ok(out)
}

/// First failure found by [`validate_smooth_complete`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotSmooth {
        cone: usize,
        det: i64,
    },
    FacetNotShared {
        cone: usize,
        facet: Vec<usize>,
        incident: usize,
    },
    SameSide {
        facet: Vec<usize>,
    },
    Disconnected,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSmooth { cone, det } => {
                write!(f, "cone {cone} has determinant {det}, not ±1")
            }
            Violation::FacetNotShared { cone, facet, incident } => write!(
                f,
                "facet {facet:?} of cone {cone} lies in {incident} maximal cones, expected 2"
            ),
            Violation::SameSide { facet } => {
                write!(f, "both cones on facet {facet:?} lie on the same side of it")
            }
            Violation::Disconnected => write!(f, "facet-adjacency graph is disconnected"),
        }
    }
}

/// Facets of all maximal cones with the cones containing them.
fn facet_incidence(fan: &Fan) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (k, cone) in fan.max_cones.iter().enumerate() {
        for skip in 0..cone.len() {
            let facet: Vec<usize> = cone
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &r)| r)
                .collect();
            map.entry(facet).or_default().push(k);
        }
    }
    map
}

fn opposite_ray(cone: &[usize], facet: &[usize]) -> usize {
    *cone.iter().find(|r| !facet.contains(r)).expect("facet is proper")
}

/// Smoothness (unimodular cones) and completeness via facet pairing, a
/// separation check across each facet, and connectivity.
pub fn validate_smooth_complete(fan: &Fan) -> Result<(), Violation> {
    for (k, cone) in fan.max_cones.iter().enumerate() {
        let det = fan.cone_matrix(cone).determinant();
        if det.abs() != BigInt::one() {
            return Err(Violation::NotSmooth {
                cone: k,
                det: det.to_i64().unwrap_or(i64::MAX),
            });
        }
    }
    let incidence = facet_incidence(fan);
    for (k, cone) in fan.max_cones.iter().enumerate() {
        for skip in 0..cone.len() {
            let facet: Vec<usize> = cone
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &r)| r)
                .collect();
            let inc = &incidence[&facet];
            if inc.len() != 2 {
                return Err(Violation::FacetNotShared {
                    cone: k,
                    facet,
                    incident: inc.len(),
                });
            }
        }
    }
    for (facet, inc) in &incidence {
        let a = opposite_ray(&fan.max_cones[inc[0]], facet);
        let b = opposite_ray(&fan.max_cones[inc[1]], facet);
        // sign of det(facet rays, outer ray) tells the side
        let side = |r: usize| {
            let mut rows: Vec<Vec<i64>> = facet.iter().map(|&i| fan.rays[i].clone()).collect();
            rows.push(fan.rays[r].clone());
            IntMatrix::from_rows(fan.dim, &rows).determinant().signum()
        };
        if side(a) == side(b) {
            return Err(Violation::SameSide { facet: facet.clone() });
        }
    }
    let n = fan.max_cones.len();
    let mut adj = vec![Vec::new(); n];
    for inc in incidence.values() {
        adj[inc[0]].push(inc[1]);
        adj[inc[1]].push(inc[0]);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(k) = queue.pop_front() {
        for &j in &adj[k] {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    if seen.iter().all(|&s| s) {
        Ok(())
    } else {
        Err(Violation::Disconnected)
    }
}

/// The surjection `π: Z^n → Cl(X) ≅ Z^{n-d}` with kernel the image of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClassMap {
    n: usize,
    cl_rank: usize,
    matrix: IntMatrix,
    rows_i64: Vec<Vec<i64>>,
    /// `n × r` right inverse of `π`, from its Smith form.
    section: Vec<Vec<i64>>,
}

impl DivisorClassMap {
    /// Validates a user-supplied presentation: `π·B = 0`, and `π` surjective
    /// with rank `n - d`.
    pub fn from_matrix(fan: &Fan, matrix: IntMatrix) -> Result<DivisorClassMap, FanError> {
        let bad = |m: &str| Err(FanError::BadPresentation(m.to_string()));
        let n = fan.n_rays();
        let cl_rank = n - fan.dim;
        if matrix.cols() != n || matrix.rows() != cl_rank {
            return bad("wrong shape");
        }
        if !matrix.mul(&fan.ray_matrix()).is_zero() {
            return bad("π·B ≠ 0");
        }
        let snf = smith_normal_form(&matrix);
        let f = snf.invariant_factors();
        if f.len() != cl_rank || f.iter().any(|d| !d.is_one()) {
            return bad("π is not surjective");
        }
        let overflow = || FanError::BadPresentation("entries overflow i64".into());
        let rows_i64 = matrix.to_i64_rows().ok_or_else(overflow)?;
        // U·π·V = [I | 0], so π·(V[:, ..r]·U) = I
        let lead: Vec<usize> = (0..cl_rank).collect();
        let section = snf
            .v
            .select_cols(&lead)
            .mul(&snf.u)
            .to_i64_rows()
            .ok_or_else(overflow)?;
        Ok(DivisorClassMap {
            n,
            cl_rank,
            matrix,
            rows_i64,
            section,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cl_rank(&self) -> usize {
        self.cl_rank
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// A torus-invariant divisor in the given class, chosen deterministically
    /// from the Smith form of `π`.
    pub fn preimage(&self, class: &[i64]) -> Vec<i64> {
        debug_assert_eq!(class.len(), self.cl_rank);
        self.section
            .iter()
            .map(|row| row.iter().zip(class).map(|(x, y)| x * y).sum())
            .collect()
    }

    /// Class of the divisor `Σ a_ρ D_ρ`.
    pub fn class_of(&self, a: &[i64]) -> Vec<i64> {
        debug_assert_eq!(a.len(), self.n);
        self.rows_i64
            .iter()
            .map(|row| row.iter().zip(a).map(|(x, y)| x * y).sum())
            .collect()
    }
}

/// Class-group presentation from the Smith form of `Bᵀ`, normalized to
/// Hermite form so that it depends only on the fan and its ray order.
pub fn class_group(fan: &Fan) -> Result<DivisorClassMap, FanError> {
    let bt = fan.ray_matrix().transpose();
    let snf = smith_normal_form(&bt);
    let factors = snf.invariant_factors();
    if factors.iter().any(|d| !d.is_one()) {
        return Err(FanError::TorsionClassGroup(
            factors.iter().map(ToString::to_string).collect(),
        ));
    }
    let d = factors.len();
    let n = fan.n_rays();
    // last n-d columns of V span ker Bᵀ; transposed they present Cl(X)
    let kernel_cols: Vec<usize> = (d..n).collect();
    let pi = snf.v.select_cols(&kernel_cols).transpose();
    DivisorClassMap::from_matrix(fan, hermite_normal_form(&pi))
}

/// Bayer–Popescu–Sturmfels unimodularity: independent columns and all
/// maximal minors in `{0, ±1}`.
pub fn unimodular(fan: &Fan) -> bool {
    let b = fan.ray_matrix();
    if b.rank() < fan.dim {
        return false;
    }
    maximal_minors(&b).iter().all(|m| m.abs() <= BigInt::one())
}

/// A `(d-1)`-cone shared by two maximal cones, with its relation
/// `u + u' + Σ b_i u_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub tau: Vec<usize>,
    pub sides: (usize, usize),
    pub outer: (usize, usize),
    /// `b_i`, aligned with `tau`; these are the intersection numbers `D_i·C`.
    pub coefficients: Vec<i64>,
}

impl Wall {
    /// `(-K)·C = 2 + Σ b_i`.
    pub fn anticanonical_degree(&self) -> i64 {
        2 + self.coefficients.iter().sum::<i64>()
    }

    /// Evaluates `u + u' + Σ b_i u_i`; zero for a valid wall.
    pub fn relation_value(&self, fan: &Fan) -> Vec<i64> {
        let mut v: Vec<i64> = fan.ray(self.outer.0).to_vec();
        for (x, y) in v.iter_mut().zip(fan.ray(self.outer.1)) {
            *x += y;
        }
        for (&r, &b) in self.tau.iter().zip(&self.coefficients) {
            for (x, y) in v.iter_mut().zip(fan.ray(r)) {
                *x += b * y;
            }
        }
        v
    }
}

pub fn walls(fan: &Fan) -> Result<Vec<Wall>, FanError> {
    if fan.dim < 2 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (tau, inc) in facet_incidence(fan) {
        if inc.len() != 2 {
            continue;
        }
        let (k0, k1) = (inc[0], inc[1]);
        let u = opposite_ray(&fan.max_cones[k0], &tau);
        let u2 = opposite_ray(&fan.max_cones[k1], &tau);
        // -u' = u + Σ b_i u_i in the basis (u, tau)
        let mut basis = vec![u];
        basis.extend(&tau);
        let m = fan.cone_matrix(&basis).transpose();
        let target: Vec<BigInt> = fan.ray(u2).iter().map(|&x| BigInt::from(-x)).collect();
        let coords = solve_integer(&m, &target).ok_or_else(|| FanError::NonSmoothWall { tau: tau.clone() })?;
        if !coords[0].is_one() {
            return Err(FanError::NonSmoothWall { tau });
        }
        let coefficients = coords[1..]
            .iter()
            .map(|c| c.to_i64().expect("wall coefficient fits in i64"))
            .collect();
        out.push(Wall {
            tau,
            sides: (k0, k1),
            outer: (u, u2),
            coefficients,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BondalCertificate {
    pub holds: bool,
    /// `(tau, intersection numbers)` for every wall.
    pub intersections: Vec<(Vec<usize>, Vec<i64>)>,
    /// Indices into `intersections` of walls that fail.
    pub failing: Vec<usize>,
}

/// Every wall has intersection numbers `≥ -1` with `-1` at most once.
pub fn bondal_criterion(fan: &Fan) -> Result<BondalCertificate, FanError> {
    let ws = walls(fan)?;
    let mut intersections = Vec::with_capacity(ws.len());
    let mut failing = Vec::new();
    for (i, w) in ws.into_iter().enumerate() {
        let ok = w.coefficients.iter().all(|&a| a >= -1) && w.coefficients.iter().filter(|&&a| a == -1).count() <= 1;
        if !ok {
            failing.push(i);
        }
        intersections.push((w.tau, w.coefficients));
    }
    Ok(BondalCertificate {
        holds: failing.is_empty(),
        intersections,
        failing,
    })
}

/// Ampleness of `-K` on a smooth complete fan: `(-K)·C > 0` on every wall.
pub fn fano_check(fan: &Fan) -> bool {
    if fan.dim == 1 {
        // only P¹ is complete in dimension one
        return fan.n_rays() == 2;
    }
    match walls(fan) {
        Ok(ws) => ws.iter().all(|w| w.anticanonical_degree() > 0),
        Err(_) => false,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn p1() -> Fan {
        Fan::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap()
    }

    pub fn p2() -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap()
    }

    pub fn p1xp1() -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        )
        .unwrap()
    }

    pub fn hirzebruch(a: i64) -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        )
        .unwrap()
    }

    pub fn projective_space(d: usize) -> Fan {
        let mut rays: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
        rays.push(vec![-1; d]);
        let cones = (0..=d).map(|skip| (0..=d).filter(|&i| i != skip).collect()).collect();
        Fan::new(d, rays, cones).unwrap()
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            Fan::new(2, vec![vec![2, 0], vec![0, 1]], vec![vec![0, 1]]),
            Err(FanError::Validation(_))
        ));
        assert!(matches!(
            Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0]]),
            Err(FanError::Validation(_))
        ));
        assert!(matches!(
            Fan::new(2, vec![vec![1, 0], vec![-1, 0]], vec![vec![0, 1]]),
            Err(FanError::Validation(_))
        ));
    }

    #[test]
    fn parse_p1_record() {
        let rec = parse_variety(r#"{"dim":1,"index":0,"rays":[[1],[-1]],"max_cones":[[0],[1]]}"#).unwrap();
        assert_eq!(rec.fan.n_rays(), 2);
        assert_eq!(rec.database_index, 0);
    }

    #[test]
    fn parse_rejects_non_primitive() {
        let text = r#"{"dim":5,"index":3,"rays":[[0,0,2,0,0]],"max_cones":[]}"#;
        assert!(matches!(parse_variety(text), Err(FanError::Validation(_))));
    }

    #[test]
    fn parse_reports_position() {
        match parse_variety(r#"{"dim":1,"index":0,"rays":[[1],"#) {
            Err(FanError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn completeness_of_small_fans() {
        assert_eq!(validate_smooth_complete(&p1()), Ok(()));
        assert_eq!(validate_smooth_complete(&p2()), Ok(()));
        assert_eq!(validate_smooth_complete(&p1xp1()), Ok(()));
        let cut = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
        )
        .unwrap();
        assert!(matches!(
            validate_smooth_complete(&cut),
            Err(Violation::FacetNotShared { incident: 1, .. })
        ));
    }

    #[test]
    fn non_smooth_cone_is_reported() {
        let f = Fan::new(
            2,
            vec![vec![1, 0], vec![1, 2], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        assert!(matches!(
            validate_smooth_complete(&f),
            Err(Violation::NotSmooth { det: 2, .. })
        ));
    }

    #[test]
    fn p1_class_map() {
        let pi = class_group(&p1()).unwrap();
        let row = pi.matrix().row(0).to_vec();
        assert!(row == vec![BigInt::one(), BigInt::one()] || row == vec![-BigInt::one(), -BigInt::one()]);
    }

    #[test]
    fn class_map_annihilates_rays() {
        for fan in [p2(), p1xp1(), hirzebruch(1), projective_space(4)] {
            let pi = class_group(&fan).unwrap();
            assert!(pi.matrix().mul(&fan.ray_matrix()).is_zero());
            assert_eq!(pi.cl_rank(), fan.n_rays() - fan.dim());
        }
    }

    #[test]
    fn projective_spaces_are_unimodular() {
        for d in 1..=5 {
            assert!(unimodular(&projective_space(d)));
        }
    }

    #[test]
    fn walls_of_p2() {
        let ws = walls(&p2()).unwrap();
        assert_eq!(ws.len(), 3);
        for w in &ws {
            assert_eq!(w.coefficients, vec![1]);
            assert!(w.relation_value(&p2()).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn walls_of_p1xp1() {
        let ws = walls(&p1xp1()).unwrap();
        assert_eq!(ws.len(), 4);
        assert!(ws.iter().all(|w| w.coefficients == vec![0]));
    }

    #[test]
    fn bondal_and_fano_on_small_cases() {
        assert!(bondal_criterion(&p2()).unwrap().holds);
        let c = bondal_criterion(&p1()).unwrap();
        assert!(c.holds && c.intersections.is_empty());
        assert!(fano_check(&p2()));
        assert!(fano_check(&p1()));
        assert!(fano_check(&hirzebruch(1)));
        assert!(!fano_check(&hirzebruch(2)));
        assert!(!fano_check(&hirzebruch(3)));
        let f2 = walls(&hirzebruch(2)).unwrap();
        assert!(f2
            .iter()
            .any(|w| w.anticanonical_degree() == 0 && w.coefficients == vec![-2]));
    }
}
