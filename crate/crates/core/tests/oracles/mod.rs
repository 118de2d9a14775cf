//! Independent reference computations shared by the property suites and the
//! acceptance target.
#![allow(dead_code)]

use hhl_core::cohomology::{reduced_cohomology_ranks, SimplicialModel};
use hhl_core::fan::{parse_collection, Fan};
use hhl_core::RationalPolyhedron;

const DATABASE: [&str; 5] = [
    include_str!("../../../../data/smooth_fano_1.jsonl"),
    include_str!("../../../../data/smooth_fano_2.jsonl"),
    include_str!("../../../../data/smooth_fano_3.jsonl"),
    include_str!("../../../../data/smooth_fano_4.jsonl"),
    include_str!("../../../../data/smooth_fano_5.jsonl"),
];

/// All bundled fans of one dimension, in index order.
pub fn database_fans(dim: usize) -> Vec<Fan> {
    parse_collection(DATABASE[dim - 1])
        .expect("bundled database parses")
        .into_iter()
        .map(|r| r.fan)
        .collect()
}

/// `h^p(D)` by summing reduced cohomology over every character in the box
/// `[-radius, radius]^d`.
pub fn box_scan_cohomology(fan: &Fan, a: &[i64], radius: i64) -> Vec<u64> {
    let d = fan.dim();
    let model = SimplicialModel::new(fan);
    let mut h = vec![0u64; d + 1];
    let mut m = vec![-radius; d];
    loop {
        let pattern = fan.rays().iter().enumerate().fold(0u64, |p, (i, u)| {
            let t: i64 = u.iter().zip(&m).map(|(x, y)| x * y).sum();
            if t < -a[i] {
                p | 1 << i
            } else {
                p
            }
        });
        for (p, r) in reduced_cohomology_ranks(&model, pattern).into_iter().enumerate() {
            h[p] += r as u64;
        }
        let mut i = d;
        loop {
            if i == 0 {
                return h;
            }
            i -= 1;
            if m[i] < radius {
                m[i] += 1;
                m[i + 1..].iter_mut().for_each(|x| *x = -radius);
                break;
            }
        }
    }
}

/// Box scan at two radii; `None` unless both agree.
pub fn stabilized_box_scan(fan: &Fan, a: &[i64]) -> Option<Vec<u64>> {
    let r = a.iter().map(|x| x.abs()).max().unwrap_or(0) + 2;
    let small = box_scan_cohomology(fan, a, r);
    let large = box_scan_cohomology(fan, a, r + 4);
    (small == large).then_some(small)
}

/// `h^0(D)` as the number of lattice points of `{m : ⟨m, u_ρ⟩ ≥ -a_ρ}`.
pub fn h0_by_lattice_points(fan: &Fan, a: &[i64]) -> u64 {
    let p = fan
        .rays()
        .iter()
        .zip(a)
        .fold(RationalPolyhedron::new(fan.dim()), |p, (u, &ai)| {
            p.with_inequality(u, -ai)
        });
    p.lattice_points().expect("sections polytope is bounded").len() as u64
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * cofactor_det(&minor)
        })
        .sum()
}

/// `a + B·m`.
pub fn shift_by_character(fan: &Fan, a: &[i64], m: &[i64]) -> Vec<i64> {
    fan.rays()
        .iter()
        .zip(a)
        .map(|(u, &ai)| ai + u.iter().zip(m).map(|(x, y)| x * y).sum::<i64>())
        .collect()
}
