//! Exact integer linear algebra: Smith and Hermite normal forms, kernels,
//! minors, ranks and lattice points of bounded rational polyhedra.
//!
//! Everything here works over arbitrary-precision integers. Rationals only
//! appear implicitly as `(numerator, denominator)` pairs with a positive
//! denominator.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::LatticeError;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows<T: Clone + Into<BigInt>>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as `i64`, or `None` if any entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Submatrix on the given rows, all columns.
    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        IntMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Submatrix on the given columns, all rows.
    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                *out.get_mut(i, jj) = self.get(i, j).clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            *self.get_mut(dst, j) += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            *self.get_mut(i, dst) += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j).clone();
            *self.get_mut(r, j) = v;
        }
    }

    /// Determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    *m.get_mut(i, j) = v;
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        row_echelon(self.clone()).1
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Fraction-free row echelon form; returns the reduced matrix and its rank.
fn row_echelon(mut m: IntMatrix) -> (IntMatrix, usize) {
    let mut rank = 0;
    for c in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(p) = (rank..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(p, rank);
        for i in rank + 1..m.rows {
            if m.get(i, c).is_zero() {
                continue;
            }
            let a = m.get(rank, c).clone();
            let b = m.get(i, c).clone();
            let g = a.gcd(&b);
            let (fa, fb) = (&a / &g, &b / &g);
            for j in c..m.cols {
                let v = m.get(i, j) * &fa - m.get(rank, j) * &fb;
                *m.get_mut(i, j) = v;
            }
        }
        rank += 1;
    }
    (m, rank)
}

/// Rank over the rationals of a small `i64` matrix. Rows are kept primitive
/// after each elimination step; returns `None` on overflow so the caller can
/// retry with [`IntMatrix::rank`].
pub fn rank_i64(mut rows: Vec<Vec<i64>>) -> Option<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len())
            .filter(|&i| rows[i][c] != 0)
            .min_by_key(|&i| rows[i][c].unsigned_abs())
        else {
            continue;
        };
        rows.swap(p, rank);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            let b = row[c];
            if b == 0 {
                continue;
            }
            let a = pivot[c];
            let g = a.gcd(&b);
            let (fa, fb) = (a / g, b / g);
            let mut content = 0i64;
            for j in c..cols {
                let v = row[j].checked_mul(fa)?.checked_sub(pivot[j].checked_mul(fb)?)?;
                row[j] = v;
                content = content.gcd(&v);
            }
            if content > 1 {
                row[c..].iter_mut().for_each(|x| *x /= content);
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// `U·A·V = S` with `S` diagonal, `d_i | d_{i+1}`, and `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries of `S`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.get(i, i).clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by elementary row and column operations, always pivoting
/// on an entry of least absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // least nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let e = s.get(i, j);
                    if !e.is_zero() && best.is_none_or(|(bi, bj)| e.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_smith(u, s, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -s.get(i, t).div_floor(s.get(t, t));
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !s.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -s.get(t, j).div_floor(s.get(t, t));
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !s.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into row t and go again
            let p = s.get(t, t).clone();
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(&p)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_smith(u, s, v)
}

fn finish_smith(u: IntMatrix, s: IntMatrix, v: IntMatrix) -> SmithDecomposition {
    SmithDecomposition { u, s, v }
}

/// Row-style Hermite normal form: echelon, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut m = a.clone();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // gcd-combine column c into row r
        loop {
            let nonzero: Vec<usize> = (r..m.rows).filter(|&i| !m.get(i, c).is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by(|&&x, &&y| m.get(x, c).abs().cmp(&m.get(y, c).abs()))
                .unwrap();
            m.swap_rows(p, r);
            let mut clean = true;
            for i in r + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let q = -m.get(i, c).div_floor(m.get(r, c));
                m.add_row_multiple(i, r, &q);
                clean &= m.get(i, c).is_zero();
            }
            if clean {
                break;
            }
        }
        if m.get(r, c).is_zero() {
            continue;
        }
        if m.get(r, c).is_negative() {
            m.negate_row(r);
        }
        let p = m.get(r, c).clone();
        for i in 0..r {
            let q = -m.get(i, c).div_floor(&p);
            m.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    let keep: Vec<usize> = (0..r).collect();
    m.select_rows(&keep)
}

/// Basis of the integer null space `{x : A·x = 0}` as the columns of the
/// result. The basis is saturated and put in Hermite form.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let kernel_cols: Vec<usize> = (rank..a.cols).collect();
    if kernel_cols.is_empty() {
        return IntMatrix::zeros(a.cols, 0);
    }
    let k = snf.v.select_cols(&kernel_cols);
    hermite_normal_form(&k.transpose()).transpose()
}

/// Some integer `x` with `A·x = b`, or `None` if there is none.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len());
    let snf = smith_normal_form(a);
    // S·y = U·b, x = V·y
    let ub = snf.u.mul_vec(b);
    let factors = snf.invariant_factors();
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, c) in ub.iter().enumerate() {
        match factors.get(i) {
            Some(d) => {
                if !c.is_multiple_of(d) {
                    return None;
                }
                y[i] = c / d;
            }
            None if !c.is_zero() => return None,
            None => {}
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Determinants of all `cols × cols` row-submatrices, row subsets in
/// lexicographic order.
pub fn maximal_minors(a: &IntMatrix) -> Vec<BigInt> {
    assert!(a.rows >= a.cols, "maximal minors need rows >= cols");
    combinations(a.rows, a.cols)
        .map(|rows| a.select_rows(&rows).determinant())
        .collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = if k <= n { Some((0..k).collect::<Vec<_>>()) } else { None };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut c = current.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                next = Some(c);
                break;
            }
        }
        Some(current)
    })
}

/// `{x : ⟨a, x⟩ ≥ b for inequalities, ⟨a, x⟩ = b for equalities}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolyhedron {
    dim: usize,
    inequalities: Vec<(Vec<BigInt>, BigInt)>,
    equalities: Vec<(Vec<BigInt>, BigInt)>,
}

impl RationalPolyhedron {
    pub fn new(dim: usize) -> Self {
        RationalPolyhedron {
            dim,
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    /// Adds `⟨normal, x⟩ ≥ offset`.
    pub fn with_inequality<T: Into<BigInt> + Clone>(mut self, normal: &[T], offset: T) -> Self {
        assert_eq!(normal.len(), self.dim);
        self.inequalities
            .push((normal.iter().cloned().map(Into::into).collect(), offset.into()));
        self
    }

    /// Adds `⟨normal, x⟩ = offset`.
    pub fn with_equality<T: Into<BigInt> + Clone>(mut self, normal: &[T], offset: T) -> Self {
        assert_eq!(normal.len(), self.dim);
        self.equalities
            .push((normal.iter().cloned().map(Into::into).collect(), offset.into()));
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.inequalities.iter().all(|(a, b)| &dot(a, x) >= b) && self.equalities.iter().all(|(a, b)| &dot(a, x) == b)
    }

    fn contains_scaled(&self, num: &[BigInt], den: &BigInt) -> bool {
        self.inequalities.iter().all(|(a, b)| dot(a, num) >= b * den)
            && self.equalities.iter().all(|(a, b)| dot(a, num) == b * den)
    }

    fn all_normals(&self) -> Vec<&Vec<BigInt>> {
        self.inequalities
            .iter()
            .chain(&self.equalities)
            .map(|(a, _)| a)
            .collect()
    }

    /// True iff the recession cone is `{0}`, i.e. a nonempty polyhedron is a
    /// polytope. Decided exactly.
    pub fn is_bounded(&self) -> bool {
        let d = self.dim;
        if d == 0 {
            return true;
        }
        let normals = self.all_normals();
        let rows: Vec<Vec<BigInt>> = normals.iter().map(|a| (*a).clone()).collect();
        if rows.is_empty() || IntMatrix::from_rows(d, &rows).rank() < d {
            return false;
        }
        // pointed cone; nonzero iff some edge direction lies in it
        let in_cone = |w: &[BigInt]| {
            self.inequalities.iter().all(|(a, _)| !dot(a, w).is_negative())
                && self.equalities.iter().all(|(a, _)| dot(a, w).is_zero())
        };
        for subset in combinations(rows.len(), d - 1) {
            let sub = IntMatrix::from_rows(d, &subset.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>());
            let w = generalized_cross(&sub);
            if w.iter().all(Zero::is_zero) {
                continue;
            }
            let neg: Vec<BigInt> = w.iter().map(|x| -x).collect();
            if in_cone(&w) || in_cone(&neg) {
                return false;
            }
        }
        true
    }

    /// Vertices as `(numerators, common positive denominator)`, deduplicated
    /// and in lexicographic order of the rational point.
    pub fn vertices(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        let d = self.dim;
        let planes: Vec<(Vec<BigInt>, BigInt)> = self.inequalities.iter().chain(&self.equalities).cloned().collect();
        let mut out: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
        for subset in combinations(planes.len(), d) {
            let m = IntMatrix::from_rows(d, &subset.iter().map(|&i| planes[i].0.clone()).collect::<Vec<_>>());
            let det = m.determinant();
            if det.is_zero() {
                continue;
            }
            let rhs: Vec<BigInt> = subset.iter().map(|&i| planes[i].1.clone()).collect();
            let (mut num, mut den) = (adjugate(&m).mul_vec(&rhs), det);
            if den.is_negative() {
                den = -den;
                num.iter_mut().for_each(|x| *x = -x.clone());
            }
            let g = num.iter().fold(den.clone(), |g, x| g.gcd(x));
            let num: Vec<BigInt> = num.iter().map(|x| x / &g).collect();
            let den = den / g;
            if self.contains_scaled(&num, &den) && !out.contains(&(num.clone(), den.clone())) {
                out.push((num, den));
            }
        }
        out.sort_by(|(a, da), (b, db)| {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x * db).cmp(&(y * da)))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        out
    }

    /// Integer points, lexicographically ordered. Fails on unbounded input.
    pub fn lattice_points(&self) -> Result<Vec<Vec<BigInt>>, LatticeError> {
        if !self.is_bounded() {
            return Err(LatticeError::UnboundedPolyhedron);
        }
        let d = self.dim;
        if d == 0 {
            return Ok(if self.contains(&[]) { vec![vec![]] } else { vec![] });
        }
        let verts = self.vertices();
        if verts.is_empty() {
            return Ok(Vec::new());
        }
        let mut lo: Vec<BigInt> = Vec::with_capacity(d);
        let mut hi: Vec<BigInt> = Vec::with_capacity(d);
        for i in 0..d {
            let ceil = verts.iter().map(|(n, den)| n[i].div_ceil(den)).min().unwrap();
            let floor = verts.iter().map(|(n, den)| n[i].div_floor(den)).max().unwrap();
            lo.push(ceil);
            hi.push(floor);
        }
        let mut out = Vec::new();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(out);
        }
        let mut x = lo.clone();
        loop {
            if self.contains(&x) {
                out.push(x.clone());
            }
            // odometer, last coordinate fastest
            let mut i = d;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if x[i] < hi[i] {
                    x[i] += 1;
                    x[i + 1..].clone_from_slice(&lo[i + 1..]);
                    break;
                }
            }
        }
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Adjugate of a square matrix, so that `A·adj(A) = det(A)·I`.
pub fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.rows;
    assert_eq!(n, m.cols);
    let mut adj = IntMatrix::zeros(n, n);
    if n == 1 {
        *adj.get_mut(0, 0) = BigInt::one();
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = m.select_rows(&rows).select_cols(&cols).determinant();
            *adj.get_mut(i, j) = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    adj
}

/// For a `(d-1) × d` matrix, the vector of signed maximal minors; it spans the
/// kernel when the rows are independent and is zero otherwise.
pub fn generalized_cross(m: &IntMatrix) -> Vec<BigInt> {
    let d = m.cols;
    assert_eq!(m.rows + 1, d);
    (0..d)
        .map(|j| {
            let cols: Vec<usize> = (0..d).filter(|&c| c != j).collect();
            let minor = m.select_cols(&cols).determinant();
            if j % 2 == 0 {
                minor
            } else {
                -minor
            }
        })
        .collect()
}
