//! Exact linear algebra over the integers.
//!
//! Everything downstream (hulls, smoothness, fans, Chow classes) reduces to a
//! handful of lattice computations: primitive vectors, Hermite normal form,
//! Smith-type basis-extension tests, integer linear solves, and affine
//! unimodular (lattice-preserving) coordinate changes. All arithmetic uses
//! arbitrary-precision integers; nothing here ever rounds.

use std::fmt;
use std::ops::{Add, Deref, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An integer vector. Ordering is lexicographic, which this crate uses as its
/// universal deterministic tie-breaker.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVec(Vec<BigInt>);

impl IntVec {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVec(entries)
    }

    /// Zero vector of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        IntVec(vec![BigInt::zero(); dim])
    }

    /// Standard basis vector `e_i` (0-indexed) in the given dimension.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); dim];
        v[i] = BigInt::one();
        IntVec(v)
    }

    /// Convenience constructor used pervasively in tests.
    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVec(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn into_inner(self) -> Vec<BigInt> {
        self.0
    }

    pub fn dot(&self, other: &IntVec) -> BigInt {
        assert_eq!(self.len(), other.len(), "dot of mismatched dimensions");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scaled(&self, c: &BigInt) -> IntVec {
        IntVec(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> IntVec {
        IntVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.is_zero())
    }

    /// Greatest common divisor of the entries (nonnegative; 0 for the zero
    /// vector).
    pub fn content(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::zero(), |g, a| g.gcd(a))
    }
}

impl Deref for IntVec {
    type Target = [BigInt];
    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl std::ops::DerefMut for IntVec {
    fn deref_mut(&mut self) -> &mut [BigInt] {
        &mut self.0
    }
}

impl Add for &IntVec {
    type Output = IntVec;
    fn add(self, rhs: &IntVec) -> IntVec {
        assert_eq!(self.len(), rhs.len(), "sum of mismatched dimensions");
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVec {
    type Output = IntVec;
    fn sub(self, rhs: &IntVec) -> IntVec {
        assert_eq!(self.len(), rhs.len(), "difference of mismatched dimensions");
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", coords.join(", "))
    }
}

/// Rescale a nonzero vector to the shortest integer vector on the same ray.
pub fn primitive_vector(v: &IntVec) -> Result<IntVec> {
    if v.is_zero() {
        return Err(Error::input("the zero vector has no primitive rescaling"));
    }
    let g = v.content();
    Ok(IntVec(v.iter().map(|a| a / &g).collect()))
}

/// A dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    /// Build a matrix whose rows are the given vectors (all of equal length).
    pub fn from_rows(rows: &[IntVec]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for v in rows {
            assert_eq!(v.len(), c, "ragged rows");
            data.extend(v.iter().cloned());
        }
        IntMat { rows: r, cols: c, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> IntVec {
        IntVec(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn col(&self, c: usize) -> IntVec {
        IntVec((0..self.rows).map(|r| self.at(r, c).clone()).collect())
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "product of mismatched shapes");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.at(k, j);
                    *out.at_mut(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &IntVec) -> IntVec {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        IntVec(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMat::identity(self.rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_scaled_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let d = self.at(dst, c) - q * self.at(src, c);
            *self.at_mut(dst, c) = d;
        }
    }

    /// Exact determinant of a square matrix (fraction-free Bareiss
    /// elimination, so intermediate values stay integral).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.at(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                    *a.at_mut(i, j) = &num / &prev;
                }
                *a.at_mut(i, k) = BigInt::zero();
            }
            prev = a.at(k, k).clone();
        }
        sign * a.at(n - 1, n - 1).clone()
    }

    /// Inverse of a unimodular integer matrix (|det| = 1). Returns an error
    /// if the matrix is not unimodular.
    pub fn inverse_unimodular(&self) -> Result<IntMat> {
        if self.rows != self.cols {
            return Err(Error::input("cannot invert a non-square matrix"));
        }
        let (h, u) = hermite_normal_form(self);
        // For a unimodular matrix the row Hermite form is the identity, and
        // then U * self = I exhibits U as the inverse.
        if !h.is_identity() {
            return Err(Error::input("matrix is not unimodular"));
        }
        Ok(u)
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U * m = H`, `U` unimodular, and `H` in row echelon
/// form with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. Pivot selection inside a column is smallest-absolute-value
/// first, which keeps intermediate entries small.
pub fn hermite_normal_form(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.rows);
    let (rows, cols) = (m.rows, m.cols);
    let mut t = 0; // next pivot row
    for j in 0..cols {
        if t == rows {
            break;
        }
        // Euclidean elimination below row t in column j.
        loop {
            let mut best: Option<usize> = None;
            for i in t..rows {
                if h.at(i, j).is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(b) if h.at(i, j).abs() < h.at(b, j).abs() => Some(i),
                    keep => keep,
                };
            }
            let Some(b) = best else { break };
            h.swap_rows(t, b);
            u.swap_rows(t, b);
            let mut reduced_any = false;
            for i in t + 1..rows {
                if h.at(i, j).is_zero() {
                    continue;
                }
                let q = h.at(i, j) / h.at(t, j); // truncating division
                h.sub_scaled_row(i, t, &q);
                u.sub_scaled_row(i, t, &q);
                reduced_any = true;
            }
            if !reduced_any && (t + 1..rows).all(|i| h.at(i, j).is_zero()) {
                break;
            }
        }
        if h.at(t, j).is_zero() {
            continue; // no pivot in this column
        }
        if h.at(t, j).is_negative() {
            h.negate_row(t);
            u.negate_row(t);
        }
        // Reduce the entries above the pivot into [0, pivot).
        for i in 0..t {
            let q = h.at(i, j).div_floor(h.at(t, j));
            h.sub_scaled_row(i, t, &q);
            u.sub_scaled_row(i, t, &q);
        }
        t += 1;
    }
    (h, u)
}

/// Do the given vectors form part of a basis of the integer lattice Z^n?
///
/// Equivalently: can they be extended to a unimodular matrix? Decided by the
/// Smith normal form (computed as alternating row/column Hermite reductions):
/// the answer is yes exactly when every invariant factor equals 1, i.e. the
/// vectors are independent and their span is a saturated sublattice.
pub fn is_partial_lattice_basis(vectors: &[IntVec]) -> Result<bool> {
    if vectors.is_empty() {
        return Ok(true);
    }
    let n = vectors[0].len();
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::input("vectors of mismatched dimension"));
    }
    if vectors.len() > n {
        return Err(Error::input(format!(
            "{} vectors cannot be part of a basis of Z^{n}",
            vectors.len()
        )));
    }
    let k = vectors.len();
    let mut m = IntMat::from_rows(vectors);
    // Alternate row and column reductions until the matrix is diagonal.
    loop {
        m = hermite_normal_form(&m).0;
        m = hermite_normal_form(&m.transpose()).0.transpose();
        let diagonal = (0..m.rows)
            .all(|r| (0..m.cols).all(|c| r == c || m.at(r, c).is_zero()));
        if diagonal {
            break;
        }
    }
    Ok((0..k).all(|i| m.at(i, i).is_one()))
}

/// Solve `m * x = b` over the integers. Returns `None` when no integer
/// solution exists. When solutions form a coset of a positive-dimensional
/// lattice, the free coordinates in column-echelon position are set to zero,
/// which makes the answer deterministic.
pub fn solve_integer(m: &IntMat, b: &IntVec) -> Option<IntVec> {
    assert_eq!(m.rows, b.len(), "right-hand side of mismatched dimension");
    // Column-reduce: row HNF of the transpose gives U * m^T = H, so with
    // V = U^T we have m * V = H^T = L, a column-echelon matrix.
    let (h, u) = hermite_normal_form(&m.transpose());
    let l = h.transpose(); // rows x cols, column echelon
    let v = u.transpose();
    let mut y = vec![BigInt::zero(); m.cols];
    for i in 0..m.cols.min(m.rows) {
        // Pivot row of column i: first nonzero entry.
        let Some(p) = (0..m.rows).find(|&r| !l.at(r, i).is_zero()) else {
            break; // all later columns are zero too
        };
        let mut rhs = b[p].clone();
        for (i2, yi) in y.iter().enumerate().take(i) {
            rhs -= l.at(p, i2) * yi;
        }
        let (q, rem) = rhs.div_rem(l.at(p, i));
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    let x = v.mul_vec(&IntVec(y));
    if m.mul_vec(&x) == *b {
        Some(x)
    } else {
        None
    }
}

/// An integer normal vector to the hyperplane spanned by `n-1` difference
/// vectors in dimension `n` (a generalized cross product, computed from
/// cofactor determinants). Returns `None` when the differences do not span a
/// hyperplane. The result is primitive; its sign is not specified.
pub fn hyperplane_normal(diffs: &[IntVec]) -> Option<IntVec> {
    let n = diffs.first().map_or(1, |v| v.len());
    assert!(
        diffs.len() + 1 == n || (n == 1 && diffs.is_empty()),
        "need exactly n-1 difference vectors in dimension n"
    );
    if n == 1 {
        return Some(IntVec::from_i64s(&[1]));
    }
    let d = IntMat::from_rows(diffs);
    let mut normal = Vec::with_capacity(n);
    let mut sign = BigInt::one();
    for skip in 0..n {
        let mut minor = IntMat::zeros(n - 1, n - 1);
        for r in 0..n - 1 {
            let mut cc = 0;
            for c in 0..n {
                if c == skip {
                    continue;
                }
                *minor.at_mut(r, cc) = d.at(r, c).clone();
                cc += 1;
            }
        }
        normal.push(&sign * minor.det());
        sign = -sign;
    }
    let v = IntVec(normal);
    if v.is_zero() {
        None
    } else {
        Some(primitive_vector(&v).expect("nonzero vector"))
    }
}

/// An affine lattice automorphism `x -> A x + t` with `A` unimodular.
/// These are exactly the maps preserving Z^n, so two lattice polytopes are
/// "the same" for every purpose in this crate when one is the image of the
/// other under such a map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineUnimodularMap {
    linear: IntMat,
    translation: IntVec,
}

impl AffineUnimodularMap {
    pub fn new(linear: IntMat, translation: IntVec) -> Result<Self> {
        if linear.nrows() != linear.ncols() {
            return Err(Error::input("linear part must be square"));
        }
        if linear.nrows() != translation.len() {
            return Err(Error::input("translation dimension mismatch"));
        }
        let det = linear.det();
        if !det.abs().is_one() {
            return Err(Error::input(format!(
                "linear part has determinant {det}, not ±1"
            )));
        }
        Ok(AffineUnimodularMap { linear, translation })
    }

    pub fn identity(n: usize) -> Self {
        AffineUnimodularMap {
            linear: IntMat::identity(n),
            translation: IntVec::zeros(n),
        }
    }

    /// Pure translation by `t`.
    pub fn translation_by(t: IntVec) -> Self {
        AffineUnimodularMap {
            linear: IntMat::identity(t.len()),
            translation: t,
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn linear(&self) -> &IntMat {
        &self.linear
    }

    pub fn translation(&self) -> &IntVec {
        &self.translation
    }

    pub fn apply(&self, v: &IntVec) -> IntVec {
        &self.linear.mul_vec(v) + &self.translation
    }

    /// The composite `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &AffineUnimodularMap) -> AffineUnimodularMap {
        AffineUnimodularMap {
            linear: self.linear.mul(&other.linear),
            translation: &self.linear.mul_vec(&other.translation) + &self.translation,
        }
    }

    pub fn inverse(&self) -> AffineUnimodularMap {
        let inv = self
            .linear
            .inverse_unimodular()
            .expect("linear part is unimodular by construction");
        let t = inv.mul_vec(&self.translation).neg();
        AffineUnimodularMap {
            linear: inv,
            translation: t,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::SplitMix64;

    fn random_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> IntMat {
        let mut m = IntMat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                *m.at_mut(r, c) = BigInt::from(rng.small(9));
            }
        }
        m
    }

    #[test]
    fn primitive_vector_divides_by_content() {
        let v = IntVec::from_i64s(&[4, -6]);
        assert_eq!(primitive_vector(&v).unwrap(), IntVec::from_i64s(&[2, -3]));
        let w = IntVec::from_i64s(&[0, 0, 5]);
        assert_eq!(
            primitive_vector(&w).unwrap(),
            IntVec::from_i64s(&[0, 0, 1])
        );
        // Already primitive vectors are fixed points.
        let p = IntVec::from_i64s(&[3, 5, 7]);
        assert_eq!(primitive_vector(&p).unwrap(), p);
        assert!(primitive_vector(&IntVec::zeros(3)).is_err());
    }

    #[test]
    fn primitive_vector_is_scaling_invariant() {
        let mut rng = SplitMix64(7);
        for _ in 0..100 {
            let v = IntVec::from_i64s(&[rng.small(20), rng.small(20), rng.small(20)]);
            if v.is_zero() {
                continue;
            }
            let p = primitive_vector(&v).unwrap();
            for c in 1..5i64 {
                let s = v.scaled(&BigInt::from(c));
                assert_eq!(primitive_vector(&s).unwrap(), p);
            }
        }
    }

    #[test]
    fn hermite_form_properties_on_random_matrices() {
        let mut rng = SplitMix64(42);
        for trial in 0..60 {
            let rows = 1 + (trial % 4);
            let cols = 1 + (trial % 5);
            let m = random_matrix(&mut rng, rows, cols);
            let (h, u) = hermite_normal_form(&m);
            assert_eq!(u.mul(&m), h, "U*M = H");
            assert!(u.det().abs().is_one(), "U unimodular");
            // Echelon with positive pivots and reduced entries above.
            let mut last_pivot_col: Option<usize> = None;
            for r in 0..rows {
                let pivot = (0..cols).find(|&c| !h.at(r, c).is_zero());
                if let Some(c) = pivot {
                    if let Some(pc) = last_pivot_col {
                        assert!(c > pc, "pivot columns strictly increase");
                    }
                    last_pivot_col = Some(c);
                    assert!(h.at(r, c).is_positive(), "pivots positive");
                    for r2 in 0..r {
                        assert!(
                            !h.at(r2, c).is_negative() && h.at(r2, c) < h.at(r, c),
                            "entries above pivot reduced"
                        );
                    }
                } else {
                    // Zero rows must come last.
                    for r2 in r..rows {
                        assert!((0..cols).all(|c| h.at(r2, c).is_zero()));
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn determinant_matches_hermite_pivots() {
        let mut rng = SplitMix64(99);
        for _ in 0..40 {
            let m = random_matrix(&mut rng, 3, 3);
            let (h, _) = hermite_normal_form(&m);
            let pivot_product: BigInt =
                (0..3).map(|i| h.at(i, i).clone()).product();
            assert_eq!(m.det().abs(), pivot_product.abs());
        }
        assert_eq!(IntMat::identity(4).det(), BigInt::one());
    }

    #[test]
    fn partial_basis_detects_saturation() {
        let yes = vec![IntVec::from_i64s(&[1, 0, 0]), IntVec::from_i64s(&[0, 1, 0])];
        assert!(is_partial_lattice_basis(&yes).unwrap());
        // Span is saturated even though the vectors are not unit vectors.
        let yes2 = vec![IntVec::from_i64s(&[1, 1, 0]), IntVec::from_i64s(&[0, 1, 1])];
        assert!(is_partial_lattice_basis(&yes2).unwrap());
        // Index-2 sublattice of its saturation.
        let no = vec![IntVec::from_i64s(&[2, 0, 0])];
        assert!(!is_partial_lattice_basis(&no).unwrap());
        let no2 = vec![IntVec::from_i64s(&[1, 1]), IntVec::from_i64s(&[1, -1])];
        assert!(!is_partial_lattice_basis(&no2).unwrap());
        // Linearly dependent vectors can never extend to a basis.
        let dep = vec![IntVec::from_i64s(&[1, 2]), IntVec::from_i64s(&[2, 4])];
        assert!(!is_partial_lattice_basis(&dep).unwrap());
        // Too many vectors is a caller error, not "false".
        let many = vec![
            IntVec::from_i64s(&[1, 0]),
            IntVec::from_i64s(&[0, 1]),
            IntVec::from_i64s(&[1, 1]),
        ];
        assert!(is_partial_lattice_basis(&many).is_err());
        assert!(is_partial_lattice_basis(&[]).unwrap());
    }

    #[test]
    fn integer_solver_finds_solutions_and_rejects_impossible_systems() {
        // 2x2 invertible over Q but not over Z: solvable only for even sums.
        let m = IntMat::from_rows(&[IntVec::from_i64s(&[1, 1]), IntVec::from_i64s(&[1, -1])]);
        let b = IntVec::from_i64s(&[2, 0]);
        let x = solve_integer(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(solve_integer(&m, &IntVec::from_i64s(&[1, 0])).is_none());

        // Underdetermined: pick any integer solution, verified exactly.
        let m2 = IntMat::from_rows(&[IntVec::from_i64s(&[2, 3, 5])]);
        let b2 = IntVec::from_i64s(&[1]);
        let x2 = solve_integer(&m2, &b2).unwrap();
        assert_eq!(m2.mul_vec(&x2), b2);

        // Inconsistent overdetermined system.
        let m3 = IntMat::from_rows(&[IntVec::from_i64s(&[1, 0]), IntVec::from_i64s(&[1, 0])]);
        assert!(solve_integer(&m3, &IntVec::from_i64s(&[0, 1])).is_none());
    }

    #[test]
    fn hyperplane_normal_is_orthogonal_and_primitive() {
        let diffs = vec![IntVec::from_i64s(&[1, 0, 2]), IntVec::from_i64s(&[0, 1, 2])];
        let n = hyperplane_normal(&diffs).unwrap();
        for d in &diffs {
            assert!(n.dot(d).is_zero());
        }
        assert!(n.content().is_one());
        // Degenerate input spans only a line.
        let bad = vec![IntVec::from_i64s(&[1, 2, 3]), IntVec::from_i64s(&[2, 4, 6])];
        assert!(hyperplane_normal(&bad).is_none());
    }

    #[test]
    fn affine_maps_compose_invert_and_roundtrip() {
        let a = AffineUnimodularMap::new(
            IntMat::from_rows(&[IntVec::from_i64s(&[1, 2]), IntVec::from_i64s(&[0, 1])]),
            IntVec::from_i64s(&[5, -3]),
        )
        .unwrap();
        let b = AffineUnimodularMap::new(
            IntMat::from_rows(&[IntVec::from_i64s(&[0, -1]), IntVec::from_i64s(&[1, 0])]),
            IntVec::from_i64s(&[1, 1]),
        )
        .unwrap();
        let v = IntVec::from_i64s(&[2, 7]);
        assert_eq!(a.compose(&b).apply(&v), a.apply(&b.apply(&v)));
        let inv = a.inverse();
        assert_eq!(inv.apply(&a.apply(&v)), v);
        assert_eq!(a.apply(&inv.apply(&v)), v);
        // Non-unimodular linear part is rejected.
        assert!(AffineUnimodularMap::new(
            IntMat::from_rows(&[IntVec::from_i64s(&[2, 0]), IntVec::from_i64s(&[0, 1])]),
            IntVec::zeros(2),
        )
        .is_err());
    }

    #[test]
    fn unimodular_inverse_roundtrips_on_random_products_of_elementary_matrices() {
        let mut rng = SplitMix64(2024);
        for _ in 0..30 {
            // Build a random unimodular matrix as a product of shears.
            let n = 3;
            let mut m = IntMat::identity(n);
            for _ in 0..6 {
                let i = (rng.next() % n as u64) as usize;
                let mut j = (rng.next() % n as u64) as usize;
                if i == j {
                    j = (j + 1) % n;
                }
                let mut shear = IntMat::identity(n);
                *shear.at_mut(i, j) = BigInt::from(rng.small(3));
                m = m.mul(&shear);
            }
            assert!(m.det().abs().is_one());
            let inv = m.inverse_unimodular().unwrap();
            assert!(m.mul(&inv).is_identity());
            assert!(inv.mul(&m).is_identity());
        }
    }
}
