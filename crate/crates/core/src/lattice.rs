//! Exact integer linear algebra over the lattices `N` and `M`.
//!
//! Vectors and matrices carry arbitrary-precision entries. Matrices act on
//! column vectors; when a matrix is used as a list of lattice vectors the
//! vectors are its rows.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element of `ℤⁿ`, used both for `N` (rays, one-parameter subgroups)
/// and for `M` (characters, roots).
///
/// Ordering is lexicographic in the coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector {
            coords: vec![BigInt::zero(); rank],
        }
    }

    /// The `i`-th standard basis vector of `ℤ^rank`.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.coords[i] = BigInt::one();
        v
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticeVector {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Coordinates as machine integers, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(ToPrimitive::to_i64).collect()
    }

    /// gcd of the absolute values of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn pairing(&self, other: &LatticeVector) -> Result<BigInt> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(self.dot(other))
    }

    /// Unchecked pairing; panics in debug builds on rank mismatch.
    pub(crate) fn dot(&self, other: &LatticeVector) -> BigInt {
        debug_assert_eq!(self.rank(), other.rank());
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn primitive(&self) -> Result<LatticeVector> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(LatticeVector {
            coords: self.coords.iter().map(|c| c / &g).collect(),
        })
    }

    pub fn scaled(&self, k: &BigInt) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// `(self, other)` in `ℤ^{n+m}`.
    pub fn concat(&self, other: &LatticeVector) -> LatticeVector {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        LatticeVector { coords }
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigInt> {
        self.coords.iter()
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVector {
    fn from(coords: [i64; N]) -> Self {
        LatticeVector::from_i64s(&coords)
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(coords: Vec<i64>) -> Self {
        LatticeVector::from_i64s(&coords)
    }
}

impl Index<usize> for LatticeVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in vector sum");
        LatticeVector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in vector difference");
        LatticeVector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        -&self
    }
}

/// `⟨p, m⟩ = Σ pᵢ mᵢ`.
pub fn pairing(p: &LatticeVector, m: &LatticeVector) -> Result<BigInt> {
    p.pairing(m)
}

/// `v / gcd(|vᵢ|)`.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    v.primitive()
}

/// A rectangular integer matrix, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl LatticeMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Vec<BigInt>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "expected a {rows}x{cols} matrix"
            )));
        }
        Ok(LatticeMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        LatticeMatrix {
            rows,
            cols,
            entries: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    /// Matrix whose rows are the given vectors, each of length `cols`.
    pub fn from_rows(cols: usize, rows: &[LatticeVector]) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.rank() != cols) {
            return Err(Error::RankMismatch {
                left: cols,
                right: bad.rank(),
            });
        }
        Ok(LatticeMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().map(|r| r.coords().to_vec()).collect(),
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[LatticeVector]) -> Result<Self> {
        Ok(Self::from_rows(rows, cols)?.transpose())
    }

    pub fn from_i64_rows<const C: usize>(rows: &[[i64; C]]) -> Self {
        LatticeMatrix {
            rows: rows.len(),
            cols: C,
            entries: rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector::new(self.entries[i].clone())
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector::new(self.entries.iter().map(|r| r[j].clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<LatticeVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn transpose(&self) -> LatticeMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t.entries[j][i] = x.clone();
            }
        }
        t
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.rank(), "matrix/vector dimension mismatch");
        LatticeVector::new(
            self.entries
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(v.iter())
                        .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn checked_mul(&self, rhs: &LatticeMatrix) -> Result<LatticeMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i][j] += a * &rhs.entries[k][j];
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.det()?.abs().is_one())
    }

    pub fn rank(&self) -> usize {
        let (h, _) = self.hermite_normal_form();
        h.entries.iter().filter(|r| r.iter().any(|x| !x.is_zero())).count()
    }

    /// Row-style Hermite normal form `H = U·A` with `U` unimodular.
    ///
    /// `H` is in row echelon form with positive pivots, zeros below each
    /// pivot, and entries above each pivot reduced into `[0, pivot)`.
    pub fn hermite_normal_form(&self) -> (LatticeMatrix, LatticeMatrix) {
        let m = self.rows;
        let mut h = self.entries.clone();
        let mut u = Self::identity(m).entries;
        let mut r = 0;
        for c in 0..self.cols {
            if r == m {
                break;
            }
            loop {
                let pivot = (r..m)
                    .filter(|&i| !h[i][c].is_zero())
                    .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
                let Some(p) = pivot else { break };
                h.swap(r, p);
                u.swap(r, p);
                let mut cleared = true;
                for i in r + 1..m {
                    if h[i][c].is_zero() {
                        continue;
                    }
                    let q = h[i][c].div_floor(&h[r][c]);
                    sub_row_multiple(&mut h, i, r, &q);
                    sub_row_multiple(&mut u, i, r, &q);
                    if !h[i][c].is_zero() {
                        cleared = false;
                    }
                }
                if cleared {
                    break;
                }
            }
            if h[r][c].is_zero() {
                continue;
            }
            if h[r][c].is_negative() {
                negate_row(&mut h, r);
                negate_row(&mut u, r);
            }
            for i in 0..r {
                let q = h[i][c].div_floor(&h[r][c]);
                if !q.is_zero() {
                    sub_row_multiple(&mut h, i, r, &q);
                    sub_row_multiple(&mut u, i, r, &q);
                }
            }
            r += 1;
        }
        (
            LatticeMatrix {
                rows: m,
                cols: self.cols,
                entries: h,
            },
            LatticeMatrix {
                rows: m,
                cols: m,
                entries: u,
            },
        )
    }

    /// A basis of the integer kernel `{x ∈ ℤ^cols : A·x = 0}`.
    ///
    /// The returned vectors generate a saturated sublattice.
    pub fn kernel(&self) -> Vec<LatticeVector> {
        let (h, u) = self.transpose().hermite_normal_form();
        (0..h.rows)
            .filter(|&i| h.entries[i].iter().all(Zero::is_zero))
            .map(|i| u.row(i))
            .collect()
    }

    /// Exact inverse over `ℚ`, or `None` if singular.
    pub fn rational_inverse(&self) -> Result<Option<Vec<Vec<BigRational>>>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r: Vec<BigRational> =
                    row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
                r.extend((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                r
            })
            .collect();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(None);
            };
            a.swap(c, p);
            let inv = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x *= &inv;
            }
            for i in 0..n {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..2 * n {
                        let t = &a[c][j] * &f;
                        a[i][j] -= t;
                    }
                }
            }
        }
        Ok(Some(a.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Inverse of a unimodular matrix, or `None` when `|det| ≠ 1`.
    pub fn inverse_unimodular(&self) -> Result<Option<LatticeMatrix>> {
        if !self.is_unimodular()? {
            return Ok(None);
        }
        let inv = self
            .rational_inverse()?
            .expect("unimodular matrix is invertible");
        let entries = inv
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
            .collect();
        Ok(Some(LatticeMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }))
    }
}

impl Mul for &LatticeMatrix {
    type Output = LatticeMatrix;
    fn mul(self, rhs: &LatticeMatrix) -> LatticeMatrix {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Display for LatticeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn sub_row_multiple(a: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let (src, dst) = if source < target {
        let (lo, hi) = a.split_at_mut(target);
        (&lo[source], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(source);
        (&hi[0], &mut lo[target])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        *d -= q * s;
    }
}

fn negate_row(a: &mut [Vec<BigInt>], i: usize) {
    for x in a[i].iter_mut() {
        *x = -&*x;
    }
}

pub fn hermite_normal_form(a: &LatticeMatrix) -> (LatticeMatrix, LatticeMatrix) {
    a.hermite_normal_form()
}

pub fn is_unimodular(a: &LatticeMatrix) -> Result<bool> {
    a.is_unimodular()
}

/// Whether the rows of the given bases, taken together, form a basis of `ℤⁿ`.
pub fn sublattice_direct_sum(bases: &[LatticeMatrix], n: usize) -> bool {
    let vectors: Vec<LatticeVector> = bases.iter().flat_map(|b| b.row_vectors()).collect();
    if vectors.len() != n || vectors.iter().any(|v| v.rank() != n) {
        return false;
    }
    LatticeMatrix::from_rows(n, &vectors)
        .and_then(|m| m.is_unimodular())
        .unwrap_or(false)
}

/// gcd of the maximal minors of the matrix with the given rows.
///
/// Zero when the rows are linearly dependent; one exactly when they extend
/// to a basis of `ℤⁿ`.
pub fn maximal_minor_gcd(rank: usize, vectors: &[LatticeVector]) -> BigInt {
    let k = vectors.len();
    if k == 0 {
        return BigInt::one();
    }
    let a = LatticeMatrix::from_rows(rank, vectors).expect("vectors of equal rank");
    let (h, _) = a.transpose().hermite_normal_form();
    if k > rank {
        return BigInt::zero();
    }
    let top = LatticeMatrix {
        rows: k,
        cols: k,
        entries: h.entries[..k].to_vec(),
    };
    top.det().expect("square").abs()
}

/// Rank of the span of the given vectors.
pub fn span_rank(rank: usize, vectors: &[LatticeVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    LatticeMatrix::from_rows(rank, vectors)
        .expect("vectors of equal rank")
        .rank()
}

/// A basis of the saturated lattice `ℤⁿ ∩ span_ℝ(vectors)` together with
/// a complement, so that `basis ++ complement` is a basis of `ℤⁿ`.
pub fn adapted_basis(rank: usize, vectors: &[LatticeVector]) -> (Vec<LatticeVector>, Vec<LatticeVector>) {
    let orth = if vectors.is_empty() {
        (0..rank).map(|i| LatticeVector::unit(rank, i)).collect()
    } else {
        LatticeMatrix::from_rows(rank, vectors)
            .expect("vectors of equal rank")
            .kernel()
    };
    let k = orth.len();
    // U·Kᵀ = [I; 0] because the kernel lattice is saturated, so the first k
    // rows of U pair to the identity with the kernel and the rest span the
    // saturation of the input.
    let kt = LatticeMatrix::from_rows(rank, &orth)
        .expect("kernel vectors of equal rank")
        .transpose();
    let (_, u) = kt.hermite_normal_form();
    let rows = u.row_vectors();
    let complement = rows[..k].to_vec();
    let basis = rows[k..].to_vec();
    (basis, complement)
}

/// Basis of `ℤⁿ ∩ span_ℝ(vectors)`.
pub fn saturation_basis(rank: usize, vectors: &[LatticeVector]) -> Vec<LatticeVector> {
    adapted_basis(rank, vectors).0
}

/// Solve `Σ xᵢ bᵢ = target` over `ℚ` for linearly independent `bᵢ`.
pub fn solve_in_basis(basis: &[LatticeVector], target: &LatticeVector) -> Option<Vec<BigRational>> {
    let n = target.rank();
    let k = basis.len();
    // augmented n × (k+1) system
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(b[i].clone()))
                .collect();
            row.push(BigRational::from_integer(target[i].clone()));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(k);
    for c in 0..k {
        let p = (pivot_row..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(pivot_row, p);
        let inv = a[pivot_row][c].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != pivot_row && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=k {
                    let t = &a[pivot_row][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| a[r][k].clone()).collect())
}

/// Like [`solve_in_basis`] but requires integral coefficients.
pub fn integer_coordinates(basis: &[LatticeVector], target: &LatticeVector) -> Option<LatticeVector> {
    let x = solve_in_basis(basis, target)?;
    x.iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .map(LatticeVector::new)
}
