//! Exact linear algebra over `Z/mZ` for odd, possibly composite `m`.
//!
//! Everything that the condition solver produces is a submodule of `Z_m^n`,
//! and submodules are always stored through their Howell normal form. Since
//! the Howell form of a row span is unique, module equality is plain matrix
//! equality.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::LinalgError;

/// Largest accepted modulus. Residues are kept in `u64` and products of two
/// residues must not overflow.
pub const MAX_MODULUS: u64 = 1 << 31;

/// An odd modulus `m >= 3`.
///
/// Oddness is what makes every `Z_m`-module 2-torsion free, which the whole
/// crate relies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self, LinalgError> {
        if m.is_multiple_of(2) {
            return Err(LinalgError::EvenModulus(m));
        }
        if !(3..MAX_MODULUS).contains(&m) {
            return Err(LinalgError::ModulusOutOfRange(m));
        }
        Ok(Modulus(m))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        x % self.0
    }

    /// Reduces a signed integer into `[0, m)`.
    #[inline]
    pub fn reduce_i64(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.0
    }

    /// Additive order of a residue: the least `t > 0` with `t * a = 0`.
    pub fn additive_order(self, a: u64) -> u64 {
        self.0 / gcd(a % self.0, self.0)
    }

    /// Inverse of `a` if it is a unit.
    pub fn inverse(self, a: u64) -> Option<u64> {
        let (g, s, _) = ext_gcd(a as i64, self.0 as i64);
        (g == 1).then(|| self.reduce_i64(s))
    }

    /// A unit `u` with `u * a = gcd(a, m) (mod m)`.
    fn normalizing_unit(self, a: u64) -> u64 {
        let m = self.0;
        let g = gcd(a, m);
        if g == m {
            return 1;
        }
        let sub = m / g;
        // a / g is a unit modulo m / g; lift its inverse to a unit modulo m.
        let base = Modulus(sub.max(1)).inverse_any((a / g) % sub).unwrap_or(1);
        let mut u = base;
        while gcd(u, m) != 1 {
            u += sub;
        }
        u % m
    }

    /// Like [`Modulus::inverse`] but usable for the auxiliary moduli that
    /// appear while normalizing pivots (which may be 1 or even).
    fn inverse_any(self, a: u64) -> Option<u64> {
        if self.0 == 1 {
            return Some(0);
        }
        let (g, s, _) = ext_gcd(a as i64, self.0 as i64);
        (g == 1).then(|| s.rem_euclid(self.0 as i64) as u64)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u64> for Modulus {
    type Error = LinalgError;

    fn try_from(m: u64) -> Result<Self, Self::Error> {
        Modulus::new(m)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.0
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Dense row-major matrix with entries reduced modulo `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixZm {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl MatrixZm {
    pub fn zeros(modulus: Modulus, rows: usize, cols: usize) -> Self {
        MatrixZm {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        let mut id = Self::zeros(modulus, n, n);
        for i in 0..n {
            id.set(i, i, 1);
        }
        id
    }

    /// Builds a matrix from rows, reducing every entry.
    pub fn from_rows(modulus: Modulus, cols: usize, rows: &[Vec<u64>]) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| modulus.reduce(x)));
        }
        Ok(MatrixZm {
            modulus,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_flat(modulus: Modulus, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        let data = data.into_iter().map(|x| modulus.reduce(x)).collect();
        Ok(MatrixZm {
            modulus,
            rows,
            cols,
            data,
        })
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = self.modulus.reduce(v);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_flat(&self) -> &[u64] {
        &self.data
    }

    pub fn transpose(&self) -> MatrixZm {
        let mut t = MatrixZm::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols, "matrix-vector dimension mismatch");
        let m = self.modulus;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| m.add(acc, m.mul(a, b)))
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &MatrixZm) -> MatrixZm {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let m = self.modulus;
        let mut out = MatrixZm::zeros(m, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = m.add(out.data[idx], m.mul(a, other.get(l, j)));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &MatrixZm) -> MatrixZm {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        MatrixZm {
            modulus: self.modulus,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

impl fmt::Display for MatrixZm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

fn combine_rows(m: Modulus, rows: &mut [Vec<u64>], r: usize, i: usize, j: usize) {
    let a = rows[r][j] as i64;
    let b = rows[i][j] as i64;
    let (g, s, t) = ext_gcd(a, b);
    // [s t; -b/g a/g] has determinant 1 over Z.
    let (s, t) = (m.reduce_i64(s), m.reduce_i64(t));
    let u = m.reduce_i64(-b / g);
    let v = m.reduce_i64(a / g);
    for c in 0..rows[r].len() {
        let x = rows[r][c];
        let y = rows[i][c];
        rows[r][c] = m.add(m.mul(s, x), m.mul(t, y));
        rows[i][c] = m.add(m.mul(u, x), m.mul(v, y));
    }
}

fn howell_rows(m: Modulus, cols: usize, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    rows.retain(|row| row.iter().any(|&x| x != 0));
    let mut r = 0;
    for j in 0..cols {
        let Some(first) = (r..rows.len()).find(|&i| rows[i][j] != 0) else {
            continue;
        };
        rows.swap(r, first);
        for i in r + 1..rows.len() {
            if rows[i][j] != 0 {
                combine_rows(m, &mut rows, r, i, j);
            }
        }
        let u = m.normalizing_unit(rows[r][j]);
        if u != 1 {
            for x in rows[r].iter_mut() {
                *x = m.mul(*x, u);
            }
        }
        let pivot = rows[r][j];
        for i in 0..r {
            let q = rows[i][j] / pivot;
            if q != 0 {
                for c in j..cols {
                    rows[i][c] = m.sub(rows[i][c], m.mul(q, rows[r][c]));
                }
            }
        }
        // The annihilator multiple of the pivot row keeps the span closed
        // under "vectors with a zero prefix".
        let ann = m.get() / pivot;
        if ann != m.get() {
            let extra: Vec<u64> = rows[r].iter().map(|&x| m.mul(x, ann)).collect();
            if extra.iter().any(|&x| x != 0) {
                rows.push(extra);
            }
        }
        r += 1;
    }
    rows.truncate(r);
    debug_assert!(rows.iter().all(|row| row.iter().any(|&x| x != 0)));
    rows
}

/// Howell normal form of the row span of `a`, with zero rows removed.
pub fn howell_form(a: &MatrixZm) -> MatrixZm {
    let rows = howell_rows(a.modulus, a.cols, a.row_vecs());
    MatrixZm::from_rows(a.modulus, a.cols, &rows).expect("row lengths are preserved")
}

fn pivot_col(row: &[u64]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// Reduces `x` by a Howell basis; returns the remainder (zero iff member).
fn reduce_by(h: &MatrixZm, x: &mut [u64]) {
    let m = h.modulus;
    for i in 0..h.rows {
        let row = h.row(i);
        let j = pivot_col(row).expect("Howell rows are nonzero");
        let p = row[j];
        if !x[j].is_multiple_of(p) {
            // cannot clear this coordinate; later rows have zero here
            return;
        }
        let q = x[j] / p;
        if q != 0 {
            for c in j..x.len() {
                x[c] = m.sub(x[c], m.mul(q, row[c]));
            }
        }
    }
}

/// A submodule of `Z_m^n` stored by its Howell basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SolutionModule {
    ambient_dim: usize,
    generators: MatrixZm,
}

impl SolutionModule {
    /// The module spanned by the rows of `a`.
    pub fn span(a: &MatrixZm) -> Self {
        SolutionModule {
            ambient_dim: a.cols,
            generators: howell_form(a),
        }
    }

    pub fn span_of(modulus: Modulus, ambient_dim: usize, vectors: &[Vec<u64>]) -> Result<Self, LinalgError> {
        Ok(Self::span(&MatrixZm::from_rows(modulus, ambient_dim, vectors)?))
    }

    pub fn zero(modulus: Modulus, ambient_dim: usize) -> Self {
        SolutionModule {
            ambient_dim,
            generators: MatrixZm::zeros(modulus, 0, ambient_dim),
        }
    }

    pub fn full(modulus: Modulus, ambient_dim: usize) -> Self {
        SolutionModule {
            ambient_dim,
            generators: MatrixZm::identity(modulus, ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn modulus(&self) -> Modulus {
        self.generators.modulus
    }

    /// Howell basis; canonical for the module.
    pub fn generators(&self) -> &MatrixZm {
        &self.generators
    }

    pub fn generator_vecs(&self) -> Vec<Vec<u64>> {
        self.generators.row_vecs()
    }

    /// Number of elements: the product of the additive orders of the pivots.
    pub fn cardinality(&self) -> BigUint {
        let m = self.modulus();
        (0..self.generators.rows)
            .map(|i| {
                let row = self.generators.row(i);
                let p = row[pivot_col(row).expect("nonzero row")];
                BigUint::from(m.additive_order(p))
            })
            .product()
    }

    pub fn cardinality_u64(&self) -> Option<u64> {
        u64::try_from(self.cardinality()).ok()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.rows == 0
    }

    pub fn contains(&self, x: &[u64]) -> Result<bool, LinalgError> {
        if x.len() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: x.len(),
            });
        }
        let m = self.modulus();
        let mut v: Vec<u64> = x.iter().map(|&a| m.reduce(a)).collect();
        reduce_by(&self.generators, &mut v);
        Ok(v.iter().all(|&a| a == 0))
    }

    pub fn is_subset_of(&self, other: &SolutionModule) -> Result<bool, LinalgError> {
        module_subset(self, other)
    }

    /// Module sum: the span of both generator sets.
    pub fn sum(&self, other: &SolutionModule) -> Result<SolutionModule, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(SolutionModule::span(&self.generators.vstack(&other.generators)))
    }

    /// Lists every element, in no particular order. Refuses above `limit`.
    pub fn enumerate(&self, limit: u64) -> Result<Vec<Vec<u64>>, LinalgError> {
        let card = self.cardinality_u64().filter(|&c| c <= limit);
        if card.is_none() {
            return Err(LinalgError::TooLargeToEnumerate(limit));
        }
        let m = self.modulus();
        let mut out = vec![vec![0u64; self.ambient_dim]];
        for i in 0..self.generators.rows {
            let row = self.generators.row(i);
            let order = m.additive_order(row[pivot_col(row).unwrap()]);
            let mut next = Vec::with_capacity(out.len() * order as usize);
            for base in &out {
                for t in 0..order {
                    next.push(base.iter().zip(row).map(|(&b, &r)| m.add(b, m.mul(t, r))).collect());
                }
            }
            out = next;
        }
        Ok(out)
    }
}

impl MatrixZm {
    /// Inverse of a square matrix, or `None` if it is singular over `Z_m`.
    pub fn inverse(&self) -> Option<MatrixZm> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|l| u64::from(l == i)));
                row
            })
            .collect();
        let h = howell_rows(self.modulus, 2 * n, rows);
        // [G | I] reduces to [I | G^-1] exactly when G is invertible.
        if h.len() != n || (0..n).any(|i| (0..n).any(|j| h[i][j] != u64::from(i == j))) {
            return None;
        }
        let inv: Vec<Vec<u64>> = h.into_iter().map(|row| row[n..].to_vec()).collect();
        Some(MatrixZm::from_rows(self.modulus, n, &inv).expect("square"))
    }
}

/// Kernel `{x : a x = 0 (mod m)}` of a matrix, as a canonical module.
pub fn kernel(a: &MatrixZm) -> SolutionModule {
    let m = a.modulus;
    let (r, n) = (a.rows, a.cols);
    // Rows of [A^T | I] span {(Ax, x)}; the Howell property isolates the part
    // with a zero A-prefix.
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row = Vec::with_capacity(r + n);
            row.extend((0..r).map(|l| a.get(l, i)));
            row.extend((0..n).map(|l| u64::from(l == i)));
            row
        })
        .collect();
    let h = howell_rows(m, r + n, rows);
    let tail: Vec<Vec<u64>> = h
        .into_iter()
        .filter(|row| row[..r].iter().all(|&x| x == 0))
        .map(|row| row[r..].to_vec())
        .collect();
    SolutionModule::span(&MatrixZm::from_rows(m, n, &tail).expect("consistent widths"))
}

pub fn member(x: &[u64], s: &SolutionModule) -> Result<bool, LinalgError> {
    s.contains(x)
}

pub fn module_subset(s1: &SolutionModule, s2: &SolutionModule) -> Result<bool, LinalgError> {
    if s1.ambient_dim != s2.ambient_dim {
        return Err(LinalgError::DimensionMismatch {
            expected: s2.ambient_dim,
            found: s1.ambient_dim,
        });
    }
    for i in 0..s1.generators.rows {
        if !s2.contains(s1.generators.row(i))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image of `s` under the projection onto `coords` (in the given order).
pub fn module_project(s: &SolutionModule, coords: &[usize]) -> Result<SolutionModule, LinalgError> {
    if let Some(&bad) = coords.iter().find(|&&c| c >= s.ambient_dim) {
        return Err(LinalgError::IndexOutOfRange {
            index: bad,
            dim: s.ambient_dim,
        });
    }
    let rows: Vec<Vec<u64>> = s
        .generator_vecs()
        .into_iter()
        .map(|row| coords.iter().map(|&c| row[c]).collect())
        .collect();
    Ok(SolutionModule::span(&MatrixZm::from_rows(
        s.modulus(),
        coords.len(),
        &rows,
    )?))
}

/// Whether `a x = b` has a solution, decided by column-span membership.
pub fn is_solvable(a: &MatrixZm, b: &[u64]) -> Result<bool, LinalgError> {
    if b.len() != a.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    SolutionModule::span(&a.transpose()).contains(b)
}

/// Accumulates constraint rows while keeping only a Howell basis of them.
///
/// Rows are buffered and folded into the basis in batches; rows already in
/// the span are dropped on arrival.
#[derive(Clone, Debug)]
pub struct RowAccumulator {
    modulus: Modulus,
    cols: usize,
    basis: SolutionModule,
    pending: Vec<Vec<u64>>,
}

impl RowAccumulator {
    pub fn new(modulus: Modulus, cols: usize) -> Self {
        RowAccumulator {
            modulus,
            cols,
            basis: SolutionModule::zero(modulus, cols),
            pending: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<u64>) {
        debug_assert_eq!(row.len(), self.cols);
        if row.iter().all(|&x| x == 0) || self.basis.contains(&row).unwrap_or(false) {
            return;
        }
        self.pending.push(row);
        if self.pending.len() >= self.cols.max(8) {
            self.flush();
        }
    }

    fn flush(&mut self) {
        if self.pending.is_empty() {
            return;
        }
        let mut rows = self.basis.generator_vecs();
        rows.append(&mut self.pending);
        self.basis = SolutionModule::span_of(self.modulus, self.cols, &rows).expect("consistent widths");
    }

    pub fn merge(&mut self, other: RowAccumulator) {
        let other = other.finish();
        for row in other.generators().row_vecs() {
            self.pending.push(row);
        }
        self.flush();
    }

    /// The Howell basis of every row pushed so far.
    pub fn finish(mut self) -> SolutionModule {
        self.flush();
        self.basis
    }
}
