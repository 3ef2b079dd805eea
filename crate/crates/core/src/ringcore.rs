//! Finite unital rings given by structure constants over `Z_m`.
//!
//! A ring of rank `k` has additive group `Z_m^k` with a fixed basis
//! `b_0..b_{k-1}`; multiplication is the bilinear extension of the table
//! `b_i * b_j = sum_l c[i][j][l] b_l`. Elements are coordinate vectors.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::RingError;
use crate::zmlinalg::{kernel, MatrixZm, Modulus, SolutionModule};

/// Default bound on the number of ring elements any enumeration may visit.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1000;

/// Coordinates of a ring element in the ring's additive basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RingElement(Vec<u64>);

impl RingElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub(crate) fn from_raw(coords: Vec<u64>) -> Self {
        RingElement(coords)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    modulus: Modulus,
    rank: usize,
    /// `consts[(i * rank + j) * rank + l]` is coordinate `l` of `b_i * b_j`.
    consts: Vec<u64>,
    unity: Vec<u64>,
    label: String,
}

/// Built-in ring families over `Z_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingSpec {
    Zm,
    /// Full `n x n` matrices.
    Mat(usize),
    /// Upper triangular `n x n` matrices.
    UpperTriangular(usize),
    Product(Box<RingSpec>, Box<RingSpec>),
}

impl FiniteRing {
    /// Validates structure constants and unity; see [`RingError`] for the
    /// failure witnesses.
    pub fn new(
        modulus: Modulus,
        rank: usize,
        struct_consts: Vec<Vec<Vec<u64>>>,
        unity: Vec<u64>,
        label: impl Into<String>,
    ) -> Result<Self, RingError> {
        if struct_consts.len() != rank {
            return Err(RingError::Shape(format!(
                "expected {rank} rows of products, got {}",
                struct_consts.len()
            )));
        }
        let mut consts = Vec::with_capacity(rank * rank * rank);
        for (i, row) in struct_consts.iter().enumerate() {
            if row.len() != rank {
                return Err(RingError::Shape(format!(
                    "row {i} has {} products, expected {rank}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != rank {
                    return Err(RingError::Shape(format!(
                        "product ({i}, {j}) has {} coordinates, expected {rank}",
                        v.len()
                    )));
                }
                consts.extend(v.iter().map(|&x| modulus.reduce(x)));
            }
        }
        Self::from_flat(modulus, rank, consts, unity, label)
    }

    pub(crate) fn from_flat(
        modulus: Modulus,
        rank: usize,
        consts: Vec<u64>,
        unity: Vec<u64>,
        label: impl Into<String>,
    ) -> Result<Self, RingError> {
        if unity.len() != rank {
            return Err(RingError::RankMismatch {
                expected: rank,
                found: unity.len(),
            });
        }
        let unity = unity.into_iter().map(|x| modulus.reduce(x)).collect();
        let ring = FiniteRing {
            modulus,
            rank,
            consts,
            unity,
            label: label.into(),
        };
        ring.validate()?;
        Ok(ring)
    }

    fn validate(&self) -> Result<(), RingError> {
        let k = self.rank;
        for i in 0..k {
            let b = self.basis(i);
            if self.mul(&self.one(), &b) != b || self.mul(&b, &self.one()) != b {
                return Err(RingError::NoUnity(i));
            }
        }
        for i in 0..k {
            for j in 0..k {
                let ij = self.basis_product(i, j);
                for l in 0..k {
                    let lhs = self.mul(&ij, &self.basis(l));
                    let rhs = self.mul(&self.basis(i), &self.basis_product(j, l));
                    if lhs != rhs {
                        return Err(RingError::NotAssociative(i, j, l));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn builtin(spec: &RingSpec, modulus: Modulus) -> Result<Self, RingError> {
        match spec {
            RingSpec::Zm => Self::new(modulus, 1, vec![vec![vec![1]]], vec![1], format!("Z_{modulus}")),
            RingSpec::Mat(n) => Self::matrix_ring(modulus, *n, false),
            RingSpec::UpperTriangular(n) => Self::matrix_ring(modulus, *n, true),
            RingSpec::Product(a, b) => {
                let a = Self::builtin(a, modulus)?;
                let b = Self::builtin(b, modulus)?;
                Self::product(&a, &b)
            }
        }
    }

    fn matrix_ring(modulus: Modulus, n: usize, upper: bool) -> Result<Self, RingError> {
        if n == 0 {
            return Err(RingError::Shape("matrix size must be at least 1".into()));
        }
        let units: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !upper || i <= j)
            .collect();
        let k = units.len();
        let index = |i: usize, j: usize| units.iter().position(|&u| u == (i, j));
        let mut consts = vec![0u64; k * k * k];
        for (a, &(i, j)) in units.iter().enumerate() {
            for (b, &(p, q)) in units.iter().enumerate() {
                // e_ij e_pq = [j == p] e_iq
                if j == p {
                    let l = index(i, q).expect("closed under products");
                    consts[(a * k + b) * k + l] = 1;
                }
            }
        }
        let mut unity = vec![0u64; k];
        for i in 0..n {
            unity[index(i, i).unwrap()] = 1;
        }
        let label = if upper {
            format!("UT{n}(Z_{modulus})")
        } else {
            format!("Mat{n}(Z_{modulus})")
        };
        Self::from_flat(modulus, k, consts, unity, label)
    }

    /// Direct product; basis of `a` followed by basis of `b`.
    pub fn product(a: &FiniteRing, b: &FiniteRing) -> Result<Self, RingError> {
        if a.modulus != b.modulus {
            return Err(RingError::ModulusMismatch(a.modulus.get(), b.modulus.get()));
        }
        let (ka, kb) = (a.rank, b.rank);
        let k = ka + kb;
        let mut consts = vec![0u64; k * k * k];
        for i in 0..ka {
            for j in 0..ka {
                for l in 0..ka {
                    consts[(i * k + j) * k + l] = a.consts[(i * ka + j) * ka + l];
                }
            }
        }
        for i in 0..kb {
            for j in 0..kb {
                for l in 0..kb {
                    consts[((ka + i) * k + ka + j) * k + ka + l] = b.consts[(i * kb + j) * kb + l];
                }
            }
        }
        let mut unity = a.unity.clone();
        unity.extend_from_slice(&b.unity);
        Self::from_flat(a.modulus, k, consts, unity, format!("{} x {}", a.label, b.label))
    }

    /// The same ring in a new basis: column `i` of `change` holds the old
    /// coordinates of the new basis element `i`.
    pub fn rebase(&self, change: &MatrixZm) -> Result<Self, RingError> {
        let k = self.rank;
        let inv = change
            .inverse()
            .ok_or_else(|| RingError::Shape("change of basis is not invertible".into()))?;
        let new_basis: Vec<RingElement> = (0..k)
            .map(|i| RingElement((0..k).map(|r| change.get(r, i)).collect()))
            .collect();
        let mut consts = Vec::with_capacity(k * k * k);
        for a in &new_basis {
            for b in &new_basis {
                consts.extend(inv.mul_vec(self.mul(a, b).coords()));
            }
        }
        let unity = inv.mul_vec(&self.unity);
        Self::from_flat(self.modulus, k, consts, unity, format!("{}'", self.label))
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `b_i * b_j` in coordinates, as a nested table.
    pub fn struct_consts(&self) -> Vec<Vec<Vec<u64>>> {
        let k = self.rank;
        (0..k)
            .map(|i| (0..k).map(|j| self.basis_product(i, j).0).collect())
            .collect()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.modulus.get()).pow(self.rank as u32)
    }

    /// Ring order if it does not exceed `bound`.
    pub fn order_within(&self, bound: u64) -> Result<u64, RingError> {
        match u64::try_from(self.order()) {
            Ok(n) if n <= bound => Ok(n),
            _ => Err(RingError::EnumerationBoundExceeded {
                order: self.order().to_string(),
                bound,
            }),
        }
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<RingElement, RingError> {
        if coords.len() != self.rank {
            return Err(RingError::RankMismatch {
                expected: self.rank,
                found: coords.len(),
            });
        }
        Ok(RingElement(
            coords.into_iter().map(|x| self.modulus.reduce(x)).collect(),
        ))
    }

    pub fn zero(&self) -> RingElement {
        RingElement(vec![0; self.rank])
    }

    pub fn one(&self) -> RingElement {
        RingElement(self.unity.clone())
    }

    pub fn basis(&self, i: usize) -> RingElement {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        RingElement(v)
    }

    pub fn basis_elements(&self) -> Vec<RingElement> {
        (0..self.rank).map(|i| self.basis(i)).collect()
    }

    fn basis_product(&self, i: usize, j: usize) -> RingElement {
        let k = self.rank;
        let start = (i * k + j) * k;
        RingElement(self.consts[start..start + k].to_vec())
    }

    #[inline]
    fn check(&self, a: &RingElement) {
        assert_eq!(a.0.len(), self.rank, "element does not belong to ring {}", self.label);
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.check(a);
        self.check(b);
        let m = self.modulus;
        RingElement(a.0.iter().zip(&b.0).map(|(&x, &y)| m.add(x, y)).collect())
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.check(a);
        self.check(b);
        let m = self.modulus;
        RingElement(a.0.iter().zip(&b.0).map(|(&x, &y)| m.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        self.check(a);
        RingElement(a.0.iter().map(|&x| self.modulus.neg(x)).collect())
    }

    pub fn scale(&self, c: u64, a: &RingElement) -> RingElement {
        self.check(a);
        let m = self.modulus;
        let c = m.reduce(c);
        RingElement(a.0.iter().map(|&x| m.mul(c, x)).collect())
    }

    /// Sum of several elements.
    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a RingElement>) -> RingElement {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.check(a);
        self.check(b);
        let k = self.rank;
        let m = self.modulus;
        let mut out = vec![0u64; k];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = m.mul(x, y);
                let start = (i * k + j) * k;
                for (l, o) in out.iter_mut().enumerate() {
                    let c = self.consts[start + l];
                    if c != 0 {
                        *o = m.add(*o, m.mul(xy, c));
                    }
                }
            }
        }
        RingElement(out)
    }

    /// Product of a sequence, left to right.
    pub fn mul_all(&self, items: &[&RingElement]) -> RingElement {
        items.iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    /// Checked multiplication reporting elements from another ring.
    pub fn checked_mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        for x in [a, b] {
            if x.0.len() != self.rank {
                return Err(RingError::RankMismatch {
                    expected: self.rank,
                    found: x.0.len(),
                });
            }
        }
        Ok(self.mul(a, b))
    }

    /// Matrix of `x -> a x` (column `j` is `a b_j`).
    pub fn left_mult_matrix(&self, a: &RingElement) -> MatrixZm {
        self.mult_matrix(|b| self.mul(a, b))
    }

    /// Matrix of `x -> x a`.
    pub fn right_mult_matrix(&self, a: &RingElement) -> MatrixZm {
        self.mult_matrix(|b| self.mul(b, a))
    }

    fn mult_matrix(&self, f: impl Fn(&RingElement) -> RingElement) -> MatrixZm {
        let k = self.rank;
        let mut out = MatrixZm::zeros(self.modulus, k, k);
        for j in 0..k {
            let col = f(&self.basis(j));
            for i in 0..k {
                out.set(i, j, col.0[i]);
            }
        }
        out
    }

    /// All elements in lexicographic order of coordinates.
    pub fn elements(&self, bound: u64) -> Result<Vec<RingElement>, RingError> {
        let n = self.order_within(bound)? as usize;
        let m = self.modulus.get();
        let k = self.rank;
        let mut out = Vec::with_capacity(n);
        let mut cur = vec![0u64; k];
        for _ in 0..n {
            out.push(RingElement(cur.clone()));
            for pos in (0..k).rev() {
                cur[pos] += 1;
                if cur[pos] < m {
                    break;
                }
                cur[pos] = 0;
            }
        }
        Ok(out)
    }

    pub fn commutes(&self, a: &RingElement, b: &RingElement) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_central(&self, c: &RingElement) -> bool {
        (0..self.rank).all(|i| self.commutes(c, &self.basis(i)))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.rank).all(|i| (0..self.rank).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn is_idempotent(&self, e: &RingElement) -> bool {
        &self.mul(e, e) == e
    }

    /// The centre `Z(R)` as a module of coordinate vectors.
    pub fn center(&self) -> SolutionModule {
        let k = self.rank;
        // column j, row (i, l): coordinate l of b_j b_i - b_i b_j
        let mut a = MatrixZm::zeros(self.modulus, k * k, k);
        for i in 0..k {
            for j in 0..k {
                let d = self.sub(&self.basis_product(j, i), &self.basis_product(i, j));
                for l in 0..k {
                    a.set(i * k + l, j, d.0[l]);
                }
            }
        }
        kernel(&a)
    }

    /// All pairs `(X, Y)` with `XY = YX = 0`, in lexicographic order.
    pub fn zero_product_pairs(&self, bound: u64) -> Result<Vec<(RingElement, RingElement)>, RingError> {
        let elems = self.elements(bound)?;
        let mut out = Vec::new();
        for x in &elems {
            let left = self.left_mult_matrix(x);
            let right = self.right_mult_matrix(x);
            for y in &elems {
                if left.mul_vec(&y.0).iter().all(|&c| c == 0) && right.mul_vec(&y.0).iter().all(|&c| c == 0) {
                    out.push((x.clone(), y.clone()));
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {} over Z_{})", self.label, self.rank, self.modulus)
    }
}
