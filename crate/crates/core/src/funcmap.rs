//! Additive self-maps of a finite ring and the classical map predicates.
//!
//! Since the additive group is free over `Z_m`, an additive map is exactly a
//! `k x k` matrix whose column `j` is the image of basis element `j`. Every
//! identity below is additive in each argument separately, so checking it on
//! basis pairs decides it for all pairs.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::MapError;
use crate::ringcore::{FiniteRing, RingElement};
use crate::zmlinalg::{is_solvable, MatrixZm};

#[derive(Clone, Debug)]
pub struct AdditiveMap {
    ring: Arc<FiniteRing>,
    matrix: MatrixZm,
}

impl PartialEq for AdditiveMap {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.ring.label() == other.ring.label()
    }
}

impl Eq for AdditiveMap {}

/// On-disk form of a map: ring label, modulus, rank and the row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRecord {
    pub label: String,
    pub modulus: u64,
    pub k: usize,
    pub entries: Vec<u64>,
}

impl AdditiveMap {
    pub fn from_matrix(ring: Arc<FiniteRing>, matrix: MatrixZm) -> Result<Self, MapError> {
        let k = ring.rank();
        if matrix.rows() != k || matrix.cols() != k || matrix.modulus() != ring.modulus() {
            return Err(MapError::RingMismatch {
                expected: ring.label().to_string(),
                found: format!("{}x{} matrix mod {}", matrix.rows(), matrix.cols(), matrix.modulus()),
            });
        }
        Ok(AdditiveMap { ring, matrix })
    }

    /// Builds a map from its row-major entries (the solver's vector layout).
    pub fn from_vec(ring: Arc<FiniteRing>, entries: &[u64]) -> Result<Self, MapError> {
        let k = ring.rank();
        let matrix = MatrixZm::from_flat(ring.modulus(), k, k, entries.to_vec())?;
        Ok(AdditiveMap { ring, matrix })
    }

    /// Builds a map from the images of the basis elements.
    pub fn from_images(ring: Arc<FiniteRing>, images: &[RingElement]) -> Result<Self, MapError> {
        let k = ring.rank();
        let mut matrix = MatrixZm::zeros(ring.modulus(), k, k);
        if images.len() != k {
            return Err(MapError::Ring(crate::error::RingError::RankMismatch {
                expected: k,
                found: images.len(),
            }));
        }
        for (j, img) in images.iter().enumerate() {
            for i in 0..k {
                matrix.set(i, j, img.coords()[i]);
            }
        }
        Ok(AdditiveMap { ring, matrix })
    }

    pub fn from_fn(ring: Arc<FiniteRing>, f: impl Fn(&RingElement) -> RingElement) -> Self {
        let images: Vec<RingElement> = ring.basis_elements().iter().map(f).collect();
        Self::from_images(ring, &images).expect("one image per basis element")
    }

    pub fn from_record(ring: Arc<FiniteRing>, rec: &MapRecord) -> Result<Self, MapError> {
        if rec.modulus != ring.modulus().get() || rec.k != ring.rank() || rec.entries.len() != rec.k * rec.k {
            return Err(MapError::RingMismatch {
                expected: format!("{} (m={}, k={})", ring.label(), ring.modulus(), ring.rank()),
                found: format!(
                    "{} (m={}, k={}, {} entries)",
                    rec.label,
                    rec.modulus,
                    rec.k,
                    rec.entries.len()
                ),
            });
        }
        Self::from_vec(ring, &rec.entries)
    }

    pub fn to_record(&self) -> MapRecord {
        MapRecord {
            label: self.ring.label().to_string(),
            modulus: self.ring.modulus().get(),
            k: self.ring.rank(),
            entries: self.to_vec(),
        }
    }

    pub fn zero(ring: Arc<FiniteRing>) -> Self {
        let k = ring.rank();
        AdditiveMap {
            matrix: MatrixZm::zeros(ring.modulus(), k, k),
            ring,
        }
    }

    pub fn identity(ring: Arc<FiniteRing>) -> Self {
        AdditiveMap {
            matrix: MatrixZm::identity(ring.modulus(), ring.rank()),
            ring,
        }
    }

    /// `X -> c X`.
    pub fn left_mult(ring: Arc<FiniteRing>, c: &RingElement) -> Self {
        AdditiveMap {
            matrix: ring.left_mult_matrix(c),
            ring,
        }
    }

    /// `X -> X c`.
    pub fn right_mult(ring: Arc<FiniteRing>, c: &RingElement) -> Self {
        AdditiveMap {
            matrix: ring.right_mult_matrix(c),
            ring,
        }
    }

    /// `X -> W X - X W`.
    pub fn inner_derivation(ring: Arc<FiniteRing>, w: &RingElement) -> Self {
        let l = ring.left_mult_matrix(w);
        let r = ring.right_mult_matrix(w);
        let m = ring.modulus();
        let data = l
            .as_flat()
            .iter()
            .zip(r.as_flat())
            .map(|(&a, &b)| m.sub(a, b))
            .collect();
        let k = ring.rank();
        AdditiveMap {
            matrix: MatrixZm::from_flat(m, k, k, data).expect("square"),
            ring,
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn matrix(&self) -> &MatrixZm {
        &self.matrix
    }

    /// Row-major entries.
    pub fn to_vec(&self) -> Vec<u64> {
        self.matrix.as_flat().to_vec()
    }

    pub fn apply(&self, x: &RingElement) -> RingElement {
        assert_eq!(
            x.coords().len(),
            self.ring.rank(),
            "element does not belong to {}",
            self.ring.label()
        );
        RingElement::from_raw(self.matrix.mul_vec(x.coords()))
    }

    pub fn checked_apply(&self, x: &RingElement) -> Result<RingElement, MapError> {
        if x.coords().len() != self.ring.rank() {
            return Err(MapError::Ring(crate::error::RingError::RankMismatch {
                expected: self.ring.rank(),
                found: x.coords().len(),
            }));
        }
        Ok(self.apply(x))
    }

    fn zip(&self, other: &AdditiveMap, f: impl Fn(u64, u64) -> u64) -> AdditiveMap {
        assert_eq!(self.ring.rank(), other.ring.rank(), "maps on different rings");
        let k = self.ring.rank();
        let data = self
            .matrix
            .as_flat()
            .iter()
            .zip(other.matrix.as_flat())
            .map(|(&a, &b)| f(a, b))
            .collect();
        AdditiveMap {
            ring: self.ring.clone(),
            matrix: MatrixZm::from_flat(self.ring.modulus(), k, k, data).expect("square"),
        }
    }

    pub fn add(&self, other: &AdditiveMap) -> AdditiveMap {
        let m = self.ring.modulus();
        self.zip(other, |a, b| m.add(a, b))
    }

    pub fn sub(&self, other: &AdditiveMap) -> AdditiveMap {
        let m = self.ring.modulus();
        self.zip(other, |a, b| m.sub(a, b))
    }

    pub fn scale(&self, c: u64) -> AdditiveMap {
        let m = self.ring.modulus();
        self.zip(self, |a, _| m.mul(m.reduce(c), a))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AdditiveMap) -> AdditiveMap {
        AdditiveMap {
            ring: self.ring.clone(),
            matrix: self.matrix.mul_mat(&other.matrix),
        }
    }

    /// The same map expressed in the basis of `rebased`, where `change` is
    /// the change-of-basis matrix used by [`FiniteRing::rebase`].
    pub fn rebase(&self, rebased: Arc<FiniteRing>, change: &MatrixZm) -> Option<AdditiveMap> {
        let inv = change.inverse()?;
        Some(AdditiveMap {
            matrix: inv.mul_mat(&self.matrix).mul_mat(change),
            ring: rebased,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Residuals of the defining identities. Each is zero exactly when the
/// identity holds at `(x, y)`, and each is linear in the map arguments.
pub mod residual {
    use super::*;

    fn jordan(r: &FiniteRing, x: &RingElement, y: &RingElement) -> RingElement {
        r.add(&r.mul(x, y), &r.mul(y, x))
    }

    /// `f(xy) - x f(y)`
    pub fn centralizer_left(f: &AdditiveMap, x: &RingElement, y: &RingElement) -> RingElement {
        let r = f.ring();
        r.sub(&f.apply(&r.mul(x, y)), &r.mul(x, &f.apply(y)))
    }

    /// `f(xy) - f(x) y`
    pub fn centralizer_right(f: &AdditiveMap, x: &RingElement, y: &RingElement) -> RingElement {
        let r = f.ring();
        r.sub(&f.apply(&r.mul(x, y)), &r.mul(&f.apply(x), y))
    }

    /// `f(xy + yx) - x f(y) - f(y) x`
    pub fn jordan_centralizer(f: &AdditiveMap, x: &RingElement, y: &RingElement) -> RingElement {
        let r = f.ring();
        let fy = f.apply(y);
        r.sub(&f.apply(&jordan(r, x, y)), &r.add(&r.mul(x, &fy), &r.mul(&fy, x)))
    }

    /// `f(xy) - f(x) y - x f(y)`
    pub fn derivation(f: &AdditiveMap, x: &RingElement, y: &RingElement) -> RingElement {
        let r = f.ring();
        let rhs = r.add(&r.mul(&f.apply(x), y), &r.mul(x, &f.apply(y)));
        r.sub(&f.apply(&r.mul(x, y)), &rhs)
    }

    fn jordan_leibniz(f: &AdditiveMap, x: &RingElement, y: &RingElement) -> RingElement {
        let r = f.ring();
        let (fx, fy) = (f.apply(x), f.apply(y));
        r.sum([&r.mul(&fx, y), &r.mul(x, &fy), &r.mul(&fy, x), &r.mul(y, &fx)])
    }

    /// `f(xy + yx) - f(x) y - x f(y) - f(y) x - y f(x)`
    pub fn jordan_derivation(f: &AdditiveMap, x: &RingElement, y: &RingElement) -> RingElement {
        let r = f.ring();
        r.sub(&f.apply(&jordan(r, x, y)), &jordan_leibniz(f, x, y))
    }

    /// `f(xy) - f(x) y - x f(y) + x f(1) y`
    pub fn generalized_derivation(f: &AdditiveMap, x: &RingElement, y: &RingElement) -> RingElement {
        let r = f.ring();
        let f1 = f.apply(&r.one());
        r.add(&derivation(f, x, y), &r.mul_all(&[x, &f1, y]))
    }

    /// `f(xy + yx) - (Jordan-Leibniz terms) + x f(1) y + y f(1) x`
    pub fn generalized_jordan_derivation(f: &AdditiveMap, x: &RingElement, y: &RingElement) -> RingElement {
        let r = f.ring();
        let f1 = f.apply(&r.one());
        r.sum([
            &jordan_derivation(f, x, y),
            &r.mul_all(&[x, &f1, y]),
            &r.mul_all(&[y, &f1, x]),
        ])
    }

    /// `tau(xy + yx) - x tau(y) - delta(x) y - tau(y) x - y delta(x)`
    pub fn jgd_via(tau: &AdditiveMap, delta: &AdditiveMap, x: &RingElement, y: &RingElement) -> RingElement {
        let r = tau.ring();
        r.sub(&tau.apply(&jordan(r, x, y)), &pair_terms(delta, tau, x, y))
    }

    /// `x tau(y) + delta(x) y + y delta(x) + tau(y) x`
    pub fn pair_terms(delta: &AdditiveMap, tau: &AdditiveMap, x: &RingElement, y: &RingElement) -> RingElement {
        let r = tau.ring();
        let (dx, ty) = (delta.apply(x), tau.apply(y));
        r.sum([&r.mul(x, &ty), &r.mul(&dx, y), &r.mul(y, &dx), &r.mul(&ty, x)])
    }

    /// `x f(y) + f(y) x`
    pub fn zp_centralizer(f: &AdditiveMap, x: &RingElement, y: &RingElement) -> RingElement {
        let r = f.ring();
        let fy = f.apply(y);
        r.add(&r.mul(x, &fy), &r.mul(&fy, x))
    }

    /// `f(xyx) - x f(y) x`
    pub fn xyx(f: &AdditiveMap, x: &RingElement, y: &RingElement) -> RingElement {
        let r = f.ring();
        r.sub(&f.apply(&r.mul_all(&[x, y, x])), &r.mul_all(&[x, &f.apply(y), x]))
    }
}

fn holds_on_basis_pairs(ring: &FiniteRing, check: impl Fn(&RingElement, &RingElement) -> RingElement) -> bool {
    let basis = ring.basis_elements();
    basis.iter().all(|x| basis.iter().all(|y| check(x, y).is_zero()))
}

pub fn is_centralizer(f: &AdditiveMap) -> bool {
    holds_on_basis_pairs(f.ring(), |x, y| residual::centralizer_left(f, x, y))
        && holds_on_basis_pairs(f.ring(), |x, y| residual::centralizer_right(f, x, y))
}

pub fn is_jordan_centralizer(f: &AdditiveMap) -> bool {
    holds_on_basis_pairs(f.ring(), |x, y| residual::jordan_centralizer(f, x, y))
}

pub fn is_derivation(f: &AdditiveMap) -> bool {
    holds_on_basis_pairs(f.ring(), |x, y| residual::derivation(f, x, y))
}

pub fn is_jordan_derivation(f: &AdditiveMap) -> bool {
    holds_on_basis_pairs(f.ring(), |x, y| residual::jordan_derivation(f, x, y))
}

pub fn is_generalized_derivation(f: &AdditiveMap) -> bool {
    holds_on_basis_pairs(f.ring(), |x, y| residual::generalized_derivation(f, x, y))
}

pub fn is_generalized_jordan_derivation(f: &AdditiveMap) -> bool {
    holds_on_basis_pairs(f.ring(), |x, y| residual::generalized_jordan_derivation(f, x, y))
}

fn same_ring(a: &AdditiveMap, b: &AdditiveMap) -> Result<(), MapError> {
    if a.ring().label() != b.ring().label() || a.ring().rank() != b.ring().rank() {
        return Err(MapError::RingMismatch {
            expected: a.ring().label().to_string(),
            found: b.ring().label().to_string(),
        });
    }
    Ok(())
}

/// Whether `tau` is a Jordan generalized derivation via the given `delta`.
pub fn is_jgd_via(tau: &AdditiveMap, delta: &AdditiveMap) -> Result<bool, MapError> {
    same_ring(tau, delta)?;
    if !is_jordan_derivation(delta) {
        return Err(MapError::DeltaNotJordanDerivation);
    }
    Ok(holds_on_basis_pairs(tau.ring(), |x, y| {
        residual::jgd_via(tau, delta, x, y)
    }))
}

/// The map sending basis element `j` to basis element `i` and every other
/// basis element to zero; entry `idx = i * k + j` of the solver layout.
pub(crate) fn unit_map(ring: &Arc<FiniteRing>, idx: usize) -> AdditiveMap {
    let k = ring.rank();
    let mut matrix = MatrixZm::zeros(ring.modulus(), k, k);
    matrix.set(idx / k, idx % k, 1);
    AdditiveMap {
        ring: ring.clone(),
        matrix,
    }
}

/// Whether some Jordan derivation `delta` makes `tau` a Jordan generalized
/// derivation via `delta`.
///
/// Both requirements are linear in the entries of `delta` once `tau` is
/// fixed, so this is a single solvability question `A delta = b`.
pub fn is_jordan_generalized_derivation(tau: &AdditiveMap) -> bool {
    let ring = tau.ring();
    let k = ring.rank();
    let md = ring.modulus();
    let zero = AdditiveMap::zero(ring.clone());
    let units: Vec<AdditiveMap> = (0..k * k).map(|u| unit_map(ring, u)).collect();
    let basis = ring.basis_elements();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut rhs: Vec<u64> = Vec::new();
    for x in &basis {
        for y in &basis {
            // delta is a Jordan derivation
            let cols: Vec<RingElement> = units.iter().map(|e| residual::jordan_derivation(e, x, y)).collect();
            for l in 0..k {
                rows.push(cols.iter().map(|c| c.coords()[l]).collect());
                rhs.push(0);
            }
            // delta(x) y + y delta(x) = tau(xy + yx) - x tau(y) - tau(y) x
            let cols: Vec<RingElement> = units.iter().map(|e| residual::pair_terms(e, &zero, x, y)).collect();
            let target = residual::jgd_via(tau, &zero, x, y);
            for l in 0..k {
                rows.push(cols.iter().map(|c| c.coords()[l]).collect());
                rhs.push(target.coords()[l]);
            }
        }
    }
    let a = MatrixZm::from_rows(md, k * k, &rows).expect("consistent widths");
    is_solvable(&a, &rhs).expect("rhs length matches")
}
