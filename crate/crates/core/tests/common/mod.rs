//! Brute-force oracles shared by the integration tests. Nothing here goes
//! through Howell forms or the condition compiler.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use trialg::{AdditiveMap, Bimodule, FiniteRing, Modulus, RingElement, RingSpec, TriangularRing};

pub fn modulus(m: u64) -> Modulus {
    Modulus::new(m).unwrap()
}

/// Every vector of `Z_m^n` in lexicographic order.
pub fn all_vectors(m: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// The row span, by trying every coefficient vector.
pub fn span_bruteforce(m: u64, cols: usize, rows: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
    all_vectors(m, rows.len())
        .into_iter()
        .map(|coef| {
            (0..cols)
                .map(|c| rows.iter().zip(&coef).map(|(r, &a)| r[c] * a).sum::<u64>() % m)
                .collect()
        })
        .collect()
}

/// `{x : A x = 0}` by exhaustive search.
pub fn kernel_bruteforce(m: u64, cols: usize, rows: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
    all_vectors(m, cols)
        .into_iter()
        .filter(|x| {
            rows.iter()
                .all(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<u64>() % m == 0)
        })
        .collect()
}

pub fn random_matrix(rng: &mut impl Rng, m: u64, rows: usize, cols: usize) -> Vec<Vec<u64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..m)).collect())
        .collect()
}

pub fn zm_ring(m: u64) -> Arc<FiniteRing> {
    Arc::new(FiniteRing::builtin(&RingSpec::Zm, modulus(m)).unwrap())
}

pub fn tri_zm(m: u64) -> TriangularRing {
    let r = zm_ring(m);
    TriangularRing::new(&r, &Bimodule::regular(r.clone()), &r).unwrap()
}

pub fn tri_free(m: u64, n: usize) -> TriangularRing {
    let r = zm_ring(m);
    TriangularRing::new(&r, &Bimodule::free(r.clone(), n), &r).unwrap()
}

/// Upper triangular 2x2 product on coordinates `(a11, a12, a22)`.
pub fn ut2_mul(m: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    vec![(a[0] * b[0]) % m, (a[0] * b[1] + a[1] * b[2]) % m, (a[2] * b[2]) % m]
}

/// Plain matrix-vector map application from row-major entries.
pub fn apply_entries(m: u64, k: usize, entries: &[u64], x: &[u64]) -> Vec<u64> {
    (0..k)
        .map(|i| (0..k).map(|j| entries[i * k + j] * x[j]).sum::<u64>() % m)
        .collect()
}

pub fn elem(ring: &FiniteRing, v: Vec<u64>) -> RingElement {
    ring.element(v).unwrap()
}

pub fn map_from(ring: &Arc<FiniteRing>, entries: &[u64]) -> AdditiveMap {
    AdditiveMap::from_vec(ring.clone(), entries).unwrap()
}

/// Zero-product pairs by a plain double loop using the ring product.
pub fn zero_product_pairs_bruteforce(ring: &FiniteRing) -> Vec<(RingElement, RingElement)> {
    let m = ring.modulus().get();
    let elems: Vec<RingElement> = all_vectors(m, ring.rank()).into_iter().map(|v| elem(ring, v)).collect();
    let mut out = Vec::new();
    for x in &elems {
        for y in &elems {
            if ring.mul(x, y).is_zero() && ring.mul(y, x).is_zero() {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}
