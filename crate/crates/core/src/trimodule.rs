//! Bimodules, triangular rings `Tri(R, M, S)` and trivial extensions.

use std::ops::Range;
use std::sync::Arc;

use crate::error::RingError;
use crate::ringcore::{FiniteRing, RingElement};
use crate::zmlinalg::{kernel, MatrixZm};

/// A unital `(R, S)`-bimodule, free over `Z_m` with its own basis.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left: Arc<FiniteRing>,
    right: Arc<FiniteRing>,
    rank: usize,
    /// `left_action[(i * rank + j) * rank + l]`: coordinate `l` of `r_i m_j`.
    left_action: Vec<u64>,
    /// `right_action[(j * k_s + i) * rank + l]`: coordinate `l` of `m_j s_i`.
    right_action: Vec<u64>,
    label: String,
}

/// Outcome of a faithfulness check; witnesses are nonzero annihilators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Faithfulness {
    Faithful,
    LeftWitness(RingElement),
    RightWitness(RingElement),
}

impl Faithfulness {
    pub fn is_faithful(&self) -> bool {
        matches!(self, Faithfulness::Faithful)
    }
}

fn same_structure(a: &FiniteRing, b: &FiniteRing) -> bool {
    a.modulus() == b.modulus() && a.rank() == b.rank() && a.struct_consts() == b.struct_consts() && a.one() == b.one()
}

fn flatten(
    table: &[Vec<Vec<u64>>],
    outer: usize,
    inner: usize,
    rank: usize,
    what: &str,
) -> Result<Vec<u64>, RingError> {
    if table.len() != outer
        || table
            .iter()
            .any(|row| row.len() != inner || row.iter().any(|v| v.len() != rank))
    {
        return Err(RingError::Shape(format!(
            "{what} table must be {outer} x {inner} x {rank}"
        )));
    }
    Ok(table.iter().flatten().flatten().copied().collect())
}

impl Bimodule {
    /// `left_action[i][j]` is `r_i m_j`, `right_action[j][i]` is `m_j s_i`,
    /// both in `M`-coordinates.
    pub fn new(
        left: Arc<FiniteRing>,
        right: Arc<FiniteRing>,
        rank: usize,
        left_action: Vec<Vec<Vec<u64>>>,
        right_action: Vec<Vec<Vec<u64>>>,
        label: impl Into<String>,
    ) -> Result<Self, RingError> {
        if left.modulus() != right.modulus() {
            return Err(RingError::ModulusMismatch(left.modulus().get(), right.modulus().get()));
        }
        let m = left.modulus();
        let la = flatten(&left_action, left.rank(), rank, rank, "left action")?;
        let ra = flatten(&right_action, rank, right.rank(), rank, "right action")?;
        let module = Bimodule {
            left_action: la.into_iter().map(|x| m.reduce(x)).collect(),
            right_action: ra.into_iter().map(|x| m.reduce(x)).collect(),
            left,
            right,
            rank,
            label: label.into(),
        };
        module.validate()?;
        Ok(module)
    }

    /// A ring as a bimodule over itself.
    pub fn regular(ring: Arc<FiniteRing>) -> Self {
        let k = ring.rank();
        let table = ring.struct_consts();
        let flat: Vec<u64> = table.iter().flatten().flatten().copied().collect();
        Bimodule {
            label: ring.label().to_string(),
            left: ring.clone(),
            right: ring,
            rank: k,
            left_action: flat.clone(),
            right_action: flat,
        }
    }

    /// `R^n` with componentwise left and right multiplication.
    pub fn free(ring: Arc<FiniteRing>, n: usize) -> Self {
        let k = ring.rank();
        let rank = k * n;
        let mut la = vec![0u64; k * rank * rank];
        let mut ra = vec![0u64; rank * k * rank];
        for i in 0..k {
            for c in 0..n {
                for j in 0..k {
                    let prod = ring.mul(&ring.basis(i), &ring.basis(j));
                    let rev = ring.mul(&ring.basis(j), &ring.basis(i));
                    let mj = c * k + j;
                    for l in 0..k {
                        la[(i * rank + mj) * rank + c * k + l] = prod.coords()[l];
                        ra[(mj * k + i) * rank + c * k + l] = rev.coords()[l];
                    }
                }
            }
        }
        Bimodule {
            label: format!("{}^{n}", ring.label()),
            left: ring.clone(),
            right: ring,
            rank,
            left_action: la,
            right_action: ra,
        }
    }

    /// The zero bimodule; never faithful.
    pub fn zero(left: Arc<FiniteRing>, right: Arc<FiniteRing>) -> Self {
        Bimodule {
            left,
            right,
            rank: 0,
            left_action: Vec::new(),
            right_action: Vec::new(),
            label: "0".into(),
        }
    }

    fn validate(&self) -> Result<(), RingError> {
        let (kr, ks, k) = (self.left.rank(), self.right.rank(), self.rank);
        let one_r = self.left.one();
        let one_s = self.right.one();
        for j in 0..k {
            let b = unit(k, j);
            if self.act_left(&one_r, &b) != b || self.act_right(&b, &one_s) != b {
                return Err(RingError::BimoduleNotUnital(j));
            }
        }
        let rb: Vec<RingElement> = self.left.basis_elements();
        let sb: Vec<RingElement> = self.right.basis_elements();
        for j in 0..k {
            let mj = unit(k, j);
            for a in 0..kr {
                for b in 0..kr {
                    let lhs = self.act_left(&self.left.mul(&rb[a], &rb[b]), &mj);
                    let rhs = self.act_left(&rb[a], &self.act_left(&rb[b], &mj));
                    if lhs != rhs {
                        return Err(RingError::BimoduleNotAssociative(format!("(r{a} r{b}) m{j}")));
                    }
                }
                for s in 0..ks {
                    let lhs = self.act_right(&self.act_left(&rb[a], &mj), &sb[s]);
                    let rhs = self.act_left(&rb[a], &self.act_right(&mj, &sb[s]));
                    if lhs != rhs {
                        return Err(RingError::BimoduleNotAssociative(format!("(r{a} m{j}) s{s}")));
                    }
                }
            }
            for a in 0..ks {
                for b in 0..ks {
                    let lhs = self.act_right(&mj, &self.right.mul(&sb[a], &sb[b]));
                    let rhs = self.act_right(&self.act_right(&mj, &sb[a]), &sb[b]);
                    if lhs != rhs {
                        return Err(RingError::BimoduleNotAssociative(format!("m{j} (s{a} s{b})")));
                    }
                }
            }
        }
        Ok(())
    }

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

    pub fn left_ring(&self) -> &Arc<FiniteRing> {
        &self.left
    }

    pub fn right_ring(&self) -> &Arc<FiniteRing> {
        &self.right
    }

    /// `r m` in `M`-coordinates.
    pub fn act_left(&self, r: &RingElement, m: &[u64]) -> Vec<u64> {
        let k = self.rank;
        let md = self.left.modulus();
        let mut out = vec![0u64; k];
        for (i, &x) in r.coords().iter().enumerate() {
            for (j, &y) in m.iter().enumerate() {
                let xy = md.mul(x, y);
                if xy == 0 {
                    continue;
                }
                for (l, o) in out.iter_mut().enumerate() {
                    *o = md.add(*o, md.mul(xy, self.left_action[(i * k + j) * k + l]));
                }
            }
        }
        out
    }

    /// `m s` in `M`-coordinates.
    pub fn act_right(&self, m: &[u64], s: &RingElement) -> Vec<u64> {
        let k = self.rank;
        let ks = self.right.rank();
        let md = self.left.modulus();
        let mut out = vec![0u64; k];
        for (j, &y) in m.iter().enumerate() {
            for (i, &x) in s.coords().iter().enumerate() {
                let xy = md.mul(x, y);
                if xy == 0 {
                    continue;
                }
                for (l, o) in out.iter_mut().enumerate() {
                    *o = md.add(*o, md.mul(xy, self.right_action[(j * ks + i) * k + l]));
                }
            }
        }
        out
    }

    /// Decides faithfulness on both sides.
    ///
    /// The left annihilator `{r : r m_j = 0 for all j}` is linear in `r`, so
    /// it is computed as a kernel; a witness is its first Howell generator.
    pub fn check_faithful(&self) -> Faithfulness {
        let md = self.left.modulus();
        let k = self.rank;
        let kr = self.left.rank();
        let mut a = MatrixZm::zeros(md, k * k, kr);
        for i in 0..kr {
            for j in 0..k {
                for l in 0..k {
                    a.set(j * k + l, i, self.left_action[(i * k + j) * k + l]);
                }
            }
        }
        let ann = kernel(&a);
        if let Some(w) = ann.generator_vecs().into_iter().next() {
            return Faithfulness::LeftWitness(self.left.element(w).expect("rank matches"));
        }
        let ks = self.right.rank();
        let mut a = MatrixZm::zeros(md, k * k, ks);
        for i in 0..ks {
            for j in 0..k {
                for l in 0..k {
                    a.set(j * k + l, i, self.right_action[(j * ks + i) * k + l]);
                }
            }
        }
        let ann = kernel(&a);
        if let Some(w) = ann.generator_vecs().into_iter().next() {
            return Faithfulness::RightWitness(self.right.element(w).expect("rank matches"));
        }
        Faithfulness::Faithful
    }
}

fn unit(k: usize, j: usize) -> Vec<u64> {
    let mut v = vec![0; k];
    v[j] = 1;
    v
}

/// `Tri(R, M, S)` stored as a flat ring plus block metadata.
///
/// Coordinates are ordered `R`-block, `M`-block, `S`-block.
#[derive(Clone, Debug)]
pub struct TriangularRing {
    ring: Arc<FiniteRing>,
    p: RingElement,
    q: RingElement,
    r_block: Range<usize>,
    m_block: Range<usize>,
    s_block: Range<usize>,
}

impl TriangularRing {
    pub fn new(r: &Arc<FiniteRing>, m: &Bimodule, s: &Arc<FiniteRing>) -> Result<Self, RingError> {
        for other in [s, m.left_ring(), m.right_ring()] {
            if other.modulus() != r.modulus() {
                return Err(RingError::ModulusMismatch(r.modulus().get(), other.modulus().get()));
            }
        }
        if !same_structure(r, m.left_ring()) || !same_structure(s, m.right_ring()) {
            return Err(RingError::RingMismatch(format!(
                "{} is a ({}, {})-bimodule, not a ({}, {})-bimodule",
                m.label(),
                m.left_ring().label(),
                m.right_ring().label(),
                r.label(),
                s.label()
            )));
        }
        match m.check_faithful() {
            Faithfulness::Faithful => {}
            Faithfulness::LeftWitness(w) => {
                return Err(RingError::NotFaithful(format!(
                    "nonzero {w} in {} annihilates {}",
                    r.label(),
                    m.label()
                )))
            }
            Faithfulness::RightWitness(w) => {
                return Err(RingError::NotFaithful(format!(
                    "{} is annihilated by nonzero {w} in {}",
                    m.label(),
                    s.label()
                )))
            }
        }
        let (kr, km, ks) = (r.rank(), m.rank(), s.rank());
        let k = kr + km + ks;
        let mut consts = vec![0u64; k * k * k];
        let mut put = |i: usize, j: usize, off: usize, v: &[u64]| {
            for (l, &x) in v.iter().enumerate() {
                consts[(i * k + j) * k + off + l] = x;
            }
        };
        let rt = r.struct_consts();
        let st = s.struct_consts();
        for i in 0..kr {
            for j in 0..kr {
                put(i, j, 0, &rt[i][j]);
            }
            for j in 0..km {
                put(i, kr + j, kr, &m.act_left(&r.basis(i), &unit(km, j)));
            }
        }
        for j in 0..km {
            for i in 0..ks {
                put(kr + j, kr + km + i, kr, &m.act_right(&unit(km, j), &s.basis(i)));
            }
        }
        for i in 0..ks {
            for j in 0..ks {
                put(kr + km + i, kr + km + j, kr + km, &st[i][j]);
            }
        }
        let mut p = vec![0u64; k];
        p[..kr].copy_from_slice(r.one().coords());
        let mut q = vec![0u64; k];
        q[kr + km..].copy_from_slice(s.one().coords());
        let unity: Vec<u64> = p.iter().zip(&q).map(|(a, b)| a + b).collect();
        let label = format!("Tri({},{},{})", r.label(), m.label(), s.label());
        let ring = FiniteRing::from_flat(r.modulus(), k, consts, unity, label)?;
        Ok(TriangularRing {
            p: ring.element(p)?,
            q: ring.element(q)?,
            ring: Arc::new(ring),
            r_block: 0..kr,
            m_block: kr..kr + km,
            s_block: kr + km..k,
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn label(&self) -> &str {
        self.ring.label()
    }

    /// The standard idempotent of the `R` corner.
    pub fn p(&self) -> &RingElement {
        &self.p
    }

    /// The standard idempotent of the `S` corner.
    pub fn q(&self) -> &RingElement {
        &self.q
    }

    pub fn r_block(&self) -> Range<usize> {
        self.r_block.clone()
    }

    pub fn m_block(&self) -> Range<usize> {
        self.m_block.clone()
    }

    pub fn s_block(&self) -> Range<usize> {
        self.s_block.clone()
    }

    /// `(PXP, PXQ, QXQ)`, computed by multiplication.
    pub fn peirce(&self, x: &RingElement) -> (RingElement, RingElement, RingElement) {
        let t = &self.ring;
        let (p, q) = (&self.p, &self.q);
        (t.mul_all(&[p, x, p]), t.mul_all(&[p, x, q]), t.mul_all(&[q, x, q]))
    }

    /// A nonzero element of the off-diagonal corner: the first `M` basis
    /// element.
    pub fn corner_unit(&self) -> Option<RingElement> {
        (!self.m_block.is_empty()).then(|| self.ring.basis(self.m_block.start))
    }
}

/// `T(A, M) = A + M` with `(a, m)(a', m') = (a a', a m' + m a')`.
///
/// Faithfulness is not required here.
pub fn trivial_extension(a: &FiniteRing, m: &Bimodule) -> Result<FiniteRing, RingError> {
    if m.left_ring().modulus() != a.modulus() {
        return Err(RingError::ModulusMismatch(
            a.modulus().get(),
            m.left_ring().modulus().get(),
        ));
    }
    if !same_structure(a, m.left_ring()) || !same_structure(a, m.right_ring()) {
        return Err(RingError::RingMismatch(format!(
            "{} is not an {}-bimodule",
            m.label(),
            a.label()
        )));
    }
    let (ka, km) = (a.rank(), m.rank());
    let k = ka + km;
    let mut consts = vec![0u64; k * k * k];
    let at = a.struct_consts();
    for i in 0..ka {
        for j in 0..ka {
            for l in 0..ka {
                consts[(i * k + j) * k + l] = at[i][j][l];
            }
        }
        for j in 0..km {
            let left = m.act_left(&a.basis(i), &unit(km, j));
            let right = m.act_right(&unit(km, j), &a.basis(i));
            for l in 0..km {
                consts[(i * k + ka + j) * k + ka + l] = left[l];
                consts[((ka + j) * k + i) * k + ka + l] = right[l];
            }
        }
    }
    let mut unity = a.one().into_coords();
    unity.extend(std::iter::repeat_n(0, km));
    FiniteRing::from_flat(a.modulus(), k, consts, unity, format!("T({},{})", a.label(), m.label()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringcore::{RingSpec, DEFAULT_ENUMERATION_BOUND};
    use crate::zmlinalg::Modulus;

    fn zm(m: u64) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::builtin(&RingSpec::Zm, Modulus::new(m).unwrap()).unwrap())
    }

    fn tri3() -> TriangularRing {
        let r = zm(3);
        TriangularRing::new(&r, &Bimodule::regular(r.clone()), &r).unwrap()
    }

    #[test]
    fn faithfulness_examples() {
        let r = zm(3);
        assert_eq!(Bimodule::regular(r.clone()).check_faithful(), Faithfulness::Faithful);
        let zero = Bimodule::zero(r.clone(), r.clone());
        assert_eq!(zero.check_faithful(), Faithfulness::LeftWitness(r.one()));
        let err = TriangularRing::new(&r, &zero, &r).unwrap_err();
        assert!(matches!(err, RingError::NotFaithful(_)));
    }

    #[test]
    fn zero_left_action_is_not_unital() {
        let r = zm(3);
        let err = Bimodule::new(r.clone(), r.clone(), 1, vec![vec![vec![0]]], vec![vec![vec![1]]], "bad").unwrap_err();
        assert_eq!(err, RingError::BimoduleNotUnital(0));
    }

    #[test]
    fn right_witness_for_product_ring() {
        // M = Z_3 over (Z_3, Z_3 x Z_3) where the second factor acts by zero.
        let r = zm(3);
        let m3 = Modulus::new(3).unwrap();
        let s = Arc::new(
            FiniteRing::builtin(&RingSpec::Product(Box::new(RingSpec::Zm), Box::new(RingSpec::Zm)), m3).unwrap(),
        );
        let m = Bimodule::new(
            r.clone(),
            s.clone(),
            1,
            vec![vec![vec![1]]],
            vec![vec![vec![1], vec![0]]],
            "M",
        )
        .unwrap();
        match m.check_faithful() {
            Faithfulness::RightWitness(w) => assert_eq!(w.coords(), &[0, 1]),
            other => panic!("expected right witness, got {other:?}"),
        }
    }

    #[test]
    fn tri_of_z3_is_ut2() {
        let t = tri3();
        let ut = FiniteRing::builtin(&RingSpec::UpperTriangular(2), Modulus::new(3).unwrap()).unwrap();
        assert_eq!(t.ring().struct_consts(), ut.struct_consts());
        assert_eq!(t.ring().one(), ut.one());
        let ring = t.ring();
        assert!(ring.mul(t.p(), t.q()).is_zero());
        assert!(ring.mul(t.q(), t.p()).is_zero());
        assert!(ring.is_idempotent(t.p()) && ring.is_idempotent(t.q()));
        assert_eq!(ring.add(t.p(), t.q()), ring.one());
        assert_eq!(ring.center().cardinality_u64(), Some(3));
    }

    #[test]
    fn peirce_examples_and_exhaustive_split() {
        let t = tri3();
        let ring = t.ring();
        assert_eq!(t.peirce(&ring.one()), (t.p().clone(), ring.zero(), t.q().clone()));
        assert_eq!(t.peirce(t.p()), (t.p().clone(), ring.zero(), ring.zero()));
        let e12 = ring.basis(1);
        assert_eq!(t.peirce(&e12), (ring.zero(), e12.clone(), ring.zero()));
        for x in ring.elements(DEFAULT_ENUMERATION_BOUND).unwrap() {
            let (a, b, c) = t.peirce(&x);
            assert_eq!(ring.sum([&a, &b, &c]), x);
            assert!(ring.mul_all(&[t.q(), &x, t.p()]).is_zero());
        }
    }

    #[test]
    fn free_module_instance() {
        let r = zm(3);
        let m = Bimodule::free(r.clone(), 2);
        assert_eq!(m.check_faithful(), Faithfulness::Faithful);
        let t = TriangularRing::new(&r, &m, &r).unwrap();
        assert_eq!(t.ring().rank(), 4);
        assert_eq!(t.m_block(), 1..3);
    }

    #[test]
    fn trivial_extension_examples() {
        let t = tri3();
        let ext = trivial_extension(t.ring(), &Bimodule::regular(t.ring().clone())).unwrap();
        assert_eq!(ext.rank(), 6);
        assert_eq!(ext.order(), num_bigint::BigUint::from(729u32));
        let a = ext.element(vec![1, 2, 0, 2, 1, 1]).unwrap();
        assert_eq!(ext.mul(&ext.one(), &a), a);
        let m1 = ext.element(vec![0, 0, 0, 1, 2, 1]).unwrap();
        let m2 = ext.element(vec![0, 0, 0, 2, 1, 1]).unwrap();
        assert!(ext.mul(&m1, &m2).is_zero());
    }

    #[test]
    fn modulus_mismatch_rejected() {
        let r3 = zm(3);
        let r9 = zm(9);
        assert!(matches!(
            TriangularRing::new(&r3, &Bimodule::regular(r9.clone()), &r3),
            Err(RingError::ModulusMismatch(3, 9))
        ));
        assert!(matches!(
            trivial_extension(&r3, &Bimodule::regular(r9)),
            Err(RingError::ModulusMismatch(3, 9))
        ));
    }
}
