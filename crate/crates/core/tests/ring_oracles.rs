mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trialg::funcmap::{is_centralizer, is_derivation, is_jordan_derivation};
use trialg::{trivial_extension, AdditiveMap, Bimodule, FiniteRing, MatrixZm, RingElement, RingSpec};

fn sample_rings() -> Vec<FiniteRing> {
    let t = tri_free(3, 2);
    let tt = trivial_extension(t.ring(), &Bimodule::regular(t.ring().clone())).unwrap();
    vec![
        FiniteRing::builtin(&RingSpec::Mat(2), modulus(9)).unwrap(),
        FiniteRing::builtin(&RingSpec::UpperTriangular(3), modulus(15)).unwrap(),
        FiniteRing::builtin(
            &RingSpec::Product(Box::new(RingSpec::Zm), Box::new(RingSpec::UpperTriangular(2))),
            modulus(5),
        )
        .unwrap(),
        (**t.ring()).clone(),
        tt,
    ]
}

fn random_elem(rng: &mut impl Rng, ring: &FiniteRing) -> RingElement {
    let m = ring.modulus().get();
    elem(ring, (0..ring.rank()).map(|_| rng.gen_range(0..m)).collect())
}

#[test]
fn ring_axioms_on_sampled_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for ring in sample_rings() {
        let one = ring.one();
        for _ in 0..10_000 {
            let (a, b, c) = (
                random_elem(&mut rng, &ring),
                random_elem(&mut rng, &ring),
                random_elem(&mut rng, &ring),
            );
            assert_eq!(
                ring.mul(&ring.mul(&a, &b), &c),
                ring.mul(&a, &ring.mul(&b, &c)),
                "{}",
                ring.label()
            );
            assert_eq!(
                ring.mul(&a, &ring.add(&b, &c)),
                ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
            );
            assert_eq!(
                ring.mul(&ring.add(&a, &b), &c),
                ring.add(&ring.mul(&a, &c), &ring.mul(&b, &c))
            );
            assert_eq!(ring.mul(&one, &a), a);
            assert_eq!(ring.mul(&a, &one), a);
        }
    }
}

#[test]
fn ut2_product_matches_matrix_formula() {
    let ring = FiniteRing::builtin(&RingSpec::UpperTriangular(2), modulus(3)).unwrap();
    for a in all_vectors(3, 3) {
        for b in all_vectors(3, 3) {
            assert_eq!(
                ring.mul(&elem(&ring, a.clone()), &elem(&ring, b.clone())).coords(),
                &ut2_mul(3, &a, &b)[..]
            );
        }
    }
}

#[test]
fn zero_product_count_for_ut2() {
    // frozen from a plain double loop over UT2(Z_3) with the explicit product
    const N_ZP: usize = 81;
    let vs = all_vectors(3, 3);
    let count = vs
        .iter()
        .flat_map(|a| vs.iter().map(move |b| (a, b)))
        .filter(|(a, b)| ut2_mul(3, a, b).iter().all(|&c| c == 0) && ut2_mul(3, b, a).iter().all(|&c| c == 0))
        .count();
    assert_eq!(count, N_ZP);
    let ring = FiniteRing::builtin(&RingSpec::UpperTriangular(2), modulus(3)).unwrap();
    assert_eq!(ring.zero_product_pairs(1000).unwrap().len(), N_ZP);
}

#[test]
fn zero_product_pairs_match_bruteforce() {
    let rings = vec![
        FiniteRing::builtin(&RingSpec::Zm, modulus(9)).unwrap(),
        FiniteRing::builtin(&RingSpec::UpperTriangular(2), modulus(3)).unwrap(),
        FiniteRing::builtin(
            &RingSpec::Product(Box::new(RingSpec::Zm), Box::new(RingSpec::Zm)),
            modulus(9),
        )
        .unwrap(),
        FiniteRing::builtin(&RingSpec::Zm, modulus(15)).unwrap(),
    ];
    for ring in rings {
        assert_eq!(
            ring.zero_product_pairs(100).unwrap(),
            zero_product_pairs_bruteforce(&ring),
            "{}",
            ring.label()
        );
    }
}

#[test]
fn center_matches_bruteforce() {
    let rings = vec![
        FiniteRing::builtin(&RingSpec::UpperTriangular(2), modulus(3)).unwrap(),
        FiniteRing::builtin(&RingSpec::Mat(2), modulus(3)).unwrap(),
        FiniteRing::builtin(
            &RingSpec::Product(Box::new(RingSpec::Zm), Box::new(RingSpec::Zm)),
            modulus(9),
        )
        .unwrap(),
        (**tri_free(3, 2).ring()).clone(),
    ];
    for ring in rings {
        let elems: Vec<RingElement> = all_vectors(ring.modulus().get(), ring.rank())
            .into_iter()
            .map(|v| elem(&ring, v))
            .collect();
        let expected: BTreeSet<Vec<u64>> = elems
            .iter()
            .filter(|c| elems.iter().all(|x| ring.mul(c, x) == ring.mul(x, c)))
            .map(|c| c.coords().to_vec())
            .collect();
        let got: BTreeSet<Vec<u64>> = ring.center().enumerate(1 << 20).unwrap().into_iter().collect();
        assert_eq!(got, expected, "{}", ring.label());
    }
}

#[test]
fn enumeration_bound_is_enforced() {
    let ring = FiniteRing::builtin(&RingSpec::Mat(2), modulus(3)).unwrap();
    assert!(ring.elements(80).is_err());
    assert_eq!(ring.elements(81).unwrap().len(), 81);
    assert!(ring.zero_product_pairs(80).is_err());
}

fn invertible_change(rng: &mut impl Rng, m: u64, k: usize) -> MatrixZm {
    loop {
        let rows = random_matrix(rng, m, k, k);
        let g = MatrixZm::from_rows(modulus(m), k, &rows).unwrap();
        if g.inverse().is_some() {
            return g;
        }
    }
}

#[test]
fn predicates_invariant_under_change_of_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let base = tri_zm(3).ring().clone();
    let k = base.rank();
    let maps = vec![
        AdditiveMap::left_mult(base.clone(), &base.one()),
        AdditiveMap::inner_derivation(base.clone(), &base.basis(1)),
        AdditiveMap::identity(base.clone()),
        map_from(&base, &[1, 2, 0, 0, 1, 1, 2, 0, 1]),
    ];
    for _ in 0..20 {
        let g = invertible_change(&mut rng, 3, k);
        let rebased = std::sync::Arc::new(base.rebase(&g).unwrap());
        for f in &maps {
            let h = f.rebase(rebased.clone(), &g).unwrap();
            assert_eq!(is_centralizer(f), is_centralizer(&h));
            assert_eq!(is_derivation(f), is_derivation(&h));
            assert_eq!(is_jordan_derivation(f), is_jordan_derivation(&h));
            // f and h agree on the same abstract element
            for v in all_vectors(3, k) {
                let x = elem(&base, v);
                let new_coords = g.inverse().unwrap().mul_vec(x.coords());
                let hx = h.apply(&elem(&rebased, new_coords));
                assert_eq!(g.mul_vec(hx.coords()), f.apply(&x).coords());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn additive_map_is_linear(entries in prop::collection::vec(0u64..9, 4), a in prop::collection::vec(0u64..9, 2), b in prop::collection::vec(0u64..9, 2)) {
        let ring = std::sync::Arc::new(
            FiniteRing::builtin(&RingSpec::Product(Box::new(RingSpec::Zm), Box::new(RingSpec::Zm)), modulus(9)).unwrap(),
        );
        let f = map_from(&ring, &entries);
        let (x, y) = (elem(&ring, a.clone()), elem(&ring, b.clone()));
        prop_assert_eq!(f.apply(&ring.add(&x, &y)), ring.add(&f.apply(&x), &f.apply(&y)));
        prop_assert_eq!(f.apply(&x).into_coords(), apply_entries(9, 2, &entries, &a));
    }
}
