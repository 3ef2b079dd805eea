mod common;

use std::sync::Arc;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trialg::conditions::{
    central_right_mult_module, encode_pair, joint_jgd_solutions, joint_pair_solutions, solve_kind,
};
use trialg::{AdditiveMap, ConditionKind, SolveOptions, TheoremError, TriangularRing, Verifier, VerifyOptions};

fn instances() -> Vec<TriangularRing> {
    vec![tri_zm(3), tri_zm(9), tri_free(3, 2)]
}

#[test]
fn zero_product_centralizers_are_central_multiplications() {
    for tri in instances() {
        let v = Verifier::new(tri, VerifyOptions::default());
        let report = v.verify_theorem_3_1().unwrap();
        assert!(report.equal);
        assert_eq!(report.solutions, report.centralizers);
    }
}

#[test]
fn four_characterizations_agree() {
    for tri in instances() {
        let label = tri.label().to_string();
        let report = Verifier::new(tri, VerifyOptions::default())
            .verify_theorem_4_1()
            .unwrap();
        assert!(report.all_equal, "{label}");
        assert_eq!(report.m_i, report.m_iv);
    }
}

#[test]
fn worker_count_does_not_change_modules() {
    let one = Verifier::new(tri_zm(9), VerifyOptions::default())
        .verify_theorem_4_1()
        .unwrap();
    let mut opts = VerifyOptions::default();
    opts.solve.workers = 4;
    let four = Verifier::new(tri_zm(9), opts).verify_theorem_4_1().unwrap();
    assert_eq!(one.m_i, four.m_i);
    assert_eq!(one.m_iii, four.m_iii);
}

#[test]
fn decomposition_round_trips() {
    for tri in instances() {
        let v = Verifier::new(tri, VerifyOptions::default());
        for (delta, tau) in v.joint_generators().unwrap() {
            let dec = v.decompose_tau(&tau, &delta).unwrap();
            assert!(dec.checks.all_passed());
            let ring = v.ring().clone();
            assert_eq!(dec.d.add(&AdditiveMap::right_mult(ring, &dec.tau_one)), tau);
        }
    }
}

#[test]
fn derivation_plus_central_multiple_satisfies_every_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let opts = SolveOptions::default();
    for tri in instances() {
        let ring = tri.ring().clone();
        let m = ring.modulus().get();
        let ders = solve_kind(ConditionKind::DerivationId, &ring, &opts).unwrap();
        let centre = ring.center();
        let zp_self = solve_kind(ConditionKind::ZpSelf, &ring, &opts).unwrap();
        let pair = joint_pair_solutions(&ring, &opts).unwrap();
        let jgd = joint_jgd_solutions(&ring, &opts).unwrap();
        for _ in 0..10 {
            let combo = |gens: Vec<Vec<u64>>, dim: usize, rng: &mut ChaCha8Rng| {
                let mut v = vec![0u64; dim];
                for g in gens {
                    let a = rng.gen_range(0..m);
                    v.iter_mut().zip(&g).for_each(|(x, y)| *x = (*x + a * y) % m);
                }
                v
            };
            let k = ring.rank();
            let d = map_from(&ring, &combo(ders.generator_vecs(), k * k, &mut rng));
            let c = elem(&ring, combo(centre.generator_vecs(), k, &mut rng));
            let tau = d.add(&AdditiveMap::right_mult(ring.clone(), &c));
            assert!(zp_self.contains(&tau.to_vec()).unwrap());
            // tau is paired with delta = d in both joint systems
            assert!(pair.contains(&encode_pair(&d, &tau)).unwrap());
            assert!(jgd.contains(&encode_pair(&d, &tau)).unwrap());
        }
        assert!(central_right_mult_module(&ring).is_subset_of(&zp_self).unwrap());
    }
}

#[test]
fn jordan_derivations_of_triangular_rings_are_derivations() {
    let opts = SolveOptions::default();
    for tri in instances() {
        let ring = tri.ring().clone();
        let jd = solve_kind(ConditionKind::JordanDerivationId, &ring, &opts).unwrap();
        let d = solve_kind(ConditionKind::DerivationId, &ring, &opts).unwrap();
        assert_eq!(jd, d, "{}", ring.label());
    }
}

#[test]
fn corollaries_hold() {
    let report = Verifier::new(tri_zm(3), VerifyOptions::default())
        .verify_corollaries()
        .unwrap();
    assert!(report.all_hold());
    assert_eq!(report.extension_jordan_derivations, report.extension_derivations);
}

#[test]
fn decompose_rejects_non_solutions() {
    let v = Verifier::new(tri_zm(3), VerifyOptions::default());
    let ring: Arc<_> = v.ring().clone();
    let bad = map_from(&ring, &[1, 0, 0, 0, 0, 0, 0, 0, 0]);
    let err = v.decompose_tau(&bad, &bad).unwrap_err();
    assert!(matches!(err, TheoremError::PreconditionViolated(_)));
    assert!(v.certify_centralizer(&bad).is_err());
}

#[test]
fn diagnostics_sample_above_bound() {
    let opts = VerifyOptions {
        solve: SolveOptions { bound: 10, workers: 1 },
        sample: 5,
    };
    let v = Verifier::new(tri_zm(3), opts);
    assert_eq!(v.diagnostic_elements().len(), 5);
    // the solver itself refuses to enumerate beyond the bound
    assert!(v.verify_theorem_3_1().is_err());
}
