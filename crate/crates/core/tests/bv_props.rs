//! Properties of the rewriting system on `S^m` and of the realization map.

mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tautochow::algebra::{int, Polynomial, Rational};
use tautochow::bv::{BvRing, Strategy as RuleOrder, Subgroup, HYP_SYMMETRIC};
use tautochow::k3::{diagonal_expansion, realize, BasisVector, K3Model, TensorClass};
use tautochow::Verdict;

/// `(m, polynomial)` drawn from a seeded generator, so shrinking works on
/// the seed and `m`.
fn case(rho: u16) -> impl Strategy<Value = (u16, Polynomial)> {
    (1u16..=5, any::<u64>()).prop_map(move |(m, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (m, common::random_bv(&mut rng, m, rho))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_are_normal_and_fixed((m, p) in case(1)) {
        let ring = BvRing::k3(m);
        let nf = ring.normalize(&p);
        prop_assert!(ring.is_normal(&nf));
        prop_assert_eq!(ring.normalize(&nf), nf);
    }

    #[test]
    fn sound_on_hyperbolic_model((m, p) in case(1)) {
        let model = K3Model::hyperbolic(2);
        let ring = BvRing::for_model(m, &model);
        let nf = ring.normalize(&p);
        prop_assert_eq!(realize(&p, m as usize, &model).unwrap(), realize(&nf, m as usize, &model).unwrap());
    }

    /// Inside `m ≤ 2·b_tr + 1` normal forms are determined by their
    /// realization, so both rule orders must land on the same one.
    #[test]
    fn rule_order_does_not_matter_in_faithful_range((m, p) in case(1)) {
        let model = K3Model::desk(2);
        let ring = BvRing::for_model(m, &model);
        prop_assert_eq!(ring.normalize_with(&p, RuleOrder::Lowest), ring.normalize_with(&p, RuleOrder::Highest));
    }

    #[test]
    fn faithful_on_normal_forms((m, p) in case(1)) {
        let model = K3Model::desk(2);
        let ring = BvRing::for_model(m, &model);
        let nf = ring.normalize(&p);
        prop_assert_eq!(nf.is_zero(), realize(&p, m as usize, &model).unwrap().is_zero());
    }

    #[test]
    fn traced_run_agrees_with_memoized((m, p) in case(2)) {
        let ring = BvRing::k3_with_ns(m, &K3Model::diagonal(2, 1));
        let (nf, stats) = ring.normalize_traced(&p, RuleOrder::Lowest);
        prop_assert_eq!(&nf, &ring.normalize(&p));
        prop_assert_eq!(stats.applications_by_rule.iter().sum::<usize>(), stats.applications);
        if !ring.is_normal(&p) {
            prop_assert!(stats.applications > 0);
        }
    }

    #[test]
    fn normalize_commutes_with_permutations((m, p) in case(1), seed in any::<u64>()) {
        let ring = BvRing::k3(m);
        let mut perm: Vec<u16> = (1..=m).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let sigma = |i: u16| perm[i as usize - 1];
        prop_assert_eq!(ring.normalize(&ring.relabel(&p, &sigma)), ring.relabel(&ring.normalize(&p), &sigma));
    }

    #[test]
    fn symmetrize_is_idempotent((m, p) in case(1)) {
        let ring = BvRing::k3(m);
        for group in [Subgroup::Full, Subgroup::AllButLastTwo] {
            let once = ring.symmetrize(&p, &group);
            prop_assert_eq!(ring.symmetrize(&once, &group), once.clone());
            prop_assert!(ring.is_invariant(&once, &group));
        }
    }

    #[test]
    fn realize_is_multiplicative(seed in any::<u64>(), m in 1u16..=4) {
        let model = K3Model::diagonal(2, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_bv(&mut rng, m, 2);
        let q = common::random_bv(&mut rng, m, 2);
        let m = m as usize;
        let lhs = realize(&(&p * &q), m, &model).unwrap();
        let rhs = realize(&p, m, &model).unwrap().mul(&realize(&q, m, &model).unwrap(), &model);
        prop_assert_eq!(lhs, rhs);
    }
}

/// Pairing the second slot of the diagonal against `b` gives back `b`.
#[test]
fn diagonal_reproduces_every_basis_vector() {
    for model in [K3Model::desk(3), K3Model::diagonal(2, 3), K3Model::hyperbolic(2)] {
        let mut basis = vec![BasisVector::Unit, BasisVector::Pt];
        basis.extend((1..=model.rho() as u16).map(BasisVector::Ns));
        basis.extend((1..=model.b_tr() as u16).map(BasisVector::Tr));
        let diag = diagonal_expansion(&model);
        for &b in &basis {
            let mut image = TensorClass::zero(1);
            for (x, y, c) in &diag {
                if let Some((BasisVector::Pt, v)) = y.product(b, &model) {
                    image.add_term(vec![*x], c * &v);
                }
            }
            assert_eq!(image, TensorClass::basis(vec![b], int(1)), "{b}");
        }
    }
}

#[test]
fn diagonal_square_is_the_euler_number_on_a_full_rank_model() {
    let model = K3Model::desk(21);
    let ring = BvRing::k3(2);
    assert!(ring.matches_model(&model));
    let p = ring.parse("D(1,2)^2 - 24*o(1)*o(2)").unwrap();
    let rep = ring.verify_vanishing(&p, &model).unwrap();
    assert_eq!(rep.verdict, Verdict::ChowZero);
    assert_eq!(
        realize(&ring.parse("D(1,2)^2").unwrap(), 2, &model).unwrap().degree(),
        Rational::from_integer(24.into())
    );
}

#[test]
fn symmetric_case_beyond_faithful_range() {
    // m = 4 > 2·1 + 1, but the class is invariant under permutations of 1, 2
    let model = K3Model::desk(1);
    let ring = BvRing::for_model(4, &model);
    let p = ring.parse("D(1,3)*D(2,4) + D(2,3)*D(1,4)").unwrap();
    let rep = ring.verify_vanishing(&p, &model).unwrap();
    assert_eq!(rep.verdict, Verdict::CohomologicallyNonzero);
    // χ = 2 + 1 + 1 for this model
    let rel = ring.parse("D(1,3)^2 + D(2,3)^2 - 4*o(1)*o(3) - 4*o(2)*o(3)").unwrap();
    let rep = ring.verify_vanishing(&rel, &model).unwrap();
    assert_eq!((rep.verdict, rep.hypothesis), (Verdict::ChowZero, Some(HYP_SYMMETRIC)));
    // not invariant as written, but its normal form (zero) is
    let lopsided = ring.parse("D(1,3)^2 - 4*o(1)*o(3)").unwrap();
    let rep = ring.verify_vanishing(&lopsided, &model).unwrap();
    assert_eq!((rep.verdict, rep.hypothesis), (Verdict::ChowZero, Some(HYP_SYMMETRIC)));
}
