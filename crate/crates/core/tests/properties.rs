//! Invariants of the Schmidt model, the majorization order and the
//! equal-entropy constructions.

use proptest::prelude::*;

use schmidt_locc::sampling::{random_majorized_pair, random_simplex, trial_rng};
use schmidt_locc::schmidt::ZERO_EPS;
use schmidt_locc::{
    binary_entropy, classify, convertible, differing_count, entropy, epsilon_profile, find_partner, lift,
    make_schmidt, reduce_shared, unlift, Relation, SchmidtVector, SearchConfig,
};

const TOL: f64 = 1e-9;

fn simplex(max_rank: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, 1..=max_rank).prop_filter_map("zero mass", |raw| {
        let s: f64 = raw.iter().sum();
        (s > 1e-3).then(|| raw.iter().map(|x| x / s).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn canonical_form_invariants(raw in simplex(8)) {
        let v = make_schmidt(&raw).unwrap();
        prop_assert!(v.coeffs().windows(2).all(|w| w[0] >= w[1]));
        prop_assert!((v.coeffs().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(v.coeffs().iter().all(|&c| c == 0.0 || c >= ZERO_EPS));
    }

    #[test]
    fn entropy_is_permutation_invariant(raw in simplex(8), rot in 0usize..8) {
        let mut shuffled = raw.clone();
        let n = shuffled.len();
        shuffled.rotate_left(rot % n);
        shuffled.reverse();
        let a = make_schmidt(&raw).unwrap();
        let b = make_schmidt(&shuffled).unwrap();
        prop_assert_eq!(entropy(&a).bits().to_bits(), entropy(&b).bits().to_bits());
    }

    #[test]
    fn entropy_bounded_by_log_rank(raw in simplex(8)) {
        let v = make_schmidt(&raw).unwrap();
        let r = v.effective_rank();
        let e = entropy(&v).bits();
        prop_assert!(e >= 0.0);
        prop_assert!(e <= (r as f64).log2() + 1e-12);
        prop_assert_eq!(e == 0.0, r == 1);
        let positive: Vec<f64> = v.coeffs().iter().copied().filter(|&c| c > ZERO_EPS).collect();
        let flat = positive.iter().all(|&c| (c - positive[0]).abs() <= TOL);
        if !flat {
            prop_assert!(e < (r as f64).log2() - 1e-15);
        }
    }

    #[test]
    fn rank2_grouping(p in 0.0f64..=1.0) {
        let v = make_schmidt(&[p, 1.0 - p]).unwrap();
        let h = binary_entropy(p).unwrap().bits();
        prop_assert!((entropy(&v).bits() - h).abs() <= 1e-15);
    }

    #[test]
    fn json_round_trip(raw in simplex(8)) {
        let v = make_schmidt(&raw).unwrap();
        prop_assert_eq!(SchmidtVector::from_json(&v.to_json()).unwrap(), v);
    }

    #[test]
    fn padding_does_not_change_classification(a in simplex(6), b in simplex(6), extra in 1usize..4) {
        let (va, vb) = (make_schmidt(&a).unwrap(), make_schmidt(&b).unwrap());
        let pad = |v: &SchmidtVector| make_schmidt(&v.padded(v.rank() + extra)).unwrap();
        prop_assert_eq!(
            classify(&va, &vb, TOL).relation,
            classify(&pad(&va), &pad(&vb), TOL).relation
        );
    }

    #[test]
    fn lift_obeys_grouping_and_inverts(seed in any::<u64>(), kappa in 0.01f64..0.99) {
        let mut rng = trial_rng(seed, 0, 0);
        let (a, b) = (random_simplex(&mut rng, 4), random_simplex(&mut rng, 4));
        let (la, lb) = lift(&a, &b, kappa).unwrap();
        let h = binary_entropy(kappa).unwrap().bits();
        prop_assert!((entropy(&la).bits() - (h + (1.0 - kappa) * entropy(&a).bits())).abs() <= 1e-12);
        prop_assert!((entropy(&lb).bits() - (h + (1.0 - kappa) * entropy(&b).bits())).abs() <= 1e-12);
        prop_assert_eq!(classify(&la, &lb, TOL).relation, classify(&a, &b, TOL).relation);
        let (ra, rb) = unlift(&la, &lb, kappa, TOL).unwrap();
        prop_assert!(differing_count(&ra, &a, 1e-12).unwrap() == 0);
        prop_assert!(differing_count(&rb, &b, 1e-12).unwrap() == 0);
    }
}

#[test]
fn classification_is_antisymmetric() {
    for t in 0..10_000u64 {
        let mut rng = trial_rng(1, 100, t);
        let d = 2 + (t as usize % 5);
        let (a, b) = (random_simplex(&mut rng, d), random_simplex(&mut rng, d));
        let ab = classify(&a, &b, TOL);
        let ba = classify(&b, &a, TOL);
        let swapped = match ab.relation {
            Relation::AtoB => Relation::BtoA,
            Relation::BtoA => Relation::AtoB,
            r => r,
        };
        assert_eq!(ba.relation, swapped);
        if convertible(&a, &b, TOL) && convertible(&b, &a, TOL) {
            assert_eq!(ab.relation, Relation::Equivalent);
        }
        if ab.relation == Relation::Incomparable {
            assert!(ab.a_to_b_witness.is_some() && ab.b_to_a_witness.is_some());
        }
    }
}

#[test]
fn convertibility_is_transitive() {
    let mut chains = 0;
    for t in 0..10_000u64 {
        let mut rng = trial_rng(2, 101, t);
        let d = 2 + (t as usize % 5);
        // a < b from T-transforms, then b < c by running T-transforms on c
        let (b, c) = random_majorized_pair(&mut rng, d);
        let (a, _) = {
            let mut x = b.coeffs().to_vec();
            let (i, j) = (t as usize % d, (t as usize / 7) % d);
            if i != j {
                let (p, q) = (x[i], x[j]);
                x[i] = 0.5 * (p + q);
                x[j] = 0.5 * (p + q);
            }
            (make_schmidt(&x).unwrap(), ())
        };
        assert!(convertible(&a, &b, TOL) && convertible(&b, &c, TOL));
        assert!(convertible(&a, &c, TOL), "{a} -> {b} -> {c}");
        chains += 1;

        // unconstrained triples: whenever both links hold, so does the chain
        let (x, y, z) = (
            random_simplex(&mut rng, d),
            random_simplex(&mut rng, d),
            random_simplex(&mut rng, d),
        );
        if convertible(&x, &y, TOL) && convertible(&y, &z, TOL) {
            assert!(convertible(&x, &z, 2.0 * TOL));
        }
    }
    assert_eq!(chains, 10_000);
}

#[test]
fn epsilon_sign_matches_convertibility() {
    for t in 0..10_000u64 {
        let mut rng = trial_rng(3, 102, t);
        let d = 2 + (t as usize % 5);
        let (a, b) = if t % 2 == 0 {
            random_majorized_pair(&mut rng, d)
        } else {
            (random_simplex(&mut rng, d), random_simplex(&mut rng, d))
        };
        let eps = epsilon_profile(&a, &b);
        assert_eq!(eps.epsilons.len(), d - 1);
        assert_eq!(eps.is_nonnegative(TOL), convertible(&a, &b, TOL));
    }
}

#[test]
fn equal_entropy_pairs_are_never_comparable() {
    // perturbation grid around the reference state: every solvable top
    // coefficient yields an equal-entropy partner, and only
    // Equivalent/Incomparable may appear
    let cfg = SearchConfig::default();
    let base = [[0.45, 0.39, 0.16], [0.5, 0.3, 0.2], [0.6, 0.3, 0.1], [0.7, 0.2, 0.1]];
    let mut checked = 0;
    for raw in base {
        let v = make_schmidt(&raw).unwrap();
        for i in 0..=200 {
            let beta1 = 0.34 + 0.6 * i as f64 / 200.0;
            let Ok(p) = find_partner(&v, beta1, &cfg) else { continue };
            assert!(p.entropy_residual.abs() <= cfg.entropy_tol);
            assert_eq!(p.classification, Relation::Incomparable, "{v} vs {}", p.partner);
            assert_eq!(differing_count(&v, &p.partner, cfg.coeff_tol).unwrap(), 3);
            checked += 1;
        }
    }
    assert!(checked > 200, "{checked}");
}

#[test]
fn reduce_inverts_lift_at_shared_index() {
    let cfg = SearchConfig::default();
    let psi = make_schmidt(&[0.45, 0.39, 0.16]).unwrap();
    let phi = find_partner(&psi, 0.49, &cfg).unwrap().partner;
    for i in 1..100 {
        let kappa = i as f64 / 100.0;
        let (la, lb) = lift(&psi, &phi, kappa).unwrap();
        let Some(j) = (1..=4).find(|&j| {
            (la.get(j).unwrap() - kappa).abs() <= 1e-15 && (lb.get(j).unwrap() - kappa).abs() <= 1e-15
        }) else {
            continue;
        };
        let (ra, rb) = reduce_shared(&la, &lb, j, cfg.coeff_tol).unwrap();
        assert_eq!(differing_count(&ra, &psi, 1e-14).unwrap(), 0);
        assert_eq!(differing_count(&rb, &phi, 1e-14).unwrap(), 0);
        assert!(differing_count(&la, &lb, cfg.coeff_tol).unwrap() >= 3);
    }
}
