//! Cross-module invariants as property tests.

use std::sync::Arc;

use framecraft::almostinv::{best_almost_invariant, dual_measure_rep, thai1_obstruction, thai1_witnesses, DualMeasure};
use framecraft::frames::{canonical_parseval, frame_report, VectorSystem};
use framecraft::groups::{all_subgroups, cocycle_table, coset_structure, FiniteGroup, SubgroupEmbedding};
use framecraft::induction::{coset_decomposition_sums, induce, verify_induced};
use framecraft::linalg::{random_gaussian_vector, random_unitary};
use framecraft::representations::{commutation_defect, left_regular};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_group(kind: u8, n: usize) -> FiniteGroup {
    match kind % 3 {
        0 => FiniteGroup::cyclic(n + 1).unwrap(),
        1 => FiniteGroup::dihedral(n.clamp(1, 6)).unwrap(),
        _ => FiniteGroup::symmetric(n.clamp(1, 4)).unwrap(),
    }
}

fn pick_subgroup(g: &Arc<FiniteGroup>, pick: usize) -> SubgroupEmbedding {
    let subs = all_subgroups(g);
    SubgroupEmbedding::from_members(g.clone(), subs[pick % subs.len()].clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bounds_are_unitarily_invariant_and_scale_quadratically(seed in any::<u64>(), d in 2usize..7, extra in 0usize..4, s in 0.1f64..5.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = VectorSystem::new(d, (0..d + extra).map(|_| random_gaussian_vector(&mut rng, d)).collect()).unwrap();
        let r = frame_report(&sys, 1e-8).unwrap();
        let u = random_unitary(&mut rng, d);
        let ru = frame_report(&sys.map(&u), 1e-8).unwrap();
        prop_assert!((r.lower_bound - ru.lower_bound).abs() <= 1e-9 * r.upper_bound);
        prop_assert!((r.upper_bound - ru.upper_bound).abs() <= 1e-9 * r.upper_bound);
        let rs = frame_report(&sys.scaled(s), 1e-8).unwrap();
        prop_assert!((rs.upper_bound - s * s * r.upper_bound).abs() <= 1e-9 * rs.upper_bound);
    }

    #[test]
    fn canonical_parseval_is_idempotent(seed in any::<u64>(), d in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = VectorSystem::new(d, (0..d + 2).map(|_| random_gaussian_vector(&mut rng, d)).collect()).unwrap();
        let once = canonical_parseval(&sys, 1e-8).unwrap();
        let twice = canonical_parseval(&once, 1e-8).unwrap();
        for (a, b) in once.vectors().iter().zip(twice.vectors()) {
            prop_assert!((a - b).norm() < 1e-8);
        }
    }

    #[test]
    fn cocycle_laws_hold_for_every_subgroup(kind in any::<u8>(), n in 1usize..9, pick in any::<usize>()) {
        let g = Arc::new(small_group(kind, n));
        let emb = pick_subgroup(&g, pick);
        let coc = cocycle_table(&coset_structure(&emb).unwrap()).unwrap();
        let laws = coc.check_laws(7);
        prop_assert_eq!(laws.violations(), 0);
    }

    #[test]
    fn induction_preserves_bounds_of_random_vectors(kind in any::<u8>(), n in 1usize..7, pick in any::<usize>(), seed in any::<u64>()) {
        let g = Arc::new(small_group(kind, n));
        let emb = pick_subgroup(&g, pick);
        let base = left_regular(emb.as_group().clone());
        let coc = cocycle_table(&coset_structure(&emb).unwrap()).unwrap();
        let ind = induce(&base, &coc).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_gaussian_vector(&mut rng, base.dim());
        let all: Vec<usize> = emb.as_group().elements().collect();
        let report = verify_induced(&ind, &w, &all, 1e-8).unwrap();
        prop_assert!(report.preserved, "{:?} vs {:?}", report.base_bounds(), report.induced_bounds());
        let v = random_gaussian_vector(&mut rng, ind.result().dim());
        let (lhs, rhs) = coset_decomposition_sums(&ind, &w, &all, &v).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.max(1.0));
    }

    #[test]
    fn regular_orbits_intertwine(kind in any::<u8>(), n in 1usize..7, seed in any::<u64>()) {
        let g = Arc::new(small_group(kind, n));
        let rep = left_regular(g.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_gaussian_vector(&mut rng, g.order());
        prop_assert!(commutation_defect(&rep, &v).unwrap() < 1e-10);
    }

    #[test]
    fn atomic_gap_equals_diagonal_minimum(nums in proptest::collection::btree_set((1i64..64, 2i64..64), 1..6)) {
        let mut angles: Vec<BigRational> = nums
            .into_iter()
            .map(|(p, q)| BigRational::new(p.into(), q.into()))
            .map(|a| &a - a.floor())
            .collect();
        angles.sort();
        angles.dedup();
        let m = DualMeasure::uniform(&angles).unwrap();
        let ob = thai1_obstruction(&m);
        let gap = best_almost_invariant(&dual_measure_rep(&m).unwrap(), false).unwrap();
        prop_assert!((gap.laplacian_min_eig - ob.c).abs() < 1e-10);
        // singleton witnesses have defect |e^{2πiθ} − 1| = 2|sin πθ|
        let singles: Vec<Vec<usize>> = (0..angles.len()).map(|j| vec![j]).collect();
        let w = thai1_witnesses(&m, &singles).unwrap();
        for (row, a) in w.rows.iter().zip(&angles) {
            let theta = a.numer().to_string().parse::<f64>().unwrap() / a.denom().to_string().parse::<f64>().unwrap();
            let expected = 2.0 * (std::f64::consts::PI * theta).sin().abs();
            prop_assert!((row.defects[0] - expected).abs() < 1e-12);
        }
    }
}
