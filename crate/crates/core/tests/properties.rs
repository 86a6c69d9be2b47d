use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gpsort::mutation::{hvl_mutate, sample_k};
use gpsort::oracle::{enumerate_single_mutations, neighborhood_size};
use gpsort::sortedness::{better, is_optimal};
use gpsort::tree::{random_init, InitConfig, InitMode, Label, Tree};
use gpsort::{evaluate, ExpressedPermutation, Fitness, Measure, Variant};

fn tree_strategy(n: usize) -> impl Strategy<Value = Tree> {
    let leaf = (1..=n).prop_map(move |x| Tree::leaf(x, n).unwrap());
    leaf.prop_recursive(5, 20, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| Tree::join(l, r))
    })
}

fn sized_tree() -> impl Strategy<Value = (usize, Tree)> {
    (2usize..=6).prop_flat_map(|n| (Just(n), tree_strategy(n)))
}

proptest! {
    #[test]
    fn display_parse_round_trip((_n, tree) in sized_tree()) {
        let text = tree.to_string();
        let parsed: Tree = text.parse().unwrap();
        prop_assert_eq!(parsed, tree);
    }

    #[test]
    fn comb_preserves_leaf_order(labels in prop::collection::vec(1usize..=9, 1..20)) {
        let tree = Tree::comb(&labels, 9).unwrap();
        prop_assert_eq!(tree.leaves(), labels);
        prop_assert!(tree.is_well_formed());
    }

    #[test]
    fn enumeration_matches_apply((n, tree) in sized_tree()) {
        let entries = enumerate_single_mutations(&tree, n).unwrap();
        prop_assert_eq!(entries.len() as u64, neighborhood_size(&tree, n));
        for e in entries {
            prop_assert_eq!(e.instance.apply(&tree).unwrap(), e.result);
        }
    }

    #[test]
    fn better_is_a_strict_order(m in 0usize..5, a in 0u64..20, b in 0u64..20) {
        let measure = Measure::ALL[m];
        let fa = Fitness { value: a, measure };
        let fb = Fitness { value: b, measure };
        let ab = better(measure, fa, fb).unwrap();
        let ba = better(measure, fb, fa).unwrap();
        prop_assert!(!(ab && ba));
        prop_assert_eq!(ab || ba, a != b);
    }

    #[test]
    fn optimum_only_on_identity((n, tree) in sized_tree()) {
        let p = ExpressedPermutation::of_tree(&tree, n);
        for m in Measure::ALL {
            let at_optimum = evaluate(&tree, m, n).value == m.optimum(n);
            prop_assert_eq!(at_optimum, p.is_identity());
        }
        prop_assert_eq!(is_optimal(&tree, n), p.is_identity());
    }

    #[test]
    fn multi_step_mutation_stays_closed((n, tree) in sized_tree(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = sample_k(Variant::Multi, &mut rng);
        prop_assert!(k >= 1);
        let child = hvl_mutate(&tree, k, n, &mut rng);
        prop_assert!(child.is_well_formed());
        let diff = child.leaf_count().abs_diff(tree.leaf_count());
        prop_assert!(diff <= k);
    }

    #[test]
    fn grow_init_respects_depth_cap(n in 2usize..=16, seed in any::<u64>()) {
        let cfg = InitConfig::new(n, InitMode::Grow);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_init(&cfg, &mut rng).unwrap();
        prop_assert!(tree.depth() <= cfg.depth_cap);
        prop_assert!(tree.leaf_iter().all(|x: Label| (1..=n).contains(&x)));
    }

    #[test]
    fn perm_comb_init_is_complete(n in 2usize..=16, seed in any::<u64>()) {
        let cfg = InitConfig::new(n, InitMode::PermComb);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_init(&cfg, &mut rng).unwrap();
        prop_assert_eq!(tree.leaf_count(), n);
        prop_assert!(ExpressedPermutation::of_tree(&tree, n).is_complete());
    }
}
