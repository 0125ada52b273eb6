use deptree_core::baseline::{monte_carlo_shard, MonteCarloSums};
use deptree_core::{
    bounds_report, compose_reverse, crossing_count, degree_stats, length_stats, LinearArrangement,
    Rational, Tree,
};
use proptest::prelude::*;

/// A random labeled tree with a random arrangement of it.
fn tree_and_arrangement(max_n: usize) -> impl Strategy<Value = (Tree, LinearArrangement)> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let code = proptest::collection::vec(1..=n as u32, n - 2);
            let order = Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle();
            (Just(n), code, order)
        })
        .prop_map(|(n, code, order)| {
            (
                Tree::from_prufer(n, &code),
                LinearArrangement::from_positions(order).unwrap(),
            )
        })
}

fn naive_crossings(tree: &Tree, arr: &LinearArrangement) -> u64 {
    let spans: Vec<(u32, u32)> = tree
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (arr.position(u), arr.position(v));
            (a.min(b), a.max(b))
        })
        .collect();
    let mut count = 0;
    for (i, &(a, b)) in spans.iter().enumerate() {
        for &(c, d) in &spans[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                count += 1;
            }
        }
    }
    count
}

proptest! {
    #[test]
    fn crossings_match_direct_count((tree, arr) in tree_and_arrangement(14)) {
        prop_assert_eq!(crossing_count(&tree, &arr).unwrap().crossings, naive_crossings(&tree, &arr));
    }

    #[test]
    fn mirror_keeps_everything((tree, arr) in tree_and_arrangement(14)) {
        let mirror = compose_reverse(&arr);
        prop_assert_eq!(&mirror, &arr.reversed());
        prop_assert_eq!(length_stats(&tree, &mirror).unwrap(), length_stats(&tree, &arr).unwrap());
        prop_assert_eq!(crossing_count(&tree, &mirror).unwrap(), crossing_count(&tree, &arr).unwrap());
    }

    #[test]
    fn crossings_respect_every_bound((tree, arr) in tree_and_arrangement(20)) {
        let report = bounds_report(&tree, &arr).unwrap();
        let lengths = length_stats(&tree, &arr).unwrap();
        let crossings = crossing_count(&tree, &arr).unwrap();
        prop_assert!(crossings.crossings <= report.crossing_ceiling());
        prop_assert!(report.violations(&lengths, &crossings).is_empty());
    }

    #[test]
    fn degree_moments((tree, _arr) in tree_and_arrangement(20)) {
        let n = tree.n() as i64;
        let stats = degree_stats(&tree);
        prop_assert_eq!(stats.degrees.iter().map(|&k| k as i64).sum::<i64>(), 2 * (n - 1));
        prop_assert!(stats.k2_sum as i64 >= 4 * n - 6);
        prop_assert!(stats.mean_k2 <= Rational::from_integer(n - 1));
        let mean_k = Rational::new(2 * (n - 1), n);
        prop_assert_eq!(stats.var_k, stats.mean_k2 - mean_k * mean_k);
    }

    #[test]
    fn total_length_at_least_n_minus_one((tree, arr) in tree_and_arrangement(20)) {
        let lengths = length_stats(&tree, &arr).unwrap();
        prop_assert!(lengths.total >= tree.n() as u64 - 1);
        prop_assert_eq!(lengths.total, lengths.lengths.iter().map(|&d| d as u64).sum::<u64>());
    }

    #[test]
    fn monte_carlo_shards_merge(seed in any::<u64>(), split in 0u64..40) {
        let tree = Tree::star(7);
        let whole = monte_carlo_shard(&tree, seed, 0..40);
        let mut parts = MonteCarloSums::default();
        parts.merge(&monte_carlo_shard(&tree, seed, 0..split));
        parts.merge(&monte_carlo_shard(&tree, seed, split..40));
        prop_assert_eq!(parts, whole);
    }
}
