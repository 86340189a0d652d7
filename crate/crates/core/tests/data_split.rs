//! Split partition invariants over randomized sizes.

use proptest::prelude::*;

use swarmnn::data::{split_indices, train_test_sizes};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn partition_is_disjoint_exhaustive_and_sized(n in 5usize..10_000, seed in 0u64..1_000) {
        let split = split_indices(n, seed).unwrap();
        let (train, test) = train_test_sizes(n);
        prop_assert_eq!(split.train_indices.len(), train);
        prop_assert_eq!(split.test_indices.len(), test);

        let mut all: Vec<usize> = split
            .train_indices
            .iter()
            .chain(&split.test_indices)
            .copied()
            .collect();
        all.sort_unstable();
        all.dedup();
        prop_assert_eq!(all.len(), n, "indices overlap or miss rows");
        prop_assert_eq!(all.last().copied(), Some(n - 1));
    }

    #[test]
    fn train_side_is_the_ceiling_of_four_fifths(n in 5usize..100_000) {
        let (train, test) = train_test_sizes(n);
        prop_assert_eq!(train + test, n);
        // ceil(0.8n) in exact integer arithmetic, written out longhand.
        #[allow(clippy::manual_div_ceil)]
        let expected = (4 * n + 4) / 5;
        prop_assert_eq!(train, expected);
        prop_assert!(train >= 4 * test - 4 && train <= 4 * test + 4);
    }
}
