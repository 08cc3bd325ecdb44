mod common;

use common::*;
use coref_reliability::{kappa, Coefficient, CoincidenceMatrix, Rational};
use num_traits::One;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<u64>>> {
    (1usize..=5).prop_flat_map(|k| {
        prop::collection::vec(prop::collection::vec(0u64..=20, k), k)
            .prop_filter("non-empty", |m| m.iter().flatten().sum::<u64>() > 0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn probabilities_sum_to_one(counts in matrix()) {
        let res = kappa(&CoincidenceMatrix::from_counts(counts).unwrap());
        prop_assert_eq!(res.p_ao + res.p_do, Rational::one());
        prop_assert_eq!(res.p_ae + res.p_de, Rational::one());
        prop_assert_eq!(res.kappa, res.alpha);
    }

    #[test]
    fn kappa_is_one_iff_no_disagreement(counts in matrix()) {
        let res = kappa(&CoincidenceMatrix::from_counts(counts.clone()).unwrap());
        let off_diagonal: u64 = counts.iter().enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().filter(move |(j, _)| *j != i).map(|(_, &x)| x))
            .sum();
        let is_one = res.kappa == Coefficient::Value(Rational::one());
        prop_assert_eq!(is_one, off_diagonal == 0 && res.p_ae < Rational::one());
        if res.p_ao == res.p_ae && res.p_ae < Rational::one() {
            prop_assert_eq!(res.kappa, Coefficient::Value(Rational::from_integer(0)));
        }
    }

    #[test]
    fn category_permutation_and_transpose_invariance(counts in matrix(), rot in 0usize..5) {
        let k = counts.len();
        let perm: Vec<usize> = (0..k).map(|i| (i + rot) % k).collect();
        let permuted: Vec<Vec<u64>> = (0..k)
            .map(|i| (0..k).map(|j| counts[perm[i]][perm[j]]).collect())
            .collect();
        let m = CoincidenceMatrix::from_counts(counts).unwrap();
        let base = kappa(&m);
        prop_assert_eq!(&kappa(&CoincidenceMatrix::from_counts(permuted).unwrap()), &base);
        prop_assert_eq!(kappa(&m.transpose()).kappa, base.kappa);
    }

    #[test]
    fn two_by_two_matches_item_oracle(cells in [[0u64..=20, 0u64..=20], [0u64..=20, 0u64..=20]]) {
        prop_assume!(cells.iter().flatten().sum::<u64>() > 0);
        let m = CoincidenceMatrix::from_counts(cells.iter().map(|r| r.to_vec()).collect()).unwrap();
        let res = kappa(&m);
        prop_assert_eq!(res.kappa.value(), oracle_kappa_2x2(cells));
        if let Some(v) = res.kappa.value() {
            prop_assert!(v >= -Rational::one() && v <= Rational::one());
        }
    }
}
