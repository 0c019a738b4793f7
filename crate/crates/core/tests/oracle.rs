mod common;

use std::collections::BTreeSet;

use common::{constructed_designs, oracle_c_numerators};
use partial_profile::design::{difference_from_paired_design, ChoiceSet, PartialDesign, Profile};
use partial_profile::verify::{brute_force_c_matrix, brute_force_lambda, c_matrix_from_counts, tally_counts};
use proptest::prelude::*;

fn random_design() -> impl Strategy<Value = PartialDesign> {
    (2usize..=6)
        .prop_flat_map(|n| (Just(n), 1usize..=n))
        .prop_flat_map(|(n, rho)| {
            let max_m = 4.min(1 << rho);
            (Just(n), Just(rho), 2usize..=max_m, 1usize..=4)
        })
        .prop_flat_map(|(n, rho, m, n_sets)| {
            let set = (
                proptest::sample::subsequence((0..n).collect::<Vec<_>>(), rho),
                0u8..=1,
                proptest::sample::subsequence((0..1usize << rho).collect::<Vec<_>>(), m).prop_shuffle(),
            );
            proptest::collection::vec(set, n_sets).prop_map(move |sets| {
                let sets = sets
                    .into_iter()
                    .map(|(positions, fixed, codes)| {
                        let mut active = vec![false; n];
                        for &p in &positions {
                            active[p] = true;
                        }
                        let profiles = codes
                            .iter()
                            .map(|&code| {
                                let mut levels = vec![fixed; n];
                                for (bit, &p) in positions.iter().enumerate() {
                                    levels[p] = ((code >> bit) & 1) as u8;
                                }
                                Profile::new(levels).unwrap()
                            })
                            .collect();
                        ChoiceSet::new(profiles, active).unwrap()
                    })
                    .collect();
                PartialDesign::new(n, m, rho, sets).unwrap()
            })
        })
}

fn assert_engines_agree(label: &str, d: &PartialDesign) {
    let counted = c_matrix_from_counts(&tally_counts(d));
    let n = d.n();
    let oracle = oracle_c_numerators(d);
    for h in 0..n {
        for k in 0..n {
            assert_eq!(counted.numerator(h, k), oracle[h * n + k], "{label}: exact entry ({h}, {k})");
        }
    }
    let brute = brute_force_c_matrix(d).unwrap();
    let diff = (brute - counted.to_dmatrix()).amax();
    assert!(diff <= 1e-12, "{label}: brute-force discrepancy {diff}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn counting_matches_definition_on_random_designs(d in random_design()) {
        assert_engines_agree("random", &d);
    }

    #[test]
    fn lambda_rows_sum_to_zero(d in random_design()) {
        let lambda = brute_force_lambda(&d).unwrap();
        for r in 0..lambda.nrows() {
            prop_assert!(lambda.row(r).sum().abs() < 1e-12);
        }
        prop_assert!((&lambda - lambda.transpose()).amax() == 0.0);
    }

    #[test]
    fn pair_tallies_stay_within_pair_count(d in random_design()) {
        let counts = tally_counts(&d);
        let total = d.params().component_pairs() as u64;
        for h in 0..d.n() {
            for k in 0..d.n() {
                if h != k {
                    let (plus, minus) = counts.eta1(h, k);
                    prop_assert!(plus + minus <= total);
                    prop_assert_eq!(counts.eta1(h, k), counts.eta1(k, h));
                }
            }
        }
    }
}

#[test]
fn constructed_designs_agree_across_engines() {
    let designs = constructed_designs(10);
    let sizes: BTreeSet<usize> = designs.iter().map(|(_, d)| d.m()).collect();
    assert!(designs.len() >= 50, "only {} designs", designs.len());
    assert_eq!(sizes, BTreeSet::from([2, 3, 4, 5]));
    for (label, d) in &designs {
        assert_engines_agree(label, d);
    }
}

#[test]
fn paired_information_is_gram_of_difference_matrix() {
    for (label, d) in constructed_designs(10).iter().filter(|(_, d)| d.m() == 2) {
        let c = c_matrix_from_counts(&tally_counts(d));
        let x = difference_from_paired_design(d).unwrap();
        let gram = x.gram();
        let n = d.n();
        // C = X'X / (N 2^n) = 4 X'X / (2^n N m^2)
        for h in 0..n {
            for k in 0..n {
                assert_eq!(c.numerator(h, k), 4 * gram[h * n + k], "{label}: ({h}, {k})");
            }
        }
    }
}
