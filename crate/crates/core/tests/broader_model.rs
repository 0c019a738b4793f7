mod common;

use common::{constructed_designs, d5, example1};
use partial_profile::construct_broader;
use partial_profile::design::{complement, stack};
use partial_profile::verify::{
    broader_c_matrix, brute_force_c_matrix, c_matrix_from_counts, certify, cross_matrix_from_counts,
    generalized_inverse, is_positive_definite, tally_counts, BruteForce, GInverse, Model,
};

#[test]
fn cross_block_matches_brute_force() {
    for (label, d) in constructed_designs(7) {
        let bf = BruteForce::new(&d).unwrap();
        let counted = cross_matrix_from_counts(&tally_counts(&d)).to_dmatrix();
        assert!((&bf.cross - counted).amax() < 1e-12, "{label}");
    }
}

#[test]
fn g_inverse_choice_does_not_matter() {
    let mut designs = vec![
        ("saturated (8,5)".to_string(), example1()),
        ("five options".to_string(), d5()),
        ("doubled five options".to_string(), stack(&d5(), &complement(&d5())).unwrap()),
    ];
    designs.extend(constructed_designs(6));
    for (label, d) in designs {
        let bf = BruteForce::new(&d).unwrap();
        let g = generalized_inverse(&bf.interactions, GInverse::Perturbed);
        assert!((&bf.interactions * &g * &bf.interactions - &bf.interactions).amax() < 1e-9, "{label}");
        let a = bf.broader_c(GInverse::Eigen);
        let b = bf.broader_c(GInverse::Perturbed);
        assert!((a - b).amax() < 1e-9, "{label}");
    }
}

#[test]
fn broader_trace_never_exceeds_main_trace() {
    for (label, d) in constructed_designs(7) {
        let main = brute_force_c_matrix(&d).unwrap().trace();
        let broader = broader_c_matrix(&d, GInverse::Eigen).unwrap().trace();
        assert!(broader <= main + 1e-9, "{label}: {broader} > {main}");
    }
}

#[test]
fn unbalanced_interactions_cost_information() {
    let d = d5();
    let main = brute_force_c_matrix(&d).unwrap().trace();
    let broader = broader_c_matrix(&d, GInverse::Eigen).unwrap().trace();
    assert!(broader < main - 1e-9);

    let cert = certify(&d, Model::Broader);
    assert!(!cert.eta2_failures.is_empty() || !cert.eta3_failures.is_empty());
}

#[test]
fn doubled_designs_lose_nothing() {
    for (label, d) in constructed_designs(7) {
        let doubled = construct_broader(&d).unwrap();
        assert!(cross_matrix_from_counts(&tally_counts(&doubled)).is_null(), "{label}");
        let main = c_matrix_from_counts(&tally_counts(&doubled)).to_dmatrix();
        let broader = broader_c_matrix(&doubled, GInverse::Eigen).unwrap();
        assert!((&main - &broader).amax() < 1e-12, "{label}");
        assert!(is_positive_definite(&broader), "{label}");
    }
}
