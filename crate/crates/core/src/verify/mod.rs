//! Optimality verification with two independent engines.
//!
//! The counting engine ([`counts`], [`certificate`]) works from component-pair
//! tallies in exact integer arithmetic and scales to any design size. The
//! brute-force engine ([`brute`]) builds the full treatment information matrix
//! and multiplies it by explicit contrast matrices; it is the oracle for the
//! counting engine on small designs.

pub mod brute;
pub mod certificate;
pub mod counts;

pub use brute::{
    broader_c_matrix, brute_force_c_matrix, brute_force_lambda, contrast_product, generalized_inverse,
    interaction_contrasts, is_positive_definite, main_effect_contrasts, pair_contrast_product, BruteForce,
    Effect, GInverse, MAX_BRUTE_FORCE_FACTORS,
};
pub use certificate::{
    certify, certify_counts, LevelImbalance, Model, OptimalityCertificate, PairImbalance, TripleImbalance,
};
pub use counts::{
    c_matrix_from_counts, cross_matrix_from_counts, interaction_count, interaction_index, tally_counts,
    BalanceCounts, InformationMatrix,
};
