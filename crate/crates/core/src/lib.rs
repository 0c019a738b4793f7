//! Optimal two-level partial-profile choice designs.
//!
//! A design `d(N, n, m, rho)` has `N` choice sets of `m` profiles over `n`
//! two-level factors; in each set `rho` factors vary and the others are held
//! at one common level.
//!
//! * [`design`]: profiles, choice sets, difference matrices and design algebra.
//! * [`catalog`]: Hadamard and weighing matrices.
//! * [`construct`]: minimum-`N` planning and the constructions.
//! * [`verify`]: optimality certificates and the brute-force oracle.

pub mod catalog;
pub mod construct;
pub mod design;
pub mod error;
pub mod verify;

pub use catalog::{Catalog, WeighingMatrix};
pub use construct::{
    auto_generators, construct_broader, construct_method_h, construct_method_w, construct_saturated, extend_to_m,
    plan_minimum_n, ConstructionPlan, Generator, GeneratorSet, Method,
};
pub use design::{ChoiceSet, DesignParams, DifferenceMatrix, PartialDesign, Profile};
pub use error::{Error, Result};
pub use verify::{certify, Model, OptimalityCertificate};
