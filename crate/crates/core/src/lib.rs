//! Construction and weight analysis of generalized and projective
//! Reed-Muller codes over small finite fields.
//!
//! The crate has three layers. `gf`, `space` and `poly` provide exact field
//! arithmetic, frozen point enumerations of affine and projective space, and
//! sparse multivariate polynomials. `codes` turns polynomial spaces into
//! evaluation codes and carries the exhaustive low-weight oracle and a
//! seeded randomized search. `weights` and `witnesses` hold the closed-form
//! minimum / next-to-minimal weight predictions and the explicit
//! constructions that attain them, so every formula can be checked against
//! enumeration and every witness against evaluation.

pub mod bitset;
pub mod codes;
pub mod gf;
pub mod poly;
pub mod search;
pub mod space;
pub mod weights;
pub mod witnesses;

pub use bitset::PointSet;
pub use codes::{
    dimension, encode, exhaustive_low_weights, CodeFamily, CodeSpec, Codeword, OracleOptions,
    WeightSurvey, DEFAULT_ENUMERATION_BUDGET,
};
pub use gf::{Field, FieldElement, FieldError, MAX_FIELD_ORDER};
pub use poly::{Monomial, Polynomial};
pub use search::{randomized_low_weight_search, SearchOptions, SearchReport, SearchStrategy};
pub use space::{
    affine_points, AffinePoint, Hyperplane, LinearSubspace, ProjectivePoint, ProjectiveSpace,
};
pub use weights::{
    decompose_affine, decompose_projective, w1_prm, w1_rm, w2_prm, w2_rm, AffineParams,
    PredictionStatus, ProjParams, WeightPrediction, WeightSource,
};
pub use witnesses::{
    embed_witness, min_weight_affine, quadric_witness, second_weight_affine, verify_witness,
    Witness, WitnessKind,
};
