//! Exact evaluation and cross-checking of complete homogeneous symmetric
//! polynomials, alternant determinants, and the areas and volumes of
//! simplices whose vertices lie on a polynomial curve.

pub mod alternant;
pub mod bench;
pub mod error;
pub mod geometry;
pub mod scalar;
pub mod svg;
pub mod symmetric;
pub mod verify;

pub use alternant::{
    alternant_cofactor_sum, alternant_matrix, det_gaussian, det_identity_check, det_identity_sides,
    det_oracle, difference_product, difference_product_omit, vandermonde_matrix, ExactMatrix, HLeg,
};
pub use bench::{run_bench, BenchConfig, BenchOutcome, BenchRecord};
pub use error::{Error, Result};
pub use geometry::{
    area_factored, area_factors, curve_matrix, signed_area_direct, volume_direct, volume_factored,
    AreaFactors, CurveSimplexSpec, Factored, VolumeResult,
};
pub use scalar::{Poly, Rational};
pub use symmetric::{
    grouped_sum, h_closed_form, h_naive, h_naive_capped, h_recurrence, h_recurrence_upto,
    h_three_variable_step, monomial_count, three_variable_sides, vanishing_sum, HRequest, Nodes,
    Strategy, DEFAULT_NAIVE_CAP,
};
pub use verify::{run_all, run_suite, InputGen, Suite, SuiteConfig, VerifyReport};
