//! Representation theory of `U(N)`: dimensions, Schur functions, branching,
//! cotransition sampling, tensor products and finite-level moments.

mod branching;
mod dimension;
mod faulhaber;
mod finite;
mod linalg;
mod operator;
mod sampling;
mod tensor;

pub use branching::{branching_law, BranchingLaw, SignatureLaw, DEFAULT_ENUMERATION_CAP};
pub use dimension::{schur_eval, schur_polynomial, weyl_dimension};
pub use faulhaber::{interval_power_sums, power_sums};
pub use finite::{finite_d_moment, finite_m_moment};
pub use linalg::{det_bigint, det_rational};
pub use operator::{apply_power_sum_operator, eigenvalue, verify_projection_sgf};
pub use sampling::{
    cotransition_sample, cotransition_sample_with, level_rng, projection_chain, CotransitionMethod,
    EXACT_MAX_N,
};
pub use tensor::{tensor_product_law, DEFAULT_DEGREE_CAP};
