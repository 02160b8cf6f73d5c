//! Finite-dimensional Hermitian operator algebra: function calculus, supports,
//! weighted norms, KMS inner products, and tensor structure.

mod calculus;
mod json;
mod operator;
mod states;
mod tensor;

pub use calculus::{
    abs_power, frac_power, kms_inner, nc_quotient, support_projector, weighted_norm,
    QuotientResult,
};
pub use json::{matrix_from_json, matrix_to_json, MatrixJson};
pub use operator::{CMatrix, Eigen, HermitianOperator, C64, SPECTRAL_CUTOFF};
pub use states::{DensityOperator, Effect, Povm, Pvm};
pub use tensor::{kron, kron_power, partial_trace};
