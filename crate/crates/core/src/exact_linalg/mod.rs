//! Exact integer and rational matrices.
//!
//! Everything here is arbitrary precision and dense. The fans and complexes
//! this crate deals with are small, so no modular or sparse fast paths exist.

mod int_matrix;
mod lattice;
mod rat_matrix;
mod smith;

pub use int_matrix::{content, is_primitive, primitive, IntMatrix};
pub use lattice::{extend_to_lattice_basis, saturation_index};
pub use rat_matrix::{rational_kernel_basis, Echelon, RatMatrix};
pub use smith::{smith_normal_form, SmithForm};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Int = BigInt;
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("input vectors are linearly dependent over Q")]
    DependentInput,
    #[error("vectors span a sublattice of index {index} in their saturation")]
    NotSaturated { index: BigInt },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
}
