//! Exact rational scalars and the dense/sparse linear-algebra kernel every
//! solver is built on.
//!
//! Flattening conventions used for subspace comparisons: matrices are
//! flattened row-major, rank-3 tensors index-lexicographically in `(i, j, k)`.

mod echelon;
mod matrix;
mod rational;

use thiserror::Error;

pub use echelon::{AffineSystem, RowBuilder, SparseEchelon, SparseRow};
pub use matrix::{
    in_span, kernel_basis, rank, rref, span_rank, subspace_contains, subspace_equal, RatMatrix,
};
pub use rational::{ParseRationalError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
