//! Exact dense and sparse linear algebra over ℚ(i).

mod eigen;
mod matrix;
mod pencil;
mod sparse;
mod subspace;

pub use eigen::{half_gaussian_candidates, simultaneous_eigenspaces, WeightSpace};
pub use matrix::{Matrix, Rref};
pub use pencil::{
    bareiss_det, pencil_exceptional_deltas, random_generic_delta, DeltaPencil, ExceptionalDelta,
    PencilReport,
};
pub use sparse::{dot, normalize, sparsify, Echelon, SparseMatrix, SparseVec};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("the pencil is identically zero")]
    DegenerateInput,
    #[error("operators {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("operator {0} does not split over the candidate eigenvalues")]
    NotDiagonalizable(usize),
}
