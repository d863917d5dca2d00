//! Small dense linear algebra: LU factorizations, triangular inversion,
//! linear solves and SVD-based condition numbers.

mod dot;
mod lu;
mod matrix;
mod svd;
mod triangular;

use thiserror::Error;

pub use dot::compensated_dot;
pub use lu::{determinant, lu_unpivoted, solve_pivoted, LuFactors};
pub use matrix::DenseMatrix;
pub use svd::{condition_svd, singular_values, ConditionReport};
pub use triangular::{invert_triangular, Orientation};

/// Relative magnitude below which an unpivoted LU pivot counts as zero.
pub const ZERO_PIVOT_THRESHOLD: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("expected {expected} entries, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("incompatible dimensions: {0}")]
    Dimension(String),
    #[error("zero pivot at index {0}")]
    ZeroPivot(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("zero diagonal entry at index {0}")]
    ZeroDiagonal(usize),
    #[error("matrix is rank deficient (smallest singular value {sigma_min:e})")]
    RankDeficient {
        sigma_min: f64,
        report: ConditionReport,
    },
}
