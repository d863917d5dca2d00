//! Extended Chebyshev spaces given by the zeros of a characteristic
//! polynomial: ordinary basis, bicanonical and normalized B-bases, the
//! ordinary-to-B-basis transformation and critical lengths.

mod canonical;
mod critical;
pub mod families;
mod ordinary;
mod polynomial;
mod space;
mod transform;

use thiserror::Error;

use crate::numkernel::{ConditionReport, NumError};

pub use critical::{
    critical_length, critical_length_for_design, default_grid_step, default_search_cap,
};
pub use ordinary::{ordinary_basis, OrdinaryBasisFunction, Phase};
pub use polynomial::{
    is_reflection_invariant, make_polynomial, CharacteristicPolynomial, CharacteristicZero,
};
pub use space::{build_space, EcSpace, SpaceOptions};
pub use transform::{
    lu_flop_count, transformation_flop_count, transformation_flop_sum, transformation_matrix,
    TransformationMatrix,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpaceError {
    #[error("characteristic polynomial has no zero at the origin, constants are not in the space")]
    MissingZeroRoot,
    #[error("invalid characteristic zero: {0}")]
    InvalidZero(String),
    #[error("characteristic polynomial of degree {0} is too small, need at least 2")]
    DegreeTooSmall(usize),
    #[error("invalid interval [{alpha}, {beta}]")]
    InvalidInterval { alpha: f64, beta: f64 },
    #[error("{stage} is ill-conditioned: condition number {:e}, about {} correct digits", report.condition_number, report.estimated_correct_digits)]
    IllConditioned {
        stage: String,
        report: ConditionReport,
    },
    #[error("zero pivot at index {index} while factoring the {stage}; try another interval")]
    ZeroPivot { stage: String, index: usize },
    #[error("{stage}: {source}")]
    Numerical { stage: String, source: NumError },
    #[error("parameter {u} lies outside [{alpha}, {beta}]")]
    OutOfDomain { u: f64, alpha: f64, beta: f64 },
    #[error("basis index {index} out of range for dimension {dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },
    #[error("vanishing endpoint derivative in column {column} of the transformation")]
    ZeroDenominator { column: usize },
    #[error("invalid search parameters: cap {search_cap}, step {grid_step}")]
    InvalidSearch { search_cap: f64, grid_step: f64 },
    #[error("critical length search failed: {0}")]
    SearchFailed(String),
}
