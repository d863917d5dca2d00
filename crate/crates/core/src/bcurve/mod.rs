//! B-curves `c(u) = Σ p_i b_i(u)` over an EC space: evaluation, order
//! elevation, subdivision, exact representation of ordinary curves and
//! Hermite interpolation.

mod curve;
mod elevate;
mod interpolate;
mod represent;
mod subdivide;

use thiserror::Error;

use crate::ecspace::SpaceError;

pub use curve::{sample_curve, BCurve, SampledCurve};
pub use elevate::{elevate_by_hermite_conditions, elevate_order};
pub use interpolate::{interpolate, InterpolationProblem};
pub use represent::represent_ordinary_curve;
pub use subdivide::{subdivide, subdivide_with};

pub(crate) use curve::uniform_parameters;
pub(crate) use subdivide::split_spaces;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("expected {expected} control points or coefficients, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("points must share one dimension of at least 2: {0}")]
    PointDimension(String),
    #[error("source space is not a subspace of the target space")]
    NotASubspace,
    #[error("spaces are defined on different intervals [{0}, {1}] and [{2}, {3}]")]
    IntervalMismatch(f64, f64, f64, f64),
    #[error("subdivision parameter {gamma} must lie strictly inside [{alpha}, {beta}]")]
    SplitOutOfRange { gamma: f64, alpha: f64, beta: f64 },
    #[error("invalid interpolation problem: {0}")]
    InvalidProblem(String),
    #[error("collocation matrix is singular")]
    SingularCollocation,
    #[error("sampling needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
}

/// `x_i = (target_i − Σ_{k<i} x_k·coeff(k, i)) / coeff(i, i)` for `i = 1..=count`,
/// starting from `x_0`.
pub(crate) fn endpoint_recursion(
    first: Vec<f64>,
    count: usize,
    target: impl Fn(usize) -> Vec<f64>,
    coeff: impl Fn(usize, usize) -> f64,
) -> Vec<Vec<f64>> {
    let mut xs = vec![first];
    for i in 1..=count {
        let mut acc = target(i);
        for (k, x) in xs.iter().enumerate() {
            let c = coeff(k, i);
            for (a, xv) in acc.iter_mut().zip(x) {
                *a -= c * xv;
            }
        }
        let d = coeff(i, i);
        xs.push(acc.into_iter().map(|a| a / d).collect());
    }
    xs
}
