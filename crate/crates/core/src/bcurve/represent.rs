use std::sync::Arc;

use crate::ecspace::{transformation_matrix, EcSpace};

use super::{BCurve, CurveError};

/// Control points of the curve `Σ λ_i φ_i` given by its ordinary-basis
/// coefficients `λ_i ∈ R^δ`.
pub fn represent_ordinary_curve(
    space: Arc<EcSpace>,
    coefficients: &[Vec<f64>],
) -> Result<BCurve, CurveError> {
    let dim = space.dimension();
    if coefficients.len() != dim {
        return Err(CurveError::DimensionMismatch {
            expected: dim,
            actual: coefficients.len(),
        });
    }
    let delta = coefficients[0].len();
    if coefficients.iter().any(|c| c.len() != delta) {
        return Err(CurveError::PointDimension(
            "coefficient vectors differ in length".into(),
        ));
    }
    let t = transformation_matrix(&space)?;
    let points = (0..dim)
        .map(|j| {
            (0..delta)
                .map(|d| (0..dim).map(|i| coefficients[i][d] * t.get(i, j)).sum())
                .collect()
        })
        .collect();
    BCurve::new(space, points)
}
