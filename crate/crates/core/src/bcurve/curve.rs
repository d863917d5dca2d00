use std::sync::Arc;

use crate::ecspace::EcSpace;

use super::CurveError;

/// B-curve of order `n` in `R^δ`.
#[derive(Debug, Clone)]
pub struct BCurve {
    space: Arc<EcSpace>,
    control_points: Vec<Vec<f64>>,
}

impl BCurve {
    pub fn new(space: Arc<EcSpace>, control_points: Vec<Vec<f64>>) -> Result<Self, CurveError> {
        if control_points.len() != space.dimension() {
            return Err(CurveError::DimensionMismatch {
                expected: space.dimension(),
                actual: control_points.len(),
            });
        }
        let delta = control_points[0].len();
        if delta < 2 {
            return Err(CurveError::PointDimension(format!("dimension {delta}")));
        }
        if let Some(p) = control_points.iter().find(|p| p.len() != delta) {
            return Err(CurveError::PointDimension(format!(
                "mixed dimensions {delta} and {}",
                p.len()
            )));
        }
        if control_points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(CurveError::PointDimension("non-finite coordinate".into()));
        }
        Ok(Self {
            space,
            control_points,
        })
    }

    pub fn space(&self) -> &Arc<EcSpace> {
        &self.space
    }

    pub fn control_points(&self) -> &[Vec<f64>] {
        &self.control_points
    }

    /// Coordinate count `δ`.
    pub fn point_dimension(&self) -> usize {
        self.control_points[0].len()
    }

    /// `c^{(j)}(u)`.
    pub fn eval(&self, j: usize, u: f64) -> Result<Vec<f64>, CurveError> {
        let b = self.space.b_values(j, u)?;
        Ok(self.blend(&b))
    }

    pub(crate) fn blend(&self, weights: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.point_dimension()];
        for (p, w) in self.control_points.iter().zip(weights) {
            for (o, x) in out.iter_mut().zip(p) {
                *o += w * x;
            }
        }
        out
    }

    /// Curve with every control point mapped by `f`.
    pub fn map_points(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self, CurveError> {
        Self::new(
            self.space.clone(),
            self.control_points.iter().map(|p| f(p)).collect(),
        )
    }
}

/// Samples of a curve and its derivatives up to some order.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    pub parameters: Vec<f64>,
    /// `derivatives[k][j]` is `c^{(j)}` at `parameters[k]`.
    pub derivatives: Vec<Vec<Vec<f64>>>,
}

impl SampledCurve {
    pub fn points(&self) -> impl Iterator<Item = &Vec<f64>> {
        self.derivatives.iter().map(|d| &d[0])
    }
}

/// Uniform parameters on `[alpha, beta]` including both endpoints.
pub(crate) fn uniform_parameters(alpha: f64, beta: f64, m: usize) -> Vec<f64> {
    (0..m)
        .map(|k| {
            if k + 1 == m {
                beta
            } else {
                alpha + (beta - alpha) * k as f64 / (m - 1) as f64
            }
        })
        .collect()
}

pub fn sample_curve(
    curve: &BCurve,
    sample_count: usize,
    d_max: usize,
) -> Result<SampledCurve, CurveError> {
    if sample_count < 2 {
        return Err(CurveError::TooFewSamples(sample_count));
    }
    let parameters = uniform_parameters(curve.space.alpha(), curve.space.beta(), sample_count);
    let derivatives = parameters
        .iter()
        .map(|&u| {
            (0..=d_max)
                .map(|j| curve.eval(j, u))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SampledCurve {
        parameters,
        derivatives,
    })
}
