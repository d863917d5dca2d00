use std::sync::Arc;

use crate::ecspace::EcSpace;
use crate::numkernel::{solve_pivoted, DenseMatrix, NumError};

use super::{BCurve, CurveError};

/// Hermite data: at knot `u_k` the derivatives of orders `0..m_k` are prescribed.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationProblem {
    pub knots: Vec<f64>,
    pub multiplicities: Vec<usize>,
    /// `data[k][l]` is the prescribed `l`-th derivative at `knots[k]`.
    pub data: Vec<Vec<Vec<f64>>>,
}

impl InterpolationProblem {
    fn validate(&self, space: &EcSpace) -> Result<usize, CurveError> {
        let bad = |msg: String| Err(CurveError::InvalidProblem(msg));
        if self.knots.is_empty()
            || self.knots.len() != self.multiplicities.len()
            || self.knots.len() != self.data.len()
        {
            return bad("knots, multiplicities and data must have equal nonzero length".into());
        }
        if self.knots.windows(2).any(|w| !(w[0] < w[1])) {
            return bad("knots must be strictly increasing".into());
        }
        if self.knots[0] < space.alpha() || self.knots[self.knots.len() - 1] > space.beta() {
            return bad("knots must lie in the definition interval".into());
        }
        if self.multiplicities.contains(&0) {
            return bad("multiplicities must be positive".into());
        }
        let total: usize = self.multiplicities.iter().sum();
        if total != space.dimension() {
            return bad(format!(
                "{total} conditions for a space of dimension {}",
                space.dimension()
            ));
        }
        let delta = self.data[0].first().map_or(0, Vec::len);
        for (k, (m, d)) in self.multiplicities.iter().zip(&self.data).enumerate() {
            if d.len() != *m {
                return bad(format!(
                    "knot {k} has {} data for multiplicity {m}",
                    d.len()
                ));
            }
            if d.iter().any(|x| x.len() != delta) {
                return bad("data points differ in dimension".into());
            }
        }
        Ok(delta)
    }
}

/// The unique B-curve satisfying all Hermite conditions.
pub fn interpolate(
    space: Arc<EcSpace>,
    problem: &InterpolationProblem,
) -> Result<BCurve, CurveError> {
    let delta = problem.validate(&space)?;
    let dim = space.dimension();
    let mut rows = Vec::with_capacity(dim);
    let mut rhs = Vec::with_capacity(dim);
    for ((&u, &m), data) in problem
        .knots
        .iter()
        .zip(&problem.multiplicities)
        .zip(&problem.data)
    {
        for (l, xi) in data.iter().enumerate().take(m) {
            rows.push(space.b_values(l, u)?);
            rhs.push(xi.clone());
        }
    }
    let a = DenseMatrix::from_rows(&rows).map_err(|_| CurveError::SingularCollocation)?;
    let b = DenseMatrix::from_rows(&rhs).map_err(|e| CurveError::InvalidProblem(e.to_string()))?;
    let x = solve_pivoted(&a, &b).map_err(|e| match e {
        NumError::Singular => CurveError::SingularCollocation,
        other => CurveError::InvalidProblem(other.to_string()),
    })?;
    debug_assert_eq!(x.cols(), delta);
    BCurve::new(space, x.to_rows())
}
