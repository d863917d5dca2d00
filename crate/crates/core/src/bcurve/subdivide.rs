use std::sync::Arc;

use crate::ecspace::EcSpace;

use super::{endpoint_recursion, BCurve, CurveError};

/// Splits a curve at `gamma` with the general B-algorithm.
pub fn subdivide(curve: &BCurve, gamma: f64) -> Result<(BCurve, BCurve), CurveError> {
    let (left, right) = split_spaces(curve.space(), gamma)?;
    subdivide_with(curve, gamma, left, right)
}

/// Builds the restricted spaces on `[alpha, gamma]` and `[gamma, beta]`.
pub(crate) fn split_spaces(
    space: &EcSpace,
    gamma: f64,
) -> Result<(Arc<EcSpace>, Arc<EcSpace>), CurveError> {
    if !(gamma > space.alpha() && gamma < space.beta()) {
        return Err(CurveError::SplitOutOfRange {
            gamma,
            alpha: space.alpha(),
            beta: space.beta(),
        });
    }
    let options = crate::ecspace::SpaceOptions::default();
    let left = space.rebuild_on(space.alpha(), gamma, &options)?;
    let right = space.rebuild_on(gamma, space.beta(), &options)?;
    Ok((Arc::new(left), Arc::new(right)))
}

/// Subdivision reusing already built child spaces.
pub fn subdivide_with(
    curve: &BCurve,
    gamma: f64,
    left: Arc<EcSpace>,
    right: Arc<EcSpace>,
) -> Result<(BCurve, BCurve), CurveError> {
    let space = curve.space();
    if !(gamma > space.alpha() && gamma < space.beta()) {
        return Err(CurveError::SplitOutOfRange {
            gamma,
            alpha: space.alpha(),
            beta: space.beta(),
        });
    }
    let n = space.order();
    let p = curve.control_points();
    let derivative_at =
        |u: f64| move |i: usize| curve.eval(i, u).expect("parameter inside the domain");
    let mid = curve.eval(0, gamma)?;
    let (alpha, beta) = (space.alpha(), space.beta());

    let mut lambda = vec![Vec::new(); n + 1];
    let mut rho = vec![Vec::new(); n + 1];
    let left_front = endpoint_recursion(
        p[0].clone(),
        (n.saturating_sub(1)) / 2,
        derivative_at(alpha),
        |k, i| left.b_at_alpha(k, i),
    );
    let left_back = endpoint_recursion(mid.clone(), n / 2, derivative_at(gamma), |k, i| {
        left.b_at_beta(n - k, i)
    });
    let right_front = endpoint_recursion(mid, n / 2, derivative_at(gamma), |k, i| {
        right.b_at_alpha(k, i)
    });
    let right_back = endpoint_recursion(
        p[n].clone(),
        (n.saturating_sub(1)) / 2,
        derivative_at(beta),
        |k, i| right.b_at_beta(n - k, i),
    );
    for (i, x) in left_front.into_iter().enumerate() {
        lambda[i] = x;
    }
    for (i, x) in left_back.into_iter().enumerate() {
        lambda[n - i] = x;
    }
    for (i, x) in right_front.into_iter().enumerate() {
        rho[i] = x;
    }
    for (i, x) in right_back.into_iter().enumerate() {
        rho[n - i] = x;
    }
    Ok((BCurve::new(left, lambda)?, BCurve::new(right, rho)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ecspace::{build_space, families};

    #[test]
    fn de_casteljau_regression() {
        let s = Arc::new(build_space(&families::polynomial(2), 0.0, 1.0, false, 0).unwrap());
        let c = BCurve::new(s, vec![vec![0.0, 0.0], vec![1.0, 2.0], vec![2.0, 0.0]]).unwrap();
        let (l, r) = subdivide(&c, 0.5).unwrap();
        let lex = [[0.0, 0.0], [0.5, 1.0], [1.0, 1.0]];
        let rex = [[1.0, 1.0], [1.5, 1.0], [2.0, 0.0]];
        for (q, e) in l
            .control_points()
            .iter()
            .zip(lex)
            .chain(r.control_points().iter().zip(rex))
        {
            assert!(
                (q[0] - e[0]).abs() < 1e-14 && (q[1] - e[1]).abs() < 1e-14,
                "{q:?} vs {e:?}"
            );
        }
    }

    #[test]
    fn split_parameter_must_be_interior() {
        let s = Arc::new(build_space(&families::polynomial(2), 0.0, 1.0, false, 0).unwrap());
        let c = BCurve::new(s, vec![vec![0.0, 0.0]; 3]).unwrap();
        assert!(matches!(
            subdivide(&c, 1.0),
            Err(CurveError::SplitOutOfRange { .. })
        ));
        assert!(matches!(
            subdivide(&c, -0.5),
            Err(CurveError::SplitOutOfRange { .. })
        ));
    }
}
