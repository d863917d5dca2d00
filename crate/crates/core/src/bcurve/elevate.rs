use std::sync::Arc;

use crate::ecspace::EcSpace;

use super::{endpoint_recursion, BCurve, CurveError};

fn check_nesting(source: &EcSpace, target: &EcSpace) -> Result<(), CurveError> {
    let scale = source.alpha().abs().max(source.beta().abs()).max(1.0);
    if (source.alpha() - target.alpha()).abs() > 1e-12 * scale
        || (source.beta() - target.beta()).abs() > 1e-12 * scale
    {
        return Err(CurveError::IntervalMismatch(
            source.alpha(),
            source.beta(),
            target.alpha(),
            target.beta(),
        ));
    }
    if !source.polynomial().is_contained_in(target.polynomial()) {
        return Err(CurveError::NotASubspace);
    }
    Ok(())
}

fn mix(a: &[f64], wa: f64, b: &[f64], wb: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| wa * x + wb * y).collect()
}

/// Re-expresses a curve in a larger EC space on the same interval.
///
/// A one-dimensional step uses the two-point derivative-ratio formula; larger
/// steps, which are needed when a conjugate pair is added at once, fall back
/// to [`elevate_by_hermite_conditions`].
pub fn elevate_order(curve: &BCurve, target: Arc<EcSpace>) -> Result<BCurve, CurveError> {
    let source = curve.space();
    check_nesting(source, &target)?;
    if target.dimension() != source.dimension() + 1 {
        return elevate_by_hermite_conditions(curve, target);
    }
    let n = source.order();
    let p = curve.control_points();
    let mut q = vec![Vec::new(); n + 2];
    q[0] = p[0].clone();
    q[n + 1] = p[n].clone();
    for i in 1..=n / 2 {
        let r = source.b_at_alpha(i, i) / target.b_at_alpha(i, i);
        q[i] = mix(&p[i - 1], 1.0 - r, &p[i], r);
    }
    for i in 1..=n.div_ceil(2) {
        let s = source.b_at_beta(n - i, i) / target.b_at_beta(n + 1 - i, i);
        q[n + 1 - i] = mix(&p[n - i], s, &p[n + 1 - i], 1.0 - s);
    }
    BCurve::new(target, q)
}

/// Elevation into any nesting space by matching endpoint derivatives: the
/// first half of the new points from `alpha`, the second half from `beta`.
pub fn elevate_by_hermite_conditions(
    curve: &BCurve,
    target: Arc<EcSpace>,
) -> Result<BCurve, CurveError> {
    let source = curve.space();
    check_nesting(source, &target)?;
    let n = source.order();
    let m = target.order();
    let p = curve.control_points();
    let at_alpha = |i: usize| {
        curve
            .eval(i, source.alpha())
            .expect("endpoint lies in the domain")
    };
    let at_beta = |i: usize| {
        curve
            .eval(i, source.beta())
            .expect("endpoint lies in the domain")
    };
    let front = endpoint_recursion(p[0].clone(), m / 2, at_alpha, |k, i| {
        target.b_at_alpha(k, i)
    });
    let back = endpoint_recursion(p[n].clone(), m.saturating_sub(1) / 2, at_beta, |k, i| {
        target.b_at_beta(m - k, i)
    });
    let mut q = vec![Vec::new(); m + 1];
    for (i, x) in front.into_iter().enumerate() {
        q[i] = x;
    }
    for (i, x) in back.into_iter().enumerate() {
        q[m - i] = x;
    }
    BCurve::new(target, q)
}
