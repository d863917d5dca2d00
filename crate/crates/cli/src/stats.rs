use statrs::function::beta::beta_reg;

use crate::CliError;

const QUANTILE_TOLERANCE: f64 = 1e-10;

/// Two-sided Student-t interval for the mean of timing samples, clamped at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceInterval {
    pub lower: f64,
    pub upper: f64,
    pub mean: f64,
    /// Sample standard deviation.
    pub stddev: f64,
    pub samples: usize,
}

/// `P(T ≤ x)` for Student's t with `dof` degrees of freedom, `x ≥ 0`.
fn t_cdf(x: f64, dof: f64) -> f64 {
    1.0 - 0.5 * beta_reg(0.5 * dof, 0.5, dof / (dof + x * x))
}

/// Quantile `x_{p, dof}` of Student's t for `p ≥ 1/2`, by bisection on the
/// regularized incomplete beta function.
pub fn student_t_quantile(p: f64, dof: usize) -> f64 {
    assert!(
        (0.5..1.0).contains(&p) && dof > 0,
        "quantile needs p in [1/2, 1)"
    );
    let nu = dof as f64;
    let mut hi = 1.0;
    while t_cdf(hi, nu) < p {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    while hi - lo > QUANTILE_TOLERANCE * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if t_cdf(mid, nu) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Interval `max(τ̄ − σ̄x/√N, 0) .. τ̄ + σ̄x/√N` with `x = x_{1−s/2, N−1}`.
pub fn confidence_interval(
    samples: &[f64],
    significance: f64,
) -> Result<ConfidenceInterval, CliError> {
    let n = samples.len();
    if n < 2 {
        return Err(CliError::TooFewSamples(n));
    }
    if !(significance > 0.0 && significance < 1.0) {
        return Err(CliError::InvalidArgument(format!(
            "significance {significance} is not in (0, 1)"
        )));
    }
    let count = n as f64;
    let mean = samples.iter().sum::<f64>() / count;
    let variance = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1.0);
    let stddev = variance.sqrt();
    let half = stddev / count.sqrt() * student_t_quantile(1.0 - 0.5 * significance, n - 1);
    Ok(ConfidenceInterval {
        lower: (mean - half).max(0.0),
        upper: mean + half,
        mean,
        stddev,
        samples: n,
    })
}
