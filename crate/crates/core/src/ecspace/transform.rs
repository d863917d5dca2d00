use crate::numkernel::DenseMatrix;

use super::space::EcSpace;
use super::SpaceError;

/// Matrix `T` with `φ_i = Σ_j t_{i,j} b_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformationMatrix {
    entries: DenseMatrix,
    flops: u64,
    boundary_flops: u64,
}

impl TransformationMatrix {
    pub fn entries(&self) -> &DenseMatrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// Floating point operations spent by the recursions, counting a fused
    /// multiply-add as one operation.
    pub fn flop_count(&self) -> u64 {
        self.flops
    }

    /// Divisions spent on the first and last columns, outside the recursions.
    pub fn boundary_flop_count(&self) -> u64 {
        self.boundary_flops
    }
}

fn checked_denominator(d: f64, column: usize) -> Result<f64, SpaceError> {
    if !d.is_finite() || d.abs() < f64::MIN_POSITIVE {
        return Err(SpaceError::ZeroDenominator { column });
    }
    Ok(d)
}

/// Ordinary-to-B-basis coordinates via forward recursion from `alpha` and
/// backward recursion from `beta` over cached endpoint derivatives.
///
/// The first and last columns are divided by the computed `b_0(alpha)` and
/// `b_n(beta)`, so `T` stays consistent with the basis as evaluated.
pub fn transformation_matrix(space: &EcSpace) -> Result<TransformationMatrix, SpaceError> {
    let n = space.order();
    let mut t = DenseMatrix::zeros(n + 1, n + 1);
    let mut flops = 0u64;
    let first = checked_denominator(space.b_at_alpha(0, 0), 0)?;
    let last = checked_denominator(space.b_at_beta(n, 0), n)?;
    for j in 0..=n {
        t[(0, j)] = 1.0;
    }
    for i in 1..=n {
        t[(i, 0)] = space.ordinary_at_alpha(i, 0) / first;
        t[(i, n)] = space.ordinary_at_beta(i, 0) / last;
        for j in 1..=n / 2 {
            let d = checked_denominator(space.b_at_alpha(j, j), j)?;
            let mut s = 0.0;
            for k in 0..j {
                s = t[(i, k)].mul_add(space.b_at_alpha(k, j), s);
            }
            t[(i, j)] = (space.ordinary_at_alpha(i, j) - s) / d;
            flops += j as u64 + 2;
        }
        for j in 1..=(n.saturating_sub(1)) / 2 {
            let d = checked_denominator(space.b_at_beta(n - j, j), n - j)?;
            let mut s = 0.0;
            for k in 0..j {
                s = t[(i, n - k)].mul_add(space.b_at_beta(n - k, j), s);
            }
            t[(i, n - j)] = (space.ordinary_at_beta(i, j) - s) / d;
            flops += j as u64 + 2;
        }
    }
    Ok(TransformationMatrix {
        entries: t,
        flops,
        boundary_flops: 2 * n as u64,
    })
}

/// Closed-form operation count of [`transformation_matrix`] as published:
/// `0` for `n ≤ 1`, `n·k·(k+5)` for even `n` and `n·(k²+4k−2)` for odd `n`, `k = ⌊n/2⌋`.
pub fn transformation_flop_count(n: u64) -> u64 {
    if n <= 1 {
        return 0;
    }
    let k = n / 2;
    if n.is_multiple_of(2) {
        n * k * (k + 5)
    } else {
        n * (k * k + 4 * k - 2)
    }
}

/// Operation count summed term by term: `n·(Σ_{j≤⌊n/2⌋}(j+2) + Σ_{j≤⌊(n−1)/2⌋}(j+2))`.
pub fn transformation_flop_sum(n: u64) -> u64 {
    let tail = |m: u64| (1..=m).map(|j| j + 2).sum::<u64>();
    n * (tail(n / 2) + tail(n.saturating_sub(1) / 2))
}

/// Cost of an LU-based solve for `δ` right-hand sides in an `(n+1)`-dimensional space.
pub fn lu_flop_count(n: u64, delta: u64) -> f64 {
    let m = (n + 1) as f64;
    2.0 / 3.0 * m.powi(3) - 0.5 * m * m - m / 6.0 + (2.0 * m * m - m) * delta as f64
}
