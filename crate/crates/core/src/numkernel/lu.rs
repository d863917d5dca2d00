use super::{compensated_dot, DenseMatrix, NumError, ZERO_PIVOT_THRESHOLD};

/// Factors `P·A = L·U` with unit lower-triangular `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct LuFactors {
    pub lower: DenseMatrix,
    pub upper: DenseMatrix,
    /// Row `i` of `P·A` is row `permutation[i]` of `A`.
    pub permutation: Vec<usize>,
}

impl LuFactors {
    /// Parity of the row permutation, +1 or -1.
    pub fn permutation_sign(&self) -> f64 {
        let mut seen = vec![false; self.permutation.len()];
        let mut sign = 1.0;
        for start in 0..self.permutation.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.permutation[k];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

fn require_square(a: &DenseMatrix) -> Result<usize, NumError> {
    if !a.is_square() {
        return Err(NumError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(a.rows())
}

/// Doolittle factorization without row exchanges.
pub fn lu_unpivoted(a: &DenseMatrix) -> Result<LuFactors, NumError> {
    let n = require_square(a)?;
    let tol = ZERO_PIVOT_THRESHOLD * a.max_abs();
    let mut lower = DenseMatrix::identity(n);
    let mut upper = DenseMatrix::zeros(n, n);
    for k in 0..n {
        for j in k..n {
            let s = compensated_dot((0..k).map(|p| (lower[(k, p)], upper[(p, j)])));
            upper[(k, j)] = a[(k, j)] - s;
        }
        let pivot = upper[(k, k)];
        if !(pivot.abs() >= tol) || pivot == 0.0 {
            return Err(NumError::ZeroPivot(k));
        }
        for i in k + 1..n {
            let s = compensated_dot((0..k).map(|p| (lower[(i, p)], upper[(p, k)])));
            lower[(i, k)] = (a[(i, k)] - s) / pivot;
        }
    }
    Ok(LuFactors {
        lower,
        upper,
        permutation: (0..n).collect(),
    })
}

/// Gaussian elimination with partial pivoting; returns `None` for an exactly
/// singular column.
fn lu_partial(a: &DenseMatrix) -> Result<Option<LuFactors>, NumError> {
    let n = require_square(a)?;
    let mut work = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut lower = DenseMatrix::identity(n);
    for k in 0..n {
        let (p, best) = (k..n)
            .map(|i| (i, work[(i, k)].abs()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best == 0.0 || !best.is_finite() {
            return Ok(None);
        }
        if p != k {
            perm.swap(p, k);
            for j in 0..n {
                let t = work[(k, j)];
                work[(k, j)] = work[(p, j)];
                work[(p, j)] = t;
            }
            for j in 0..k {
                let t = lower[(k, j)];
                lower[(k, j)] = lower[(p, j)];
                lower[(p, j)] = t;
            }
        }
        let pivot = work[(k, k)];
        for i in k + 1..n {
            let m = work[(i, k)] / pivot;
            lower[(i, k)] = m;
            work[(i, k)] = 0.0;
            for j in k + 1..n {
                work[(i, j)] -= m * work[(k, j)];
            }
        }
    }
    Ok(Some(LuFactors {
        lower,
        upper: work,
        permutation: perm,
    }))
}

/// Solves `A·X = B` for every column of `B` using partially pivoted LU.
pub fn solve_pivoted(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix, NumError> {
    let n = require_square(a)?;
    if b.rows() != n {
        return Err(NumError::Dimension(format!(
            "right-hand side has {} rows, expected {n}",
            b.rows()
        )));
    }
    let f = lu_partial(a)?.ok_or(NumError::Singular)?;
    let scale = a.max_abs();
    if (0..n).any(|k| f.upper[(k, k)].abs() <= scale * f64::EPSILON * 1e-3) {
        return Err(NumError::Singular);
    }
    let mut x = DenseMatrix::zeros(n, b.cols());
    for c in 0..b.cols() {
        let mut y = vec![0.0; n];
        for i in 0..n {
            let s: f64 = (0..i).map(|j| f.lower[(i, j)] * y[j]).sum();
            y[i] = b[(f.permutation[i], c)] - s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| f.upper[(i, j)] * x[(j, c)]).sum();
            x[(i, c)] = (y[i] - s) / f.upper[(i, i)];
        }
    }
    if !x.is_finite() {
        return Err(NumError::Singular);
    }
    Ok(x)
}

/// Determinant via partially pivoted LU; zero for exactly singular input.
pub fn determinant(a: &DenseMatrix) -> Result<f64, NumError> {
    let n = require_square(a)?;
    Ok(match lu_partial(a)? {
        None => 0.0,
        Some(f) => f.permutation_sign() * (0..n).map(|k| f.upper[(k, k)]).product::<f64>(),
    })
}
