use crate::numkernel::{determinant, solve_pivoted, DenseMatrix};

use super::canonical::TaylorCanonical;
use super::ordinary::{ordinary_basis, OrdinaryBasisFunction};
use super::polynomial::CharacteristicPolynomial;
use super::SpaceError;

const BISECTION_TOLERANCE: f64 = 1e-10;

pub fn default_search_cap(alpha: f64) -> f64 {
    8.0 * (alpha.abs() + 1.0)
}

pub fn default_grid_step(search_cap: f64) -> f64 {
    search_cap / 4096.0
}

/// Canonical basis at `alpha` of the space of `p`: functions `c_m` with
/// `c_m^{(j)}(alpha) = δ_{jm}`.
///
/// Close to `alpha` the functions are summed from their Taylor series; further
/// out the closed form is used.
struct CanonicalBasis {
    alpha: f64,
    ordinary: Vec<OrdinaryBasisFunction>,
    coeffs: DenseMatrix,
    series: TaylorCanonical,
}

impl CanonicalBasis {
    fn new(p: &CharacteristicPolynomial, alpha: f64) -> Result<Self, SpaceError> {
        let ordinary = ordinary_basis(p);
        let dim = ordinary.len();
        let mut scale = 1.0;
        let mut scales = Vec::with_capacity(dim);
        for j in 0..dim {
            if j > 0 {
                scale /= j as f64;
            }
            scales.push(scale);
        }
        let w = DenseMatrix::from_fn(dim, dim, |j, k| {
            scales[j] * ordinary[k].derivative(j, alpha)
        });
        let rhs = DenseMatrix::from_fn(dim, dim, |j, m| if j == m { scales[j] } else { 0.0 });
        let coeffs = solve_pivoted(&w, &rhs)
            .map_err(|e| SpaceError::SearchFailed(format!("canonical basis at {alpha}: {e}")))?;
        Ok(Self {
            alpha,
            ordinary,
            coeffs,
            series: TaylorCanonical::new(p),
        })
    }

    /// Wronskian determinant of `c_i, …, c_n` at `u`.
    fn wronskian_tail(&self, i: usize, u: f64) -> f64 {
        let n = self.ordinary.len() - 1;
        let size = n + 1 - i;
        let m = if u - self.alpha <= self.series.radius() {
            DenseMatrix::from_fn(size, size, |j, c| {
                self.series.derivative(i + c, j, u - self.alpha)
            })
        } else {
            let derivs: Vec<Vec<f64>> = (0..size)
                .map(|j| self.ordinary.iter().map(|f| f.derivative(j, u)).collect())
                .collect();
            DenseMatrix::from_fn(size, size, |j, c| {
                derivs[j]
                    .iter()
                    .enumerate()
                    .map(|(k, d)| self.coeffs[(k, i + c)] * d)
                    .sum()
            })
        };
        if !m.is_finite() {
            return f64::NAN;
        }
        determinant(&m).unwrap_or(f64::NAN)
    }
}

/// First sign change of `f` on `(start, start + cap]`, refined by bisection.
fn first_root(
    f: impl Fn(f64) -> f64,
    start: f64,
    cap: f64,
    step: f64,
) -> Result<Option<f64>, SpaceError> {
    let steps = (cap / step).ceil() as usize;
    let mut prev: Option<(f64, f64)> = None;
    for k in 1..=steps {
        let u = start + (k as f64 * step).min(cap);
        let v = f(u);
        if !v.is_finite() {
            return Err(SpaceError::SearchFailed(format!(
                "non-finite Wronskian determinant at u = {u}"
            )));
        }
        if v == 0.0 {
            return Ok(Some(u));
        }
        if let Some((pu, pv)) = prev {
            if pv.signum() != v.signum() {
                let (mut lo, mut hi, mut flo) = (pu, u, pv);
                while hi - lo > BISECTION_TOLERANCE {
                    let mid = 0.5 * (lo + hi);
                    let fm = f(mid);
                    if fm == 0.0 {
                        return Ok(Some(mid));
                    }
                    if !fm.is_finite() {
                        return Err(SpaceError::SearchFailed(format!(
                            "non-finite Wronskian determinant at u = {mid}"
                        )));
                    }
                    if fm.signum() == flo.signum() {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                return Ok(Some(0.5 * (lo + hi)));
            }
        }
        prev = Some((u, v));
    }
    Ok(None)
}

/// Supremum of interval lengths `β - α` on which the space of `p` stays extended Chebyshev.
///
/// Scans the Wronskians of the functions vanishing to order `i > n/2` at `alpha`,
/// for the space itself and, unless it is reflection invariant, for its reflection.
/// Returns `f64::INFINITY` when every zero is real or nothing is found below the cap.
/// Roots are located by sign changes, so zeros of even multiplicity are not seen.
pub fn critical_length(
    p: &CharacteristicPolynomial,
    alpha: f64,
    search_cap: Option<f64>,
    grid_step: Option<f64>,
) -> Result<f64, SpaceError> {
    let cap = search_cap.unwrap_or_else(|| default_search_cap(alpha));
    let step = grid_step.unwrap_or_else(|| default_grid_step(cap));
    if !(cap > 0.0 && step > 0.0) {
        return Err(SpaceError::InvalidSearch {
            search_cap: cap,
            grid_step: step,
        });
    }
    if p.has_only_real_zeros() {
        return Ok(f64::INFINITY);
    }
    let n = p.degree() - 1;
    let mut spaces = vec![p.clone()];
    if !p.is_reflection_invariant() {
        spaces.push(p.reflected());
    }
    let mut best = f64::INFINITY;
    for q in &spaces {
        let canonical = CanonicalBasis::new(q, alpha)?;
        for i in n / 2 + 1..=n {
            let limit = cap.min(best - alpha);
            if limit <= 0.0 {
                continue;
            }
            if let Some(u) = first_root(|u| canonical.wronskian_tail(i, u), alpha, limit, step)? {
                best = best.min(u);
            }
        }
    }
    Ok(if best.is_finite() {
        best - alpha
    } else {
        f64::INFINITY
    })
}

/// Critical length of the derivative space; the B-basis exists for shorter intervals.
pub fn critical_length_for_design(
    p: &CharacteristicPolynomial,
    alpha: f64,
    search_cap: Option<f64>,
    grid_step: Option<f64>,
) -> Result<f64, SpaceError> {
    critical_length(&p.derivative_space()?, alpha, search_cap, grid_step)
}
