use super::{DenseMatrix, NumError};

/// Condition number of one linear-algebra stage and the number of decimal
/// digits a solve with that matrix can be trusted to.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub condition_number: f64,
    pub estimated_correct_digits: u32,
    pub stage_label: String,
}

impl ConditionReport {
    pub fn new(condition_number: f64, stage_label: impl Into<String>) -> Self {
        Self {
            condition_number,
            estimated_correct_digits: correct_digits(condition_number),
            stage_label: stage_label.into(),
        }
    }
}

fn correct_digits(condition_number: f64) -> u32 {
    if !condition_number.is_finite() {
        return 0;
    }
    let d = (-(condition_number * f64::EPSILON).log10()).floor();
    if d > 0.0 {
        d as u32
    } else {
        0
    }
}

const JACOBI_TOLERANCE: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;

/// Singular values in descending order, by cyclic one-sided Jacobi rotations.
pub fn singular_values(a: &DenseMatrix) -> Vec<f64> {
    // Orthogonalize the columns of the taller orientation.
    let work = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.transpose()
    };
    let (m, n) = (work.rows(), work.cols());
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| work.col(j)).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|x| x * x).sum();
                let beta: f64 = cols[q].iter().map(|x| x * x).sum();
                let gamma: f64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x * y).sum();
                if gamma == 0.0 || gamma.abs() <= JACOBI_TOLERANCE * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let x = cols[p][i];
                    let y = cols[q][i];
                    cols[p][i] = c * x - s * y;
                    cols[q][i] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sigma: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    sigma.sort_by(|x, y| y.total_cmp(x));
    sigma
}

/// Condition number `σ_max/σ_min` of a matrix.
pub fn condition_svd(a: &DenseMatrix, stage_label: &str) -> Result<ConditionReport, NumError> {
    let sigma = singular_values(a);
    let max = sigma[0];
    let min = *sigma.last().expect("nonempty matrix");
    if min < 1e-300 {
        return Err(NumError::RankDeficient {
            sigma_min: min,
            report: ConditionReport::new(f64::INFINITY, stage_label),
        });
    }
    Ok(ConditionReport::new(max / min, stage_label))
}
