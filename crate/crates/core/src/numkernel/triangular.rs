use super::{compensated_dot, DenseMatrix, NumError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Lower,
    Upper,
}

/// Inverts a triangular matrix column by column by substitution.
///
/// Entries on the opposite side of the diagonal are ignored.
pub fn invert_triangular(
    t: &DenseMatrix,
    orientation: Orientation,
) -> Result<DenseMatrix, NumError> {
    if !t.is_square() {
        return Err(NumError::NotSquare {
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    let n = t.rows();
    if let Some(k) = (0..n).find(|&k| t[(k, k)] == 0.0) {
        return Err(NumError::ZeroDiagonal(k));
    }
    let mut inv = DenseMatrix::zeros(n, n);
    for c in 0..n {
        match orientation {
            Orientation::Lower => {
                for i in c..n {
                    let rhs = if i == c { 1.0 } else { 0.0 };
                    let s = compensated_dot((c..i).map(|k| (t[(i, k)], inv[(k, c)])));
                    inv[(i, c)] = (rhs - s) / t[(i, i)];
                }
            }
            Orientation::Upper => {
                for i in (0..=c).rev() {
                    let rhs = if i == c { 1.0 } else { 0.0 };
                    let s = compensated_dot((i + 1..=c).map(|k| (t[(i, k)], inv[(k, c)])));
                    inv[(i, c)] = (rhs - s) / t[(i, i)];
                }
            }
        }
    }
    if !inv.is_finite() {
        return Err(NumError::Singular);
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_upper() {
        let d = DenseMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 4.0]]).unwrap();
        let inv = invert_triangular(&d, Orientation::Upper).unwrap();
        assert_eq!(inv.to_rows(), vec![vec![0.5, 0.0], vec![0.0, 0.25]]);
    }

    #[test]
    fn unit_bidiagonal_lower() {
        let l = DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![3.0, 1.0]]).unwrap();
        let inv = invert_triangular(&l, Orientation::Lower).unwrap();
        assert_eq!(inv.to_rows(), vec![vec![1.0, 0.0], vec![-3.0, 1.0]]);
    }

    #[test]
    fn zero_diagonal_is_rejected() {
        let u = DenseMatrix::from_rows(&[vec![1.0, 5.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(
            invert_triangular(&u, Orientation::Upper),
            Err(NumError::ZeroDiagonal(1))
        );
    }
}
