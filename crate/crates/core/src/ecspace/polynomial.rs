use num_complex::Complex64;

use super::SpaceError;

/// Zero `a + ib` of a characteristic polynomial; `b > 0` stands for the
/// conjugate pair `a ± ib`, each with multiplicity `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicZero {
    pub re: f64,
    pub im: f64,
    pub mult: usize,
}

impl CharacteristicZero {
    pub fn new(re: f64, im: f64, mult: usize) -> Self {
        Self { re, im, mult }
    }

    pub fn real(re: f64, mult: usize) -> Self {
        Self::new(re, 0.0, mult)
    }

    /// Number of roots this entry contributes to the degree.
    pub fn weight(&self) -> usize {
        if self.im > 0.0 {
            2 * self.mult
        } else {
            self.mult
        }
    }
}

/// Tolerance used when comparing zero locations.
const ZERO_MATCH_TOL: f64 = 1e-12;

fn same_location(x: &CharacteristicZero, re: f64, im: f64) -> bool {
    (x.re - re).abs() <= ZERO_MATCH_TOL * (1.0 + re.abs())
        && (x.im - im).abs() <= ZERO_MATCH_TOL * (1.0 + im.abs())
}

/// Monic real polynomial given by its zero multiset.
///
/// The type itself admits polynomials without a zero root, which describe
/// derivative spaces; [`make_polynomial`] enforces the root at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicPolynomial {
    zeros: Vec<CharacteristicZero>,
}

impl CharacteristicPolynomial {
    /// Normalizes `b ≥ 0`, merges repeated locations and sorts the zeros.
    pub fn new(zeros: &[CharacteristicZero]) -> Result<Self, SpaceError> {
        if zeros.is_empty() {
            return Err(SpaceError::InvalidZero("zero list is empty".into()));
        }
        let mut merged: Vec<CharacteristicZero> = Vec::new();
        for z in zeros {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(SpaceError::InvalidZero(format!(
                    "non-finite zero {} + {}i",
                    z.re, z.im
                )));
            }
            if z.mult == 0 {
                return Err(SpaceError::InvalidZero(format!(
                    "zero {} + {}i has multiplicity 0",
                    z.re, z.im
                )));
            }
            let im = z.im.abs();
            match merged.iter_mut().find(|x| same_location(x, z.re, im)) {
                Some(x) => x.mult += z.mult,
                None => merged.push(CharacteristicZero::new(z.re, im, z.mult)),
            }
        }
        merged.sort_by(|x, y| {
            (x.re.abs() + x.im)
                .total_cmp(&(y.re.abs() + y.im))
                .then(x.re.total_cmp(&y.re))
                .then(x.im.total_cmp(&y.im))
        });
        Ok(Self { zeros: merged })
    }

    pub fn zeros(&self) -> &[CharacteristicZero] {
        &self.zeros
    }

    /// Degree `n+1`, counting conjugate pairs twice.
    pub fn degree(&self) -> usize {
        self.zeros.iter().map(CharacteristicZero::weight).sum()
    }

    /// Multiplicity of the root at the origin.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.multiplicity_at(0.0, 0.0)
    }

    pub fn multiplicity_at(&self, re: f64, im: f64) -> usize {
        self.zeros
            .iter()
            .find(|x| same_location(x, re, im.abs()))
            .map_or(0, |x| x.mult)
    }

    pub fn has_only_real_zeros(&self) -> bool {
        self.zeros.iter().all(|z| z.im == 0.0)
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for x in &self.zeros {
            let root = Complex64::new(x.re, x.im);
            acc *= (z - root).powu(x.mult as u32);
            if x.im > 0.0 {
                acc *= (z - root.conj()).powu(x.mult as u32);
            }
        }
        acc
    }

    /// Real coefficients in ascending powers of `z`.
    pub fn coefficients(&self) -> Vec<f64> {
        let mut coeffs = vec![1.0];
        for x in &self.zeros {
            let factor = if x.im > 0.0 {
                vec![x.re * x.re + x.im * x.im, -2.0 * x.re, 1.0]
            } else {
                vec![-x.re, 1.0]
            };
            for _ in 0..x.mult {
                let mut next = vec![0.0; coeffs.len() + factor.len() - 1];
                for (i, c) in coeffs.iter().enumerate() {
                    for (j, f) in factor.iter().enumerate() {
                        next[i + j] += c * f;
                    }
                }
                coeffs = next;
            }
        }
        coeffs
    }

    /// Every zero of `self` occurs in `other` with at least the same multiplicity.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        self.zeros
            .iter()
            .all(|z| other.multiplicity_at(z.re, z.im) >= z.mult)
    }

    /// Symmetric zero multiset under `z ↦ -z`, i.e. an even or odd polynomial.
    pub fn is_reflection_invariant(&self) -> bool {
        self.zeros
            .iter()
            .all(|z| self.multiplicity_at(-z.re, z.im) == z.mult)
    }

    /// Polynomial with every zero negated, describing the space reflected by `u ↦ -u`.
    pub fn reflected(&self) -> Self {
        let zeros: Vec<_> = self
            .zeros
            .iter()
            .map(|z| CharacteristicZero::new(-z.re, z.im, z.mult))
            .collect();
        Self::new(&zeros).expect("reflection of a valid polynomial")
    }

    /// Polynomial of the derivative space, `p(z)/z`.
    pub fn derivative_space(&self) -> Result<Self, SpaceError> {
        if self.zero_root_multiplicity() == 0 {
            return Err(SpaceError::MissingZeroRoot);
        }
        let zeros: Vec<_> = self
            .zeros
            .iter()
            .filter_map(|z| {
                if same_location(z, 0.0, 0.0) {
                    (z.mult > 1).then(|| CharacteristicZero::new(0.0, 0.0, z.mult - 1))
                } else {
                    Some(*z)
                }
            })
            .collect();
        if zeros.is_empty() {
            return Err(SpaceError::DegreeTooSmall(0));
        }
        Self::new(&zeros)
    }

    /// Polynomial multiplied by the given extra zeros.
    pub fn with_zeros(&self, extra: &[CharacteristicZero]) -> Result<Self, SpaceError> {
        let mut all = self.zeros.clone();
        all.extend_from_slice(extra);
        Self::new(&all)
    }
}

/// Validated characteristic polynomial of an EC space containing the constants.
pub fn make_polynomial(
    zeros: &[CharacteristicZero],
) -> Result<CharacteristicPolynomial, SpaceError> {
    let p = CharacteristicPolynomial::new(zeros)?;
    if p.zero_root_multiplicity() == 0 {
        return Err(SpaceError::MissingZeroRoot);
    }
    if p.degree() < 2 {
        return Err(SpaceError::DegreeTooSmall(p.degree()));
    }
    Ok(p)
}

pub fn is_reflection_invariant(p: &CharacteristicPolynomial) -> bool {
    p.is_reflection_invariant()
}
