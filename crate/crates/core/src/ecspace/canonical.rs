use super::polynomial::CharacteristicPolynomial;

const TAYLOR_TERMS: usize = 80;

/// Canonical basis at a point `c`: the functions `c_m` with
/// `c_m^{(j)}(c) = δ_{jm}`, summed from Taylor series whose coefficients
/// follow from the ODE of the characteristic polynomial.
#[derive(Debug, Clone)]
pub(crate) struct TaylorCanonical {
    /// `derivs[m][k] = c_m^{(k)}(c)`.
    derivs: Vec<Vec<f64>>,
    radius: f64,
}

impl TaylorCanonical {
    pub(crate) fn new(p: &CharacteristicPolynomial) -> Self {
        let dim = p.degree();
        // y^{(k+dim)} = -Σ_i γ_i y^{(k+i)} for the monic characteristic polynomial.
        let gamma = p.coefficients();
        let derivs = (0..dim)
            .map(|m| {
                let mut d: Vec<f64> = (0..dim).map(|k| if k == m { 1.0 } else { 0.0 }).collect();
                for k in 0..TAYLOR_TERMS {
                    let next = -(0..dim).map(|i| gamma[i] * d[k + i]).sum::<f64>();
                    d.push(next);
                }
                d
            })
            .collect();
        let spectral = p
            .zeros()
            .iter()
            .map(|z| z.re.hypot(z.im))
            .fold(0.0, f64::max);
        Self {
            derivs,
            radius: if spectral > 1.0 { 1.0 / spectral } else { 1.0 },
        }
    }

    /// Offsets `|t| ≤ radius` from the expansion point are summed accurately.
    pub(crate) fn radius(&self) -> f64 {
        self.radius
    }

    /// `c_m^{(j)}(c + t)` for `j < dim`.
    pub(crate) fn derivative(&self, m: usize, j: usize, t: f64) -> f64 {
        let d = &self.derivs[m][j..];
        let mut acc = d[TAYLOR_TERMS - 1];
        for k in (1..TAYLOR_TERMS).rev() {
            acc = d[k - 1] + acc * t / k as f64;
        }
        acc
    }

    pub(crate) fn values(&self, j: usize, t: f64) -> Vec<f64> {
        (0..self.derivs.len())
            .map(|m| self.derivative(m, j, t))
            .collect()
    }
}
