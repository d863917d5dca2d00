use crate::numkernel::{
    compensated_dot, condition_svd, invert_triangular, lu_unpivoted, solve_pivoted,
    ConditionReport, DenseMatrix, NumError, Orientation,
};

use super::canonical::TaylorCanonical;
use super::ordinary::{ordinary_basis, OrdinaryBasisFunction, Phase};
use super::polynomial::CharacteristicPolynomial;
use super::SpaceError;

/// Construction settings for [`EcSpace::build`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceOptions {
    /// Abort with [`SpaceError::IllConditioned`] when a stage loses too many digits.
    pub check_conditioning: bool,
    pub expected_digits: u32,
    /// Smallest admissible interval length.
    pub min_length: f64,
}

impl Default for SpaceOptions {
    fn default() -> Self {
        Self {
            check_conditioning: false,
            expected_digits: 6,
            min_length: 1e-6,
        }
    }
}

impl SpaceOptions {
    pub fn checked(expected_digits: u32) -> Self {
        Self {
            check_conditioning: true,
            expected_digits,
            ..Self::default()
        }
    }
}

/// Derivatives of both bases at one endpoint, rows indexed by order.
#[derive(Debug, Clone)]
pub(crate) struct EndpointTable {
    pub ordinary: DenseMatrix,
    pub b: DenseMatrix,
}

impl EndpointTable {
    /// Placeholder until the basis it tabulates is assembled.
    fn pending() -> Self {
        Self {
            ordinary: DenseMatrix::zeros(1, 1),
            b: DenseMatrix::zeros(1, 1),
        }
    }
}

/// EC space on `[alpha, beta]` together with its normalized B-basis.
///
/// Construction and evaluation use a working basis centred at the interval
/// midpoint: the canonical basis there when the half-length is within reach
/// of its Taylor series, the translated ordinary basis otherwise. Coefficient
/// tables are reported in the ordinary basis.
#[derive(Debug, Clone)]
pub struct EcSpace {
    polynomial: CharacteristicPolynomial,
    alpha: f64,
    beta: f64,
    working: WorkingBasis,
    ordinary: Vec<OrdinaryBasisFunction>,
    rho: DenseMatrix,
    mu: DenseMatrix,
    lambda_col: Vec<f64>,
    b_coeffs: DenseMatrix,
    rho_local: DenseMatrix,
    b_local: DenseMatrix,
    reflection_invariant: bool,
    condition_reports: Vec<ConditionReport>,
    pub(crate) at_alpha: EndpointTable,
    pub(crate) at_beta: EndpointTable,
}

/// Row scale `h^j / j!` that equilibrates derivative orders on an interval of length `h`.
fn order_scales(n: usize, h: f64) -> Vec<f64> {
    let mut s = Vec::with_capacity(n + 1);
    let mut acc = 1.0;
    for j in 0..=n {
        if j > 0 {
            acc *= h / j as f64;
        }
        s.push(acc);
    }
    s
}

/// Scales every column to unit max-norm; returns the scaled matrix and the
/// factors that map a solution of the scaled system back.
fn equilibrate_columns(a: &DenseMatrix) -> (DenseMatrix, Vec<f64>) {
    let factors: Vec<f64> = (0..a.cols())
        .map(|j| {
            let m = a.col(j).iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if m > 0.0 {
                1.0 / m
            } else {
                1.0
            }
        })
        .collect();
    (
        DenseMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)] * factors[j]),
        factors,
    )
}

fn ordinary_derivatives(basis: &[OrdinaryBasisFunction], j: usize, u: f64) -> Vec<f64> {
    basis.iter().map(|f| f.derivative(j, u)).collect()
}

fn combine(coeffs: &[f64], values: &[f64]) -> f64 {
    compensated_dot(coeffs.iter().copied().zip(values.iter().copied()))
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, r| acc * (n - r) as f64 / (r + 1) as f64)
}

/// Row `k` expresses `φ_k(u - c)` in the basis `φ`.
fn translation_matrix(basis: &[OrdinaryBasisFunction], c: f64) -> DenseMatrix {
    let dim = basis.len();
    let index = |power: usize, f: &OrdinaryBasisFunction, phase: Phase| {
        basis
            .iter()
            .position(|g| {
                g.power == power
                    && g.phase == phase
                    && g.exp_rate == f.exp_rate
                    && g.frequency == f.frequency
            })
            .expect("ordinary bases are closed under translation")
    };
    let mut t = DenseMatrix::zeros(dim, dim);
    for (k, f) in basis.iter().enumerate() {
        let damp = (-f.exp_rate * c).exp();
        let (sn, cs) = (f.frequency * c).sin_cos();
        // (cos, sin) weights of trig(b(u - c)) in cos(bu), sin(bu)
        let trig = match (f.frequency == 0.0, f.phase) {
            (true, _) => [1.0, 0.0],
            (false, Phase::Cos) => [cs, sn],
            (false, Phase::Sin) => [-sn, cs],
        };
        for s in 0..=f.power {
            let w = damp * binomial(f.power, s) * (-c).powi((f.power - s) as i32);
            t[(k, index(s, f, Phase::Cos))] += w * trig[0];
            if trig[1] != 0.0 {
                t[(k, index(s, f, Phase::Sin))] += w * trig[1];
            }
        }
    }
    t
}

#[derive(Debug, Clone)]
enum WorkingBasis {
    /// `φ_k(u - center)`.
    Translated { center: f64 },
    /// Canonical functions at `center`.
    Canonical {
        center: f64,
        series: TaylorCanonical,
    },
}

impl WorkingBasis {
    fn new(p: &CharacteristicPolynomial, alpha: f64, beta: f64) -> Self {
        let center = 0.5 * (alpha + beta);
        let series = TaylorCanonical::new(p);
        if 0.5 * (beta - alpha) <= series.radius() {
            Self::Canonical { center, series }
        } else {
            Self::Translated { center }
        }
    }

    fn values(&self, ordinary: &[OrdinaryBasisFunction], j: usize, u: f64) -> Vec<f64> {
        match self {
            Self::Translated { center } => ordinary_derivatives(ordinary, j, u - center),
            Self::Canonical { center, series } => series.values(j, u - center),
        }
    }

    /// Row `k` expresses working function `k` in the ordinary basis.
    fn to_ordinary(&self, ordinary: &[OrdinaryBasisFunction]) -> Result<DenseMatrix, NumError> {
        match self {
            Self::Translated { center } => Ok(translation_matrix(ordinary, *center)),
            Self::Canonical { center, .. } => {
                let dim = ordinary.len();
                let scales = order_scales(dim - 1, 1.0);
                let w = DenseMatrix::from_fn(dim, dim, |j, k| {
                    scales[j] * ordinary[k].derivative(j, 0.0)
                });
                let rhs =
                    DenseMatrix::from_fn(dim, dim, |j, m| if j == m { scales[j] } else { 0.0 });
                let local = solve_pivoted(&w, &rhs)?.transpose();
                local.matmul(&translation_matrix(ordinary, *center))
            }
        }
    }
}

impl EcSpace {
    pub fn build(
        p: &CharacteristicPolynomial,
        alpha: f64,
        beta: f64,
        options: &SpaceOptions,
    ) -> Result<Self, SpaceError> {
        if p.zero_root_multiplicity() == 0 {
            return Err(SpaceError::MissingZeroRoot);
        }
        if p.degree() < 2 {
            return Err(SpaceError::DegreeTooSmall(p.degree()));
        }
        if !(alpha.is_finite() && beta.is_finite()) || !(beta - alpha >= options.min_length) {
            return Err(SpaceError::InvalidInterval { alpha, beta });
        }
        let ordinary = ordinary_basis(p);
        let dim = ordinary.len();
        let n = dim - 1;
        let working = WorkingBasis::new(p, alpha, beta);
        let scales = order_scales(n, beta - alpha);
        let mut reports = Vec::new();
        let record = |matrix: &DenseMatrix, label: String, reports: &mut Vec<ConditionReport>| {
            let report = match condition_svd(matrix, &label) {
                Ok(r) => r,
                Err(NumError::RankDeficient { report, .. }) => report,
                Err(e) => {
                    return Err(SpaceError::Numerical {
                        stage: label,
                        source: e,
                    })
                }
            };
            if options.check_conditioning
                && report.estimated_correct_digits < options.expected_digits
            {
                return Err(SpaceError::IllConditioned {
                    stage: label,
                    report,
                });
            }
            reports.push(report);
            Ok(())
        };

        let phi_alpha: Vec<Vec<f64>> = (0..=n)
            .map(|j| working.values(&ordinary, j, alpha))
            .collect();
        let phi_beta: Vec<Vec<f64>> = (0..=n)
            .map(|j| working.values(&ordinary, j, beta))
            .collect();

        // Bicanonical basis: one boundary-value system per function.
        let mut rho = DenseMatrix::zeros(dim, dim);
        for i in 0..=n {
            let mut rows = Vec::with_capacity(dim);
            for j in 0..=i {
                rows.push(
                    phi_alpha[j]
                        .iter()
                        .map(|x| scales[j] * x)
                        .collect::<Vec<_>>(),
                );
            }
            for j in 0..n - i {
                rows.push(
                    phi_beta[j]
                        .iter()
                        .map(|x| scales[j] * x)
                        .collect::<Vec<_>>(),
                );
            }
            let stage = format!("bicanonical system {i}");
            let a = DenseMatrix::from_rows(&rows).map_err(|e| SpaceError::Numerical {
                stage: stage.clone(),
                source: e,
            })?;
            let (a, col_scales) = equilibrate_columns(&a);
            record(&a, stage.clone(), &mut reports)?;
            let mut rhs = vec![0.0; dim];
            rhs[i] = scales[i];
            let solve = |b: &[f64]| {
                solve_pivoted(&a, &DenseMatrix::column(b))
                    .map(|x| x.col(0))
                    .map_err(|e| SpaceError::Numerical {
                        stage: stage.clone(),
                        source: e,
                    })
            };
            let mut x = solve(&rhs)?;
            // one refinement step against a compensated residual
            let residual: Vec<f64> = (0..dim).map(|r| rhs[r] - combine(a.row(r), &x)).collect();
            for (xk, dk) in x.iter_mut().zip(solve(&residual)?) {
                *xk += dk;
            }
            for k in 0..dim {
                rho[(i, k)] = x[k] * col_scales[k];
            }
        }

        // Wronskian of the reversed bicanonical system at beta, with v_k taken
        // as (h^k/k!)·v_k so that all columns are of unit size.
        let stage = "reversed Wronskian".to_string();
        let wronskian = DenseMatrix::from_fn(dim, dim, |j, c| {
            if j < c {
                0.0
            } else {
                scales[j] * combine(rho.row(n - c), &phi_beta[j]) / scales[n - c]
            }
        });
        if !wronskian.is_finite() {
            return Err(SpaceError::Numerical {
                stage,
                source: NumError::Singular,
            });
        }
        record(&wronskian, stage.clone(), &mut reports)?;
        let lu = lu_unpivoted(&wronskian).map_err(|e| match e {
            NumError::ZeroPivot(k) => SpaceError::ZeroPivot {
                stage: stage.clone(),
                index: k,
            },
            other => SpaceError::Numerical {
                stage: stage.clone(),
                source: other,
            },
        })?;
        record(&lu.lower, "lower factor".into(), &mut reports)?;
        record(&lu.upper, "upper factor".into(), &mut reports)?;
        let lower_inv = invert_triangular(&lu.lower, Orientation::Lower).map_err(|e| {
            SpaceError::Numerical {
                stage: "lower factor inverse".into(),
                source: e,
            }
        })?;
        let mu = invert_triangular(&lu.upper, Orientation::Upper).map_err(|e| {
            SpaceError::Numerical {
                stage: "upper factor inverse".into(),
                source: e,
            }
        })?;
        let lambda_col = lower_inv.col(0);

        // b_{n-i} = λ_i Σ_{r≤i} μ_{r,i} v_{n-r}
        let mut b_coeffs = DenseMatrix::zeros(dim, dim);
        for i in 0..=n {
            for k in 0..dim {
                let s: f64 = (0..=i)
                    .map(|r| mu[(r, i)] * rho[(n - r, k)] / scales[n - r])
                    .sum();
                b_coeffs[(n - i, k)] = lambda_col[i] * s;
            }
        }
        if !b_coeffs.is_finite() {
            return Err(SpaceError::Numerical {
                stage: "B-basis assembly".into(),
                source: NumError::Singular,
            });
        }

        let shift = working
            .to_ordinary(&ordinary)
            .map_err(|e| SpaceError::Numerical {
                stage: "working basis".into(),
                source: e,
            })?;
        let to_ordinary = |m: &DenseMatrix| m.matmul(&shift).expect("square tables");

        let mut space = Self {
            polynomial: p.clone(),
            alpha,
            beta,
            working,
            rho: to_ordinary(&rho),
            mu,
            lambda_col,
            b_coeffs: to_ordinary(&b_coeffs),
            rho_local: rho,
            b_local: b_coeffs,
            ordinary,
            reflection_invariant: p.is_reflection_invariant(),
            condition_reports: reports,
            at_alpha: EndpointTable::pending(),
            at_beta: EndpointTable::pending(),
        };
        space.at_alpha = space.endpoint_table(alpha);
        space.at_beta = space.endpoint_table(beta);
        Ok(space)
    }

    fn endpoint_table(&self, u: f64) -> EndpointTable {
        let n = self.order();
        let ordinary: Vec<Vec<f64>> = (0..=n).map(|j| self.ordinary_values(j, u)).collect();
        let b: Vec<Vec<f64>> = (0..=n).map(|j| self.b_values_at(j, u)).collect();
        EndpointTable {
            ordinary: DenseMatrix::from_rows(&ordinary).expect("finite endpoint derivatives"),
            b: DenseMatrix::from_rows(&b).expect("finite endpoint derivatives"),
        }
    }

    pub fn polynomial(&self) -> &CharacteristicPolynomial {
        &self.polynomial
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Order `n`; the space has dimension `n+1`.
    pub fn order(&self) -> usize {
        self.ordinary.len() - 1
    }

    pub fn dimension(&self) -> usize {
        self.ordinary.len()
    }

    pub fn ordinary(&self) -> &[OrdinaryBasisFunction] {
        &self.ordinary
    }

    /// Bicanonical coefficients, row `i` expresses `v_i` in the ordinary basis.
    pub fn rho(&self) -> &DenseMatrix {
        &self.rho
    }

    /// Inverse of the upper LU factor of the reversed Wronskian.
    pub fn mu(&self) -> &DenseMatrix {
        &self.mu
    }

    /// First column of the inverse lower LU factor.
    pub fn lambda_col(&self) -> &[f64] {
        &self.lambda_col
    }

    /// Row `i` expresses `b_i` in the ordinary basis.
    pub fn b_coeffs(&self) -> &DenseMatrix {
        &self.b_coeffs
    }

    pub fn reflection_invariant(&self) -> bool {
        self.reflection_invariant
    }

    pub fn condition_reports(&self) -> &[ConditionReport] {
        &self.condition_reports
    }

    /// Largest condition number over all construction stages.
    pub fn max_condition_number(&self) -> f64 {
        self.condition_reports
            .iter()
            .map(|r| r.condition_number)
            .fold(1.0, f64::max)
    }

    pub fn latex_ordinary_basis(&self) -> Vec<String> {
        self.ordinary
            .iter()
            .map(OrdinaryBasisFunction::latex)
            .collect()
    }

    /// Position of an ordinary basis function, if it belongs to the space.
    pub fn ordinary_index(&self, f: &OrdinaryBasisFunction) -> Option<usize> {
        self.ordinary.iter().position(|g| {
            g.power == f.power
                && g.phase == f.phase
                && (g.exp_rate - f.exp_rate).abs() < 1e-12
                && (g.frequency - f.frequency).abs() < 1e-12
        })
    }

    /// Domain check allowing a rounding-level overshoot; returns the clamped parameter.
    pub(crate) fn clamp_domain(&self, u: f64) -> Result<f64, SpaceError> {
        let slack = 1e-12 * self.alpha.abs().max(self.beta.abs()).max(1.0);
        if !(u >= self.alpha - slack && u <= self.beta + slack) {
            return Err(SpaceError::OutOfDomain {
                u,
                alpha: self.alpha,
                beta: self.beta,
            });
        }
        Ok(u.clamp(self.alpha, self.beta))
    }

    pub fn eval_ordinary(&self, k: usize, j: usize, u: f64) -> f64 {
        self.ordinary[k].derivative(j, u)
    }

    /// All ordinary basis derivatives of order `j` at `u`.
    pub fn ordinary_values(&self, j: usize, u: f64) -> Vec<f64> {
        ordinary_derivatives(&self.ordinary, j, u)
    }

    fn local_values(&self, j: usize, u: f64) -> Vec<f64> {
        self.working.values(&self.ordinary, j, u)
    }

    /// `b_i^{(j)}(u)`; mirrored halves of reflection-invariant spaces use the symmetry relation.
    pub fn eval_b_basis(&self, i: usize, j: usize, u: f64) -> Result<f64, SpaceError> {
        let n = self.order();
        if i > n {
            return Err(SpaceError::IndexOutOfRange {
                index: i,
                dimension: n + 1,
            });
        }
        let u = self.clamp_domain(u)?;
        if self.reflection_invariant && i > n / 2 {
            let mirrored = self.alpha + self.beta - u;
            let v = combine(self.b_local.row(n - i), &self.local_values(j, mirrored));
            return Ok(if j.is_multiple_of(2) { v } else { -v });
        }
        Ok(combine(self.b_local.row(i), &self.local_values(j, u)))
    }

    /// `b_i^{(j)}(u)` straight from the coefficient table, ignoring symmetry.
    pub fn eval_b_basis_direct(&self, i: usize, j: usize, u: f64) -> Result<f64, SpaceError> {
        if i > self.order() {
            return Err(SpaceError::IndexOutOfRange {
                index: i,
                dimension: self.dimension(),
            });
        }
        let u = self.clamp_domain(u)?;
        Ok(combine(self.b_local.row(i), &self.local_values(j, u)))
    }

    /// All `b_i^{(j)}(u)` at once.
    pub fn b_values(&self, j: usize, u: f64) -> Result<Vec<f64>, SpaceError> {
        let u = self.clamp_domain(u)?;
        Ok(self.b_values_at(j, u))
    }

    fn b_values_at(&self, j: usize, u: f64) -> Vec<f64> {
        let n = self.order();
        let phi = self.local_values(j, u);
        let mirrored = self
            .reflection_invariant
            .then(|| self.local_values(j, self.alpha + self.beta - u));
        (0..=n)
            .map(|i| match &mirrored {
                Some(psi) if i > n / 2 => {
                    let v = combine(self.b_local.row(n - i), psi);
                    if j.is_multiple_of(2) {
                        v
                    } else {
                        -v
                    }
                }
                _ => combine(self.b_local.row(i), &phi),
            })
            .collect()
    }

    /// `v_i^{(j)}(u)` of the bicanonical basis.
    pub fn eval_bicanonical(&self, i: usize, j: usize, u: f64) -> f64 {
        combine(self.rho_local.row(i), &self.local_values(j, u))
    }

    /// `b_i^{(j)}` at `alpha`, cached for `j ≤ n`.
    pub fn b_at_alpha(&self, i: usize, j: usize) -> f64 {
        self.at_alpha.b[(j, i)]
    }

    /// `b_i^{(j)}` at `beta`, cached for `j ≤ n`.
    pub fn b_at_beta(&self, i: usize, j: usize) -> f64 {
        self.at_beta.b[(j, i)]
    }

    pub fn ordinary_at_alpha(&self, k: usize, j: usize) -> f64 {
        self.at_alpha.ordinary[(j, k)]
    }

    pub fn ordinary_at_beta(&self, k: usize, j: usize) -> f64 {
        self.at_beta.ordinary[(j, k)]
    }

    /// B-basis from the normalizing-coefficient recursion applied to the
    /// bicanonical basis, in ordinary-basis coordinates.
    pub fn alternative_b_coefficients(&self) -> DenseMatrix {
        let dim = self.dimension();
        let v_alpha =
            |r: usize, i: usize| combine(self.rho_local.row(r), &self.local_values(i, self.alpha));
        let mut c = vec![0.0; dim];
        c[0] = 1.0;
        for i in 1..dim {
            c[i] = -(0..i).map(|r| c[r] * v_alpha(r, i)).sum::<f64>();
        }
        DenseMatrix::from_fn(dim, dim, |i, k| c[i] * self.rho[(i, k)])
    }

    /// Same space restricted or extended to another interval.
    pub fn rebuild_on(
        &self,
        alpha: f64,
        beta: f64,
        options: &SpaceOptions,
    ) -> Result<Self, SpaceError> {
        Self::build(&self.polynomial, alpha, beta, options)
    }
}

/// Builds the EC space of `p` on `[alpha, beta]`.
pub fn build_space(
    p: &CharacteristicPolynomial,
    alpha: f64,
    beta: f64,
    check_conditioning: bool,
    expected_digits: u32,
) -> Result<EcSpace, SpaceError> {
    let options = SpaceOptions {
        check_conditioning,
        expected_digits,
        ..SpaceOptions::default()
    };
    EcSpace::build(p, alpha, beta, &options)
}
