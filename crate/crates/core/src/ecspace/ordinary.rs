use std::fmt::Write;

use super::polynomial::CharacteristicPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Cos,
    Sin,
}

/// `u^r e^{au} cos(bu)` or `u^r e^{au} sin(bu)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrdinaryBasisFunction {
    pub power: usize,
    pub exp_rate: f64,
    pub frequency: f64,
    pub phase: Phase,
}

impl OrdinaryBasisFunction {
    pub fn monomial(power: usize) -> Self {
        Self {
            power,
            exp_rate: 0.0,
            frequency: 0.0,
            phase: Phase::Cos,
        }
    }

    pub fn new(power: usize, exp_rate: f64, frequency: f64, phase: Phase) -> Self {
        assert!(
            !(phase == Phase::Sin && frequency == 0.0),
            "sin phase requires a nonzero frequency"
        );
        Self {
            power,
            exp_rate,
            frequency,
            phase,
        }
    }

    pub fn value(&self, u: f64) -> f64 {
        self.derivative(0, u)
    }

    /// `j`-th derivative at `u` by the Leibniz rule.
    pub fn derivative(&self, j: usize, u: f64) -> f64 {
        let r = self.power;
        let mut sum = 0.0;
        let mut binom = 1.0; // C(j, k)
        let mut falling = 1.0; // r!/(r-k)!
        for k in 0..=j.min(r) {
            if k > 0 {
                binom = binom * (j + 1 - k) as f64 / k as f64;
                falling *= (r + 1 - k) as f64;
            }
            sum += binom * falling * u.powi((r - k) as i32) * self.kernel_derivative(j - k, u);
        }
        sum
    }

    /// `m`-th derivative of `e^{au} trig(bu)`.
    fn kernel_derivative(&self, m: usize, u: f64) -> f64 {
        let (a, b) = (self.exp_rate, self.frequency);
        let e = (a * u).exp();
        if b == 0.0 {
            return a.powi(m as i32) * e;
        }
        let rho = a.hypot(b);
        let theta = b.atan2(a);
        let arg = b * u + m as f64 * theta;
        let trig = match self.phase {
            Phase::Cos => arg.cos(),
            Phase::Sin => arg.sin(),
        };
        rho.powi(m as i32) * e * trig
    }

    /// LaTeX rendering such as `u^{2}e^{4u}\cos(u)`.
    pub fn latex(&self) -> String {
        let mut s = String::new();
        match self.power {
            0 => {}
            1 => s.push('u'),
            r => write!(s, "u^{{{r}}}").unwrap(),
        }
        if self.exp_rate != 0.0 {
            write!(s, "e^{{{}u}}", coefficient(self.exp_rate)).unwrap();
        }
        if self.frequency != 0.0 {
            let name = match self.phase {
                Phase::Cos => "\\cos",
                Phase::Sin => "\\sin",
            };
            write!(s, "{name}({}u)", coefficient(self.frequency)).unwrap();
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

fn coefficient(x: f64) -> String {
    if x == 1.0 {
        String::new()
    } else if x == -1.0 {
        "-".into()
    } else {
        format!("{x}")
    }
}

/// Ordinary basis generated by the zeros of `p`.
///
/// Ordered by `|a|+|b|`, then `a`, then `b`, then the power, cos before sin;
/// the constant function therefore comes first.
pub fn ordinary_basis(p: &CharacteristicPolynomial) -> Vec<OrdinaryBasisFunction> {
    let mut out = Vec::with_capacity(p.degree());
    for z in p.zeros() {
        for r in 0..z.mult {
            if z.im > 0.0 {
                out.push(OrdinaryBasisFunction::new(r, z.re, z.im, Phase::Cos));
                out.push(OrdinaryBasisFunction::new(r, z.re, z.im, Phase::Sin));
            } else {
                out.push(OrdinaryBasisFunction::new(r, z.re, 0.0, Phase::Cos));
            }
        }
    }
    out
}
