#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::Arc;

use ecbasis::ecspace::{build_space, families, CharacteristicPolynomial, EcSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct TestSpace {
    pub name: &'static str,
    pub polynomial: CharacteristicPolynomial,
    pub alpha: f64,
    pub beta: f64,
}

impl TestSpace {
    pub fn build(&self) -> Arc<EcSpace> {
        Arc::new(build_space(&self.polynomial, self.alpha, self.beta, false, 0).unwrap())
    }
}

pub fn test_spaces() -> Vec<TestSpace> {
    let w0 = 1.0 / (6.0 * PI);
    let w1 = 1.0 / (3.0 * PI);
    vec![
        TestSpace {
            name: "P8",
            polynomial: families::polynomial(8),
            alpha: 0.0,
            beta: 1.0,
        },
        TestSpace {
            name: "T6",
            polynomial: families::trigonometric(3),
            alpha: 0.0,
            beta: 2.0,
        },
        TestSpace {
            name: "H6",
            polynomial: families::hyperbolic(3),
            alpha: 0.0,
            beta: 3.0,
        },
        TestSpace {
            name: "AT8",
            polynomial: families::example_one(),
            alpha: -PI / 2.0,
            beta: PI / 2.0,
        },
        TestSpace {
            name: "ET6",
            polynomial: families::example_two(),
            alpha: -2.0,
            beta: 0.125,
        },
        TestSpace {
            name: "M4",
            polynomial: families::mixed_hyperbolic_trigonometric(0, 1.0, 0.2),
            alpha: 0.0,
            beta: 7.0,
        },
        TestSpace {
            name: "snail ET6",
            polynomial: families::exponential_trigonometric(w0, w1),
            alpha: 11.0 * PI / 2.0,
            beta: 49.0 * PI / 8.0,
        },
    ]
}

pub fn grid(alpha: f64, beta: f64, m: usize) -> Vec<f64> {
    (0..m)
        .map(|k| {
            if k + 1 == m {
                beta
            } else {
                alpha + (beta - alpha) * k as f64 / (m - 1) as f64
            }
        })
        .collect()
}

pub fn random_points(seed: u64, count: usize, dim: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Five-point central difference of `f` at `u`.
pub fn central_difference(f: impl Fn(f64) -> f64, u: f64, h: f64) -> f64 {
    (f(u - 2.0 * h) - 8.0 * f(u - h) + 8.0 * f(u + h) - f(u + 2.0 * h)) / (12.0 * h)
}
