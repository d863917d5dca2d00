//! Characteristic polynomials of frequently used EC spaces.

use super::polynomial::{make_polynomial, CharacteristicPolynomial, CharacteristicZero};

fn build(zeros: Vec<CharacteristicZero>) -> CharacteristicPolynomial {
    make_polynomial(&zeros).expect("family polynomials are valid")
}

/// Polynomials of degree at most `n`.
pub fn polynomial(n: usize) -> CharacteristicPolynomial {
    build(vec![CharacteristicZero::real(0.0, n + 1)])
}

/// `{1, cos(ku), sin(ku)}`, `k = 1..=n`.
pub fn trigonometric(n: usize) -> CharacteristicPolynomial {
    let mut zeros = vec![CharacteristicZero::real(0.0, 1)];
    zeros.extend((1..=n).map(|k| CharacteristicZero::new(0.0, k as f64, 1)));
    build(zeros)
}

/// `{1, cosh(ku), sinh(ku)}`, `k = 1..=n`.
pub fn hyperbolic(n: usize) -> CharacteristicPolynomial {
    let mut zeros = vec![CharacteristicZero::real(0.0, 1)];
    for k in 1..=n {
        zeros.push(CharacteristicZero::real(k as f64, 1));
        zeros.push(CharacteristicZero::real(-(k as f64), 1));
    }
    build(zeros)
}

/// `z^{n+1} Π_k (z² + ω_k²)^{n+1-k}` with one frequency per `k = 1..=n`.
pub fn algebraic_trigonometric(n: usize, omegas: &[f64]) -> CharacteristicPolynomial {
    assert_eq!(omegas.len(), n, "one frequency per k");
    let mut zeros = vec![CharacteristicZero::real(0.0, n + 1)];
    zeros.extend(
        omegas
            .iter()
            .enumerate()
            .map(|(k, &w)| CharacteristicZero::new(0.0, w, n - k)),
    );
    build(zeros)
}

/// Polynomials of degree `n` together with `u^r e^{±ω_k u} cos/sin(ω_k u)`, `r ≤ n-k`.
pub fn algebraic_exponential_trigonometric(n: usize, omegas: &[f64]) -> CharacteristicPolynomial {
    assert_eq!(omegas.len(), n, "one frequency per k");
    let mut zeros = vec![CharacteristicZero::real(0.0, n + 1)];
    for (k, &w) in omegas.iter().enumerate() {
        zeros.push(CharacteristicZero::new(w, w, n - k));
        zeros.push(CharacteristicZero::new(-w, w, n - k));
    }
    build(zeros)
}

/// Polynomials of degree `n` together with `cosh/sinh(au)·cos/sin(bu)`.
pub fn mixed_hyperbolic_trigonometric(n: usize, a: f64, b: f64) -> CharacteristicPolynomial {
    build(vec![
        CharacteristicZero::real(0.0, n + 1),
        CharacteristicZero::new(a, b, 1),
        CharacteristicZero::new(-a, b, 1),
    ])
}

/// `z³ (z²+1)² (z²+4)`: `{1, u, u², cos u, sin u, u cos u, u sin u, cos 2u, sin 2u}`.
pub fn example_one() -> CharacteristicPolynomial {
    algebraic_trigonometric(2, &[1.0, 2.0])
}

/// `{1, cos u, sin u, e^u, e^{2u}, e^{4u} cos u, e^{4u} sin u}`.
pub fn example_two() -> CharacteristicPolynomial {
    build(vec![
        CharacteristicZero::real(0.0, 1),
        CharacteristicZero::new(0.0, 1.0, 1),
        CharacteristicZero::real(1.0, 1),
        CharacteristicZero::real(2.0, 1),
        CharacteristicZero::new(4.0, 1.0, 1),
    ])
}

/// Exponential-trigonometric space `{1, e^{w0 u}, e^{w1 u}, cos u, sin u, e^{w0 u} cos u, e^{w0 u} sin u}`.
pub fn exponential_trigonometric(w0: f64, w1: f64) -> CharacteristicPolynomial {
    build(vec![
        CharacteristicZero::real(0.0, 1),
        CharacteristicZero::new(0.0, 1.0, 1),
        CharacteristicZero::real(w0, 1),
        CharacteristicZero::real(w1, 1),
        CharacteristicZero::new(w0, 1.0, 1),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(polynomial(8).degree(), 9);
        assert_eq!(trigonometric(3).degree(), 7);
        assert_eq!(hyperbolic(3).degree(), 7);
        assert_eq!(example_one().degree(), 9);
        assert_eq!(example_two().degree(), 7);
        assert_eq!(algebraic_trigonometric(3, &[1.0, 2.0, 3.0]).degree(), 16);
        assert_eq!(
            algebraic_exponential_trigonometric(2, &[1.0, 2.0]).degree(),
            2 * 4 + 3 * 2 + 1
        );
        assert_eq!(mixed_hyperbolic_trigonometric(0, 1.0, 0.2).degree(), 5);
    }

    #[test]
    fn reflection_invariance() {
        assert!(trigonometric(3).is_reflection_invariant());
        assert!(hyperbolic(3).is_reflection_invariant());
        assert!(algebraic_exponential_trigonometric(2, &[1.0, 2.0]).is_reflection_invariant());
        assert!(mixed_hyperbolic_trigonometric(2, 1.0, 0.2).is_reflection_invariant());
        assert!(!exponential_trigonometric(0.1, 0.2).is_reflection_invariant());
    }
}
