mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use common::{central_difference, grid, test_spaces};
use ecbasis::ecspace::{
    build_space, critical_length, critical_length_for_design, families, lu_flop_count,
    make_polynomial, ordinary_basis, transformation_flop_count, transformation_flop_sum,
    transformation_matrix, CharacteristicZero, OrdinaryBasisFunction, Phase, SpaceError,
    SpaceOptions,
};
use ecbasis::EcSpace;
use num_complex::Complex64;
use proptest::prelude::*;

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, r| acc * (n - r) as f64 / (r + 1) as f64)
}

#[test]
fn example_polynomials() {
    let p1 = families::example_one();
    assert_eq!(p1.degree(), 9);
    assert!(p1.evaluate(Complex64::new(0.0, 0.0)).norm() == 0.0);
    assert!((p1.evaluate(Complex64::new(1.0, 0.0)) - Complex64::new(20.0, 0.0)).norm() < 1e-12);
    assert!(p1.is_reflection_invariant());
    let p2 = families::example_two();
    assert_eq!(p2.degree(), 7);
    assert!(!p2.is_reflection_invariant());
    assert!(matches!(
        make_polynomial(&[CharacteristicZero::new(0.0, 1.0, 1)]),
        Err(SpaceError::MissingZeroRoot)
    ));
}

#[test]
fn example_bases_in_published_order() {
    let latex = |p: ecbasis::CharacteristicPolynomial| {
        ordinary_basis(&p)
            .iter()
            .map(OrdinaryBasisFunction::latex)
            .collect::<Vec<_>>()
    };
    assert_eq!(
        latex(families::example_one()),
        [
            "1",
            "u",
            "u^{2}",
            "\\cos(u)",
            "\\sin(u)",
            "u\\cos(u)",
            "u\\sin(u)",
            "\\cos(2u)",
            "\\sin(2u)"
        ]
    );
    assert_eq!(
        latex(families::example_two()),
        [
            "1",
            "\\cos(u)",
            "\\sin(u)",
            "e^{u}",
            "e^{2u}",
            "e^{4u}\\cos(u)",
            "e^{4u}\\sin(u)"
        ]
    );
}

#[test]
fn ordinary_derivative_against_finite_difference() {
    let f = OrdinaryBasisFunction::new(2, 1.0, 3.0, Phase::Sin);
    let analytic = f.derivative(4, 0.7);
    let fd = central_difference(|u| f.derivative(3, u), 0.7, 1e-4);
    assert!((analytic - fd).abs() <= 1e-6 * analytic.abs());
    let e = OrdinaryBasisFunction::new(0, 2.0, 0.0, Phase::Cos);
    assert!((e.derivative(3, 1.0) - 8.0 * 1f64.exp().powi(2)).abs() < 1e-12);
}

#[test]
fn bernstein_recovery_up_to_degree_ten() {
    for n in 1..=10 {
        let s = build_space(&families::polynomial(n), 0.0, 1.0, false, 0).unwrap();
        for &u in &grid(0.0, 1.0, 1001) {
            let b = s.b_values(0, u).unwrap();
            for (i, v) in b.iter().enumerate() {
                let exact = binomial(n, i) * u.powi(i as i32) * (1.0 - u).powi((n - i) as i32);
                assert!((v - exact).abs() < 1e-9, "n={n} i={i} u={u}");
            }
        }
    }
}

#[test]
fn trigonometric_closed_form() {
    let s = build_space(&families::trigonometric(1), 0.0, FRAC_PI_2, false, 0).unwrap();
    assert!((s.eval_b_basis(0, 0, FRAC_PI_4).unwrap() - (1.0 - 2f64.sqrt() / 2.0)).abs() < 1e-12);
    assert!((s.eval_b_basis(1, 0, FRAC_PI_4).unwrap() - (2f64.sqrt() - 1.0)).abs() < 1e-12);
    assert!((s.eval_b_basis(0, 1, 0.0).unwrap() + 1.0).abs() < 1e-12);
    assert!((s.eval_b_basis(1, 1, 0.0).unwrap() - 1.0).abs() < 1e-12);
    let delta = FRAC_PI_2;
    for &u in &grid(0.0, delta, 101) {
        let oracle = ((delta - u) / 2.0).sin().powi(2) / (delta / 2.0).sin().powi(2);
        assert!((s.eval_b_basis(0, 0, u).unwrap() - oracle).abs() < 1e-12);
    }
}

#[test]
fn partition_of_unity_and_nonnegativity() {
    for t in test_spaces() {
        let s = t.build();
        for &u in &grid(t.alpha, t.beta, 1001) {
            let b = s.b_values(0, u).unwrap();
            assert!(
                (b.iter().sum::<f64>() - 1.0).abs() <= 1e-8,
                "{} at {u}",
                t.name
            );
            assert!(b.iter().all(|&v| v >= -1e-10), "{} negative at {u}", t.name);
            assert!(
                s.b_values(1, u).unwrap().iter().sum::<f64>().abs() < 1e-6,
                "{}",
                t.name
            );
        }
    }
}

#[test]
fn endpoint_hermite_conditions() {
    for t in test_spaces() {
        let s = t.build();
        let n = s.order();
        for i in 0..=n {
            let at_alpha: Vec<f64> = (0..=i)
                .map(|j| s.eval_b_basis(i, j, t.alpha).unwrap())
                .collect();
            let scale = at_alpha.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(at_alpha[i] > 0.0, "{} i={i}", t.name);
            assert!(
                at_alpha[..i].iter().all(|v| v.abs() <= 1e-6 * scale),
                "{} i={i}: {at_alpha:?}",
                t.name
            );
            let at_beta: Vec<f64> = (0..=n - i)
                .map(|j| s.eval_b_basis(i, j, t.beta).unwrap())
                .collect();
            let scale = at_beta.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let sign = if (n - i) % 2 == 0 { 1.0 } else { -1.0 };
            assert!(sign * at_beta[n - i] > 0.0, "{} i={i}", t.name);
            assert!(
                at_beta[..n - i].iter().all(|v| v.abs() <= 1e-6 * scale),
                "{} i={i}: {at_beta:?}",
                t.name
            );
        }
    }
}

#[test]
fn reflection_symmetry() {
    for t in test_spaces()
        .into_iter()
        .filter(|t| t.polynomial.is_reflection_invariant())
    {
        let s = t.build();
        let n = s.order();
        for &u in &grid(t.alpha, t.beta, 1001) {
            for i in 0..=n / 2 {
                let lhs = s.eval_b_basis_direct(i, 0, u).unwrap();
                let rhs = s
                    .eval_b_basis_direct(n - i, 0, t.alpha + t.beta - u)
                    .unwrap();
                assert!((lhs - rhs).abs() <= 1e-8, "{} i={i} u={u}", t.name);
            }
        }
    }
}

#[test]
fn derivatives_against_finite_differences() {
    for t in test_spaces() {
        let s = t.build();
        let h = 1e-3 * (t.beta - t.alpha);
        let inner = grid(
            t.alpha + 0.05 * (t.beta - t.alpha),
            t.beta - 0.05 * (t.beta - t.alpha),
            50,
        );
        for &u in &inner {
            for j in 1..=3 {
                for i in 0..=s.order() {
                    let analytic = s.eval_b_basis(i, j, u).unwrap();
                    let fd = central_difference(|x| s.eval_b_basis(i, j - 1, x).unwrap(), u, h);
                    let scale = analytic.abs().max((t.beta - t.alpha).powi(-(j as i32)));
                    assert!(
                        (analytic - fd).abs() <= 1e-5 * scale,
                        "{} i={i} j={j} u={u}: {analytic} vs {fd}",
                        t.name
                    );
                }
            }
        }
    }
}

fn alternative_deviation(s: &EcSpace, u: f64) -> f64 {
    let alt = s.alternative_b_coefficients();
    let phi = s.ordinary_values(0, u);
    (0..s.dimension())
        .map(|i| {
            let v: f64 = alt.row(i).iter().zip(&phi).map(|(c, p)| c * p).sum();
            (v - s.eval_b_basis_direct(i, 0, u).unwrap()).abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn dual_construction_agrees() {
    for t in test_spaces()
        .into_iter()
        .filter(|t| t.polynomial.degree() <= 10)
    {
        let s = t.build();
        let worst = grid(t.alpha, t.beta, 1001)
            .iter()
            .map(|&u| alternative_deviation(&s, u))
            .fold(0.0, f64::max);
        assert!(worst <= 1e-6, "{}: {worst:e}", t.name);
    }
}

#[test]
fn alternative_normalizers_of_p2() {
    let s = build_space(&families::polynomial(2), 0.0, 1.0, false, 0).unwrap();
    let alt = s.alternative_b_coefficients();
    // Bernstein in monomial coordinates
    let expected = [[1.0, -2.0, 1.0], [0.0, 2.0, -2.0], [0.0, 0.0, 1.0]];
    for i in 0..3 {
        for k in 0..3 {
            assert!((alt[(i, k)] - expected[i][k]).abs() < 1e-12);
        }
    }
}

#[test]
fn transformation_identity() {
    for t in test_spaces() {
        let s = t.build();
        let tm = transformation_matrix(&s).unwrap();
        for i in 0..s.dimension() {
            assert_eq!(tm.get(0, i), 1.0);
        }
        for &u in &grid(t.alpha, t.beta, 101) {
            let b = s.b_values(0, u).unwrap();
            let mapped = tm.entries().mul_vec(&b);
            let phi = s.ordinary_values(0, u);
            let err = mapped
                .iter()
                .zip(&phi)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            assert!(err <= 1e-8, "{} at {u}: {err:e}", t.name);
        }
    }
}

#[test]
fn trigonometric_transformation_rows() {
    let s = build_space(&families::trigonometric(1), 0.0, FRAC_PI_2, false, 0).unwrap();
    let tm = transformation_matrix(&s).unwrap();
    let rows = tm.entries().to_rows();
    for (got, want) in rows[1].iter().zip([1.0, 1.0, 0.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    for (got, want) in rows[2].iter().zip([0.0, 1.0, 1.0]) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn instrumented_flops_follow_the_term_sum() {
    for n in 2..=12usize {
        let s = build_space(&families::polynomial(n), 0.0, 1.0, false, 0).unwrap();
        assert_eq!(
            transformation_matrix(&s).unwrap().flop_count(),
            transformation_flop_sum(n as u64)
        );
        for delta in 1..=3 {
            assert!((transformation_flop_count(n as u64) as f64) < lu_flop_count(n as u64, delta));
        }
    }
}

#[test]
fn published_flop_formula_values() {
    let values: Vec<u64> = [0, 1, 2, 3, 4, 5]
        .iter()
        .map(|&n| transformation_flop_count(n))
        .collect();
    assert_eq!(values, [0, 0, 12, 9, 56, 50]);
}

#[test]
fn critical_lengths() {
    let m = families::mixed_hyperbolic_trigonometric(0, 1.0, 0.2);
    let l = critical_length_for_design(&m, 0.0, Some(32.0), None).unwrap();
    assert!((l - 16.694941067922716).abs() < 1e-6, "{l}");
    assert!(l > PI / 0.2 && l < 1.5 * PI / 0.2);
    let t2 = families::trigonometric(1);
    assert!((critical_length_for_design(&t2, 0.0, None, None).unwrap() - PI).abs() < 1e-6);
    let cubic = families::polynomial(3);
    assert!(critical_length(&cubic, 0.0, None, None)
        .unwrap()
        .is_infinite());
    assert!(critical_length_for_design(&cubic, 0.0, None, None)
        .unwrap()
        .is_infinite());
}

#[test]
fn critical_length_is_translation_invariant() {
    let p = families::trigonometric(2);
    let a = critical_length_for_design(&p, 0.0, None, None).unwrap();
    let b = critical_length_for_design(&p, 3.0, Some(8.0), None).unwrap();
    assert!((a - b).abs() < 1e-8, "{a} vs {b}");
}

#[test]
fn condition_reports_grow_with_degree() {
    let mut previous = 0.0;
    for n in 1..=15 {
        let s = EcSpace::build(
            &families::polynomial(n),
            0.0,
            1.0,
            &SpaceOptions::checked(6),
        )
        .unwrap();
        let k = s.max_condition_number();
        assert!(k > previous, "n={n}");
        previous = k;
    }
}

#[test]
fn ill_conditioning_is_reported_by_stage() {
    let err = EcSpace::build(
        &families::polynomial(20),
        0.0,
        1.0,
        &SpaceOptions::checked(14),
    )
    .unwrap_err();
    match err {
        SpaceError::IllConditioned { stage, report } => {
            assert!(!stage.is_empty());
            assert!(report.estimated_correct_digits < 14);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn invalid_intervals() {
    let p = families::polynomial(2);
    assert!(matches!(
        build_space(&p, 1.0, 1.0, false, 0),
        Err(SpaceError::InvalidInterval { .. })
    ));
    let s = build_space(&p, 0.0, 1.0, false, 0).unwrap();
    assert!(matches!(
        s.eval_b_basis(0, 0, 1.5),
        Err(SpaceError::OutOfDomain { .. })
    ));
}

#[test]
fn short_intervals_stay_well_conditioned() {
    for p in [families::example_one(), families::hyperbolic(3)] {
        for len in [0.01, 0.05, 0.2] {
            let s = EcSpace::build(&p, 0.0, len, &SpaceOptions::checked(10)).unwrap();
            for &u in &grid(0.0, len, 101) {
                let b = s.b_values(0, u).unwrap();
                assert!((b.iter().sum::<f64>() - 1.0).abs() <= 1e-11);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn random_intervals_succeed_or_report_conditioning(alpha in -5.0..5.0f64, len in 0.05..2.5f64, idx in 0usize..4) {
        let p = [families::polynomial(5), families::trigonometric(2), families::hyperbolic(2), families::example_one()][idx].clone();
        match EcSpace::build(&p, alpha, alpha + len, &SpaceOptions::checked(8)) {
            Ok(s) => {
                for &u in &grid(alpha, alpha + len, 41) {
                    let b = s.b_values(0, u).unwrap();
                    prop_assert!((b.iter().sum::<f64>() - 1.0).abs() <= 1e-8);
                    prop_assert!(b.iter().all(|&v| v >= -1e-8));
                }
            }
            Err(e) => prop_assert!(matches!(e, SpaceError::IllConditioned { .. }), "{:?}", e),
        }
    }

    #[test]
    fn symmetry_shortcut_matches_table(u in 0.0..1.0f64, i in 0usize..9) {
        let s = build_space(&families::example_one(), -1.0, 1.0, false, 0).unwrap();
        let x = -1.0 + 2.0 * u;
        for j in 0..3 {
            let a = s.eval_b_basis(i, j, x).unwrap();
            let b = s.eval_b_basis_direct(i, j, x).unwrap();
            prop_assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0));
        }
    }
}

#[test]
fn polynomial_critical_length_is_infinite_for_any_alpha() {
    assert_eq!(
        critical_length(&families::hyperbolic(3), -2.0, None, None).unwrap(),
        f64::INFINITY
    );
}
