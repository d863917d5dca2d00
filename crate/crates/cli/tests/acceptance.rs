//! Acceptance criteria 1–10, one PASS/FAIL line each.

use std::f64::consts::PI;
use std::panic;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use ecbasis::bcurve::{elevate_order, represent_ordinary_curve, sample_curve, subdivide};
use ecbasis::bsurface::{
    curvature_field, elevate_order_surface, represent_ordinary_surface, subdivide_surface,
    tessellate, SeparableSurfaceSpec, SeparableTerm,
};
use ecbasis::ecspace::{
    build_space, critical_length_for_design, families, lu_flop_count, transformation_flop_count,
    transformation_flop_sum, transformation_matrix, CharacteristicPolynomial, CharacteristicZero,
    EcSpace, OrdinaryBasisFunction, Phase, SpaceOptions,
};
use ecbasis::{BCurve, BSurface, Direction, FieldKind};
use ecbasis_cli::bench::{conditioning_sweep, SweepOutcome};
use ecbasis_cli::config::{ConfigFile, SweepConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn space(p: &CharacteristicPolynomial, alpha: f64, beta: f64) -> Arc<EcSpace> {
    Arc::new(build_space(p, alpha, beta, false, 0).expect("space builds"))
}

fn grid(alpha: f64, beta: f64, m: usize) -> Vec<f64> {
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

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

struct TestSpace {
    name: &'static str,
    polynomial: CharacteristicPolynomial,
    alpha: f64,
    beta: f64,
}

fn test_spaces() -> Vec<TestSpace> {
    let t = |name, polynomial, alpha, beta| TestSpace {
        name,
        polynomial,
        alpha,
        beta,
    };
    vec![
        t("P8", families::polynomial(8), 0.0, 1.0),
        t("T6", families::trigonometric(3), 0.0, 2.0),
        t("H6", families::hyperbolic(3), 0.0, 3.0),
        t("AT8", families::example_one(), -PI / 2.0, PI / 2.0),
        t("ET6", families::example_two(), -2.0, 0.125),
        t(
            "M4",
            families::mixed_hyperbolic_trigonometric(0, 1.0, 0.2),
            0.0,
            7.0,
        ),
    ]
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, r| acc * (n - r) as f64 / (r + 1) as f64)
}

fn bernstein_recovery() -> Verdict {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 1..=10 {
        let s = space(&families::polynomial(n), 0.0, 1.0);
        for &u in &grid(0.0, 1.0, 1001) {
            let b = s.b_values(0, u).unwrap();
            for (i, v) in b.iter().enumerate() {
                let exact = binomial(n, i) * u.powi(i as i32) * (1.0 - u).powi((n - i) as i32);
                worst = worst.max((v - exact).abs());
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        worst <= 1e-9 && secs < 1.0,
        format!("max error {worst:.1e}, {secs:.2} s"),
    )
}

/// Largest violation of the normalized endpoint conditions of `s`.
fn endpoint_violation(s: &EcSpace) -> (f64, bool) {
    let n = s.order();
    let mut worst = 0.0f64;
    let mut signs = true;
    for i in 0..=n {
        let at_alpha: Vec<f64> = (0..=n).map(|j| s.b_at_alpha(i, j)).collect();
        let at_beta: Vec<f64> = (0..=n).map(|j| s.b_at_beta(i, j)).collect();
        let scale = at_alpha
            .iter()
            .chain(&at_beta)
            .fold(0.0f64, |m, x| m.max(x.abs()));
        for v in &at_alpha[..i] {
            worst = worst.max(v.abs() / scale);
        }
        for v in &at_beta[..n - i] {
            worst = worst.max(v.abs() / scale);
        }
        let sign = if (n - i).is_multiple_of(2) { 1.0 } else { -1.0 };
        signs &= at_alpha[i] > 0.0 && sign * at_beta[n - i] > 0.0;
    }
    (worst, signs)
}

fn partition_and_endpoints() -> Verdict {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut pass = true;
    for t in test_spaces() {
        let s = space(&t.polynomial, t.alpha, t.beta);
        let n = s.order();
        let (mut unity, mut negative, mut symmetry) = (0.0f64, 0.0f64, 0.0f64);
        for &u in &grid(t.alpha, t.beta, 1001) {
            let b = s.b_values(0, u).unwrap();
            unity = unity.max((b.iter().sum::<f64>() - 1.0).abs());
            negative = negative.max(b.iter().fold(0.0f64, |m, &v| m.max(-v)));
            if s.reflection_invariant() {
                for i in 0..=n / 2 {
                    let mirrored = s
                        .eval_b_basis_direct(n - i, 0, t.alpha + t.beta - u)
                        .unwrap();
                    let direct = s.eval_b_basis_direct(i, 0, u).unwrap();
                    symmetry = symmetry.max((direct - mirrored).abs());
                }
            }
        }
        let (endpoints, signs) = endpoint_violation(&s);
        let ok =
            unity <= 1e-8 && negative <= 1e-8 && endpoints <= 1e-6 && signs && symmetry <= 1e-8;
        pass &= ok;
        notes.push(format!(
            "{} unity {unity:.0e} endpoints {endpoints:.0e}",
            t.name
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 5.0;
    verdict(pass, format!("{}; {secs:.2} s", notes.join(", ")))
}

fn quarter_circle() -> Verdict {
    let s = space(&families::trigonometric(1), 0.0, PI / 2.0);
    let c = represent_ordinary_curve(s, &[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let expected = [[1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
    let points = c
        .control_points()
        .iter()
        .zip(&expected)
        .map(|(p, e)| max_abs_diff(p, e))
        .fold(0.0, f64::max);
    let radius = sample_curve(&c, 1001, 0)
        .unwrap()
        .points()
        .map(|p| (p[0].hypot(p[1]) - 1.0).abs())
        .fold(0.0, f64::max);
    verdict(
        points <= 1e-12 && radius <= 1e-10,
        format!("control points off by {points:.1e}, radius off by {radius:.1e}"),
    )
}

fn critical_lengths() -> Verdict {
    let start = Instant::now();
    let m4 = critical_length_for_design(
        &families::mixed_hyperbolic_trigonometric(0, 1.0, 0.2),
        0.0,
        Some(32.0),
        None,
    )
    .unwrap();
    let t2 = critical_length_for_design(&families::trigonometric(1), 0.0, None, None).unwrap();
    let p5 = critical_length_for_design(&families::polynomial(5), 0.0, None, None).unwrap();
    let secs = start.elapsed().as_secs_f64();
    verdict(
        (m4 - 16.694941067922716).abs() <= 1e-6
            && (t2 - PI).abs() <= 1e-6
            && p5 == f64::INFINITY
            && secs < 30.0,
        format!("M4 {m4:.9}, T2 {t2:.9}, P5 {p5}, {secs:.2} s"),
    )
}

fn transformation() -> (Verdict, String) {
    let mut identity = 0.0f64;
    for t in test_spaces() {
        let s = space(&t.polynomial, t.alpha, t.beta);
        let tm = transformation_matrix(&s).unwrap();
        let dim = s.dimension();
        for &u in &grid(t.alpha, t.beta, 101) {
            let phi = s.ordinary_values(0, u);
            let b = s.b_values(0, u).unwrap();
            for i in 0..dim {
                let tb: f64 = (0..dim).map(|j| tm.get(i, j) * b[j]).sum();
                identity = identity.max((phi[i] - tb).abs());
            }
        }
    }
    let mut mismatches = Vec::new();
    let mut counter_is_sum = true;
    let mut cheaper = true;
    for n in 2..=12u64 {
        let s = space(&families::polynomial(n as usize), 0.0, 1.0);
        let counted = transformation_matrix(&s).unwrap().flop_count();
        let kappa = transformation_flop_count(n);
        if counted != kappa {
            mismatches.push(format!("n={n}: {counted} vs {kappa}"));
        }
        counter_is_sum &= counted == transformation_flop_sum(n);
        for delta in 1..=3 {
            cheaper &= (kappa as f64) < lu_flop_count(n, delta);
        }
    }
    let pass = identity <= 1e-8 && mismatches.is_empty() && cheaper;
    let detail = format!(
        "identity error {identity:.1e}; kappa_pol < kappa_LU: {cheaper}; counter == kappa_pol: {}",
        if mismatches.is_empty() {
            "all n".to_string()
        } else {
            format!("differs at {}", mismatches.join(", "))
        }
    );
    let info =
        format!("counter equals the term-by-term recursion cost for n = 2..12: {counter_is_sum}");
    (verdict(pass, detail), info)
}

fn elevation_target(s: &EcSpace) -> Arc<EcSpace> {
    let p = s
        .polynomial()
        .with_zeros(&[CharacteristicZero::real(0.0, 1)])
        .unwrap();
    space(&p, s.alpha(), s.beta())
}

fn curve_deviation(a: &BCurve, b: &BCurve, alpha: f64, beta: f64) -> f64 {
    grid(alpha, beta, 1001)
        .iter()
        .map(|&u| max_abs_diff(&a.eval(0, u).unwrap(), &b.eval(0, u).unwrap()))
        .fold(0.0, f64::max)
}

fn subdivision_and_elevation() -> Verdict {
    let (mut arcs, mut elevated, mut continuity) = (0.0f64, 0.0f64, 0.0f64);
    for t in test_spaces() {
        let s = space(&t.polynomial, t.alpha, t.beta);
        let n = s.order();
        let target = elevation_target(&s);
        for seed in 0..20u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let points: Vec<Vec<f64>> = (0..=n)
                .map(|_| (0..2).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let c = BCurve::new(s.clone(), points).unwrap();
            let gamma = t.alpha + (t.beta - t.alpha) * rng.gen_range(0.1..0.9);
            let (l, r) = subdivide(&c, gamma).unwrap();
            arcs = arcs
                .max(curve_deviation(&l, &c, t.alpha, gamma))
                .max(curve_deviation(&r, &c, gamma, t.beta));
            for j in 0..=n / 2 {
                let parent = c.eval(j, gamma).unwrap();
                let scale = parent.iter().fold(1.0f64, |m, x| m.max(x.abs()));
                let gap = max_abs_diff(&l.eval(j, gamma).unwrap(), &r.eval(j, gamma).unwrap());
                continuity = continuity.max(gap / scale);
            }
            let e = elevate_order(&c, target.clone()).unwrap();
            elevated = elevated.max(curve_deviation(&e, &c, t.alpha, t.beta));
        }
    }
    let bezier = BCurve::new(
        space(&families::polynomial(2), 0.0, 1.0),
        vec![vec![0.0, 0.0], vec![1.0, 2.0], vec![2.0, 0.0]],
    )
    .unwrap();
    let (l, r) = subdivide(&bezier, 0.5).unwrap();
    let expected = [
        [0.0, 0.0],
        [0.5, 1.0],
        [1.0, 1.0],
        [1.0, 1.0],
        [1.5, 1.0],
        [2.0, 0.0],
    ];
    let casteljau = l
        .control_points()
        .iter()
        .chain(r.control_points())
        .zip(&expected)
        .map(|(p, e)| max_abs_diff(p, e))
        .fold(0.0, f64::max);
    verdict(
        arcs <= 1e-8 && elevated <= 1e-8 && continuity <= 1e-6 && casteljau <= 1e-14,
        format!(
            "arcs {arcs:.1e}, elevation {elevated:.1e}, C^j gap {continuity:.1e}, de Casteljau {casteljau:.0e}"
        ),
    )
}

const W0: f64 = 1.0 / (6.0 * PI);
const W1: f64 = 1.0 / (3.0 * PI);

fn snail_point(u0: f64, u1: f64) -> [f64; 3] {
    let e0 = (W0 * u0).exp();
    let ring = 1.25 + u1.cos();
    [
        (1.0 - e0) * u0.cos() * ring,
        (e0 - 1.0) * u0.sin() * ring,
        7.0 - (W1 * u0).exp() - u1.sin() + e0 * u1.sin(),
    ]
}

fn surface_deviation(s: &BSurface, m: usize, f: impl Fn(f64, f64) -> [f64; 3]) -> f64 {
    let [a0, b0, a1, b1] = s.domain();
    let mut worst = 0.0f64;
    for &u0 in &grid(a0, b0, m) {
        for &u1 in &grid(a1, b1, m) {
            worst = worst.max(max_abs_diff(&s.eval(0, 0, u0, u1).unwrap(), &f(u0, u1)));
        }
    }
    worst
}

fn snail_from_config() -> BSurface {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/snail.json");
    ConfigFile::load(&path)
        .unwrap()
        .surface
        .expect("snail config has a surface")
        .build(&SpaceOptions::default())
        .unwrap()
}

fn snail_surface() -> Verdict {
    let s = snail_from_config();
    let [a0, b0, a1, b1] = s.domain();
    let mut notes = vec![format!(
        "patch {:.1e}",
        surface_deviation(&s, 41, snail_point)
    )];
    let mut worst = surface_deviation(&s, 41, snail_point);

    let zero = [CharacteristicZero::real(0.0, 1)];
    let p7 = s.space_u0().polynomial().clone();
    let aet7 = space(&p7.with_zeros(&zero).unwrap(), a0, b0);
    let at3 = space(
        &families::trigonometric(1).with_zeros(&zero).unwrap(),
        a1,
        b1,
    );
    let b = elevate_order_surface(&s, Direction::U0, aet7).unwrap();
    let b = elevate_order_surface(&b, Direction::U1, at3).unwrap();
    let err = surface_deviation(&b, 41, snail_point);
    notes.push(format!("case b {err:.1e}"));
    worst = worst.max(err);

    let p8 = p7.with_zeros(&[CharacteristicZero::real(-W0, 1)]).unwrap();
    let p9 = p8.with_zeros(&[CharacteristicZero::real(-W1, 1)]).unwrap();
    let at4 = families::trigonometric(1)
        .with_zeros(&[CharacteristicZero::new(0.0, 1.0, 1)])
        .unwrap();
    let c = elevate_order_surface(&s, Direction::U0, space(&p8, a0, b0)).unwrap();
    let c = elevate_order_surface(&c, Direction::U0, space(&p9, a0, b0)).unwrap();
    let c = elevate_order_surface(&c, Direction::U1, space(&at4, a1, b1)).unwrap();
    let err = surface_deviation(&c, 41, snail_point);
    notes.push(format!("case c {err:.1e}"));
    worst = worst.max(err);

    let (lower, upper) = subdivide_surface(&s, Direction::U1, 0.0).unwrap();
    let (left, right) = subdivide_surface(&upper, Direction::U0, 93.0 * PI / 16.0).unwrap();
    let err = [&lower, &left, &right]
        .iter()
        .map(|part| surface_deviation(part, 41, snail_point))
        .fold(0.0, f64::max);
    notes.push(format!("double split {err:.1e}"));
    worst = worst.max(err);
    verdict(worst <= 1e-6, notes.join(", "))
}

fn one() -> OrdinaryBasisFunction {
    OrdinaryBasisFunction::monomial(0)
}

fn trig(phase: Phase) -> OrdinaryBasisFunction {
    OrdinaryBasisFunction::new(0, 0.0, 1.0, phase)
}

fn mesh_and_torus() -> Verdict {
    let mesh = tessellate(&snail_from_config(), 50, 100, None).unwrap();
    let counts = (mesh.positions.len(), mesh.faces.len());

    let (big, small) = (1.25, 1.0);
    let s0 = space(&families::trigonometric(1), 0.0, PI / 2.0);
    let s1 = space(&families::trigonometric(1), -PI / 3.0, PI / 3.0);
    let coords = |s: &EcSpace, terms: &[(OrdinaryBasisFunction, f64)]| {
        let mut v = vec![0.0; s.dimension()];
        for (f, c) in terms {
            v[s.ordinary_index(f).unwrap()] += c;
        }
        v
    };
    let ring = [(one(), big), (trig(Phase::Cos), small)];
    let term =
        |a: &[(OrdinaryBasisFunction, f64)], b: &[(OrdinaryBasisFunction, f64)]| SeparableTerm {
            u0: coords(&s0, a),
            u1: coords(&s1, b),
        };
    let spec = SeparableSurfaceSpec {
        coordinates: [
            vec![term(&[(trig(Phase::Cos), 1.0)], &ring)],
            vec![term(&[(trig(Phase::Sin), 1.0)], &ring)],
            vec![term(&[(one(), small)], &[(trig(Phase::Sin), 1.0)])],
        ],
    };
    let torus = represent_ordinary_surface(s0.clone(), s1.clone(), &spec).unwrap();
    let k = curvature_field(&torus, 41, 41, FieldKind::Gaussian).unwrap();
    let mut worst = 0.0f64;
    for (i1, &u1) in k.u1.iter().enumerate() {
        let exact = u1.cos() / (small * (big + small * u1.cos()));
        for i0 in 0..k.u0.len() {
            worst = worst.max((k.get(i0, i1) - exact).abs());
        }
    }
    verdict(
        counts == (5000, 9702) && worst <= 1e-6,
        format!(
            "{} vertices, {} faces; torus curvature error {worst:.1e}",
            counts.0, counts.1
        ),
    )
}

fn dual_construction() -> Verdict {
    let mut worst = 0.0f64;
    for t in test_spaces() {
        let s = space(&t.polynomial, t.alpha, t.beta);
        let alt = s.alternative_b_coefficients();
        for &u in &grid(t.alpha, t.beta, 1001) {
            let phi = s.ordinary_values(0, u);
            let b = s.b_values(0, u).unwrap();
            for (i, v) in b.iter().enumerate() {
                let other: f64 = (0..s.dimension()).map(|k| alt[(i, k)] * phi[k]).sum();
                worst = worst.max((v - other).abs());
            }
        }
    }
    verdict(worst <= 1e-6, format!("max disagreement {worst:.1e}"))
}

fn stability() -> Verdict {
    let rows = conditioning_sweep(
        &SweepConfig {
            max_order: 20,
            alpha: 0.0,
            beta: 1.0,
        },
        &SpaceOptions::checked(6),
    );
    let built_to_15 = rows
        .iter()
        .take(15)
        .all(|r| matches!(r.outcome, SweepOutcome::Built { .. }));
    let growing = rows
        .windows(2)
        .take(14)
        .all(|w| w[1].condition_number > w[0].condition_number);
    let mut silent_garbage = false;
    let mut staged = true;
    let mut first_failure = None;
    for r in &rows {
        match &r.outcome {
            SweepOutcome::Built { partition_error } => silent_garbage |= *partition_error > 1e-3,
            SweepOutcome::IllConditioned { stage } => {
                first_failure.get_or_insert_with(|| format!("P_{} at {stage}", r.order));
            }
            SweepOutcome::Failed(_) => staged = false,
        }
    }
    verdict(
        built_to_15 && growing && staged && !silent_garbage,
        format!(
            "P_1..P_15 built: {built_to_15}, condition growing: {growing}, first refusal: {}",
            first_failure.unwrap_or_else(|| "none up to P_20".into())
        ),
    )
}

type Check = Box<dyn FnOnce() -> Verdict>;

fn main() -> ExitCode {
    let (transformation_verdict, transformation_info) = transformation();
    let mut transformation_verdict = Some(transformation_verdict);
    let criteria: Vec<(&str, Check)> = vec![
        ("Bernstein recovery", Box::new(bernstein_recovery)),
        (
            "partition of unity and endpoint conditions",
            Box::new(partition_and_endpoints),
        ),
        ("exact quarter circle", Box::new(quarter_circle)),
        ("critical lengths", Box::new(critical_lengths)),
        (
            "transformation identity and cost",
            Box::new(move || transformation_verdict.take().expect("evaluated once")),
        ),
        (
            "subdivision and elevation identities",
            Box::new(subdivision_and_elevation),
        ),
        ("snail surface representation", Box::new(snail_surface)),
        (
            "mesh arithmetic and torus curvature",
            Box::new(mesh_and_torus),
        ),
        ("dual construction", Box::new(dual_construction)),
        ("stability behavior", Box::new(stability)),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.into_iter().enumerate() {
        let number = k + 1;
        let v = panic::catch_unwind(panic::AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict(false, format!("panicked: {msg}"))
        });
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {number:>2} {status}: {name}: {}", v.detail);
        if number == 5 {
            println!("            info: {transformation_info}");
        }
        if !v.pass {
            failed.push(number);
        }
    }
    if failed.is_empty() {
        println!("all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
