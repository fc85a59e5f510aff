use proptest::prelude::*;
use threeballs_core::frequency::{
    compute_h, compute_n, divergence_identity_residual, hprime_identity_residual,
    monotonicity_scan, radius_grid, FrequencyEngine,
};
use threeballs_core::{
    families, DriftPolynomial, EigenSpec, ExpPolyField, FrequencyConfig, GridSpacing, Multivector,
    QuadOrders,
};

fn config(u: &ExpPolyField<f64>, lambda: f64, radii: Vec<f64>) -> FrequencyConfig<f64> {
    FrequencyConfig::new(u.n(), 2.0, EigenSpec::new(lambda).unwrap(), radii).unwrap()
}

fn hprime_fields() -> Vec<(ExpPolyField<f64>, f64)> {
    vec![
        (families::constant(Multivector::one(2)), 0.0),
        (families::fueter(2, 1).unwrap(), 0.0),
        (
            families::exp_constant(1.0, Multivector::one(2)).unwrap(),
            1.0,
        ),
    ]
}

#[test]
fn hprime_identity_converges_at_second_order() {
    for (u, lambda) in hprime_fields() {
        for r in [0.5, 1.0] {
            let residual = |h: f64| {
                hprime_identity_residual(&u, &config(&u, lambda, vec![r - h, r, r + h])).unwrap()
            };
            let fine = residual(1e-3);
            let coarse = residual(2e-3);
            assert!(fine <= 1e-4, "{u}: {fine}");
            let ratio = coarse / fine;
            assert!((3.5..4.5).contains(&ratio), "{u} at r = {r}: ratio {ratio}");
        }
    }
}

#[test]
fn divergence_identity_holds() {
    let fields = [
        (families::fueter_symmetric(3, &[1, 2]).unwrap(), 0.0),
        (
            families::ck(3, &[(1.0, vec![2, 1, 0]), (-0.5, vec![0, 0, 3])]).unwrap(),
            0.0,
        ),
        (families::exp_planar(3, 2.0).unwrap(), 2.0),
        (
            families::underline_exp(2, -1.0, &[(1.0, vec![3])]).unwrap(),
            -1.0,
        ),
    ];
    for (u, lambda) in fields {
        let cfg = config(&u, lambda, vec![1.0]);
        for r in [0.3, 1.0, 1.7] {
            assert!(
                divergence_identity_residual(&u, r, &cfg).unwrap() <= 1e-8,
                "{u} at {r}"
            );
        }
    }
}

#[test]
fn homogeneous_monogenic_frequencies() {
    let fields = [
        (families::fueter(2, 1).unwrap(), 1),
        (families::fueter(3, 2).unwrap(), 1),
        (families::fueter_symmetric(2, &[1, 2]).unwrap(), 2),
        (families::fueter_symmetric(3, &[1, 1, 3]).unwrap(), 3),
    ];
    for (u, k) in fields {
        let cfg = config(&u, 0.0, vec![1.0]);
        for r in [0.1, 0.7, 2.0] {
            let n = compute_n(&u, r, &cfg).unwrap();
            let want = 2.0 * 3.0 * k as f64;
            assert!((n - want).abs() <= 1e-8 * want, "{u}: N({r}) = {n}");
        }
    }
    let z1 = families::fueter(2, 1).unwrap();
    assert!((compute_n(&z1, 1.0, &config(&z1, 0.0, vec![1.0])).unwrap() - 6.0).abs() <= 1e-10);
}

#[test]
fn constant_fields_have_zero_frequency_and_closed_form_h() {
    let u = families::constant(Multivector::one(3));
    let cfg = config(&u, 0.0, vec![1.0]);
    assert_eq!(compute_n(&u, 0.8, &cfg).unwrap(), 0.0);
    // H(r) = σ_3 r^{2α+4} B(2, α+1) / 2 with α = 2: π² r^8 / 12.
    let h = compute_h(&u, 0.8, &cfg).unwrap();
    let want = std::f64::consts::PI.powi(2) * 0.8f64.powi(8) / 12.0;
    assert!((h - want).abs() <= 1e-13 * want);
}

#[test]
fn zero_field_is_degenerate() {
    let u = ExpPolyField::<f64>::zero(2);
    assert!(compute_n(&u, 1.0, &config(&u, 0.0, vec![1.0])).is_err());
}

#[test]
fn monotonicity_across_families() {
    let radii = radius_grid(0.1, 2.0, 50, GridSpacing::Log).unwrap();
    let fields = [
        (
            families::ck(
                2,
                &[(1.0, vec![4, 0]), (-2.0, vec![1, 3]), (0.5, vec![0, 0])],
            )
            .unwrap(),
            0.0,
        ),
        (families::fueter_symmetric(3, &[1, 2, 3]).unwrap(), 0.0),
        (
            families::exp_constant(-1.0, Multivector::one(3)).unwrap(),
            -1.0,
        ),
        (families::exp_planar(2, 2.0).unwrap(), 2.0),
        (
            families::underline_exp(3, 1.0, &[(1.0, vec![1, 1]), (0.5, vec![2, 0])]).unwrap(),
            1.0,
        ),
    ];
    for (u, lambda) in fields {
        let report = monotonicity_scan(&u, &config(&u, lambda, radii.clone())).unwrap();
        assert!(
            report.passed && report.violations.is_empty(),
            "{u}: min increment {}",
            report.min_increment
        );
    }
}

#[test]
fn scan_rejects_non_eigenfields() {
    let x0 = ExpPolyField::<f64>::coordinate(2, 0).unwrap();
    assert!(monotonicity_scan(&x0, &config(&x0, 0.0, vec![0.5, 1.0])).is_err());
}

fn drift_rhs(lambda: f64, alpha: f64, n1: usize, r: f64) -> f64 {
    let l = lambda.abs();
    10.0 * (alpha + 1.0) * l * l * r
        + (4.0 * l.powi(3) + 2.0 * l * l) * r * r
        + 4.0 * (alpha + 1.0) * (alpha + n1 as f64) * l
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn drift_polynomial_solves_its_ode(
        lambda in prop::sample::select(vec![-1.0, 1.0]).prop_flat_map(|s| (0.05f64..5.0).prop_map(move |m| s * m)),
        alpha in 2.0f64..6.0,
        n1 in 2usize..=5,
        r in 0.0f64..3.0,
    ) {
        let p = DriftPolynomial::new(EigenSpec::new(lambda).unwrap(), alpha, n1).unwrap();
        // Recompute p' + 6|λ| p from the coefficients alone.
        let lhs = 2.0 * p.a * r + p.b + 6.0 * lambda.abs() * ((p.a * r + p.b) * r + p.c);
        let rhs = drift_rhs(lambda, alpha, n1, r);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        prop_assert!(p.ode_residual(r) <= 1e-12);
    }

    #[test]
    fn frequency_is_dilation_covariant(
        s in 0.3f64..2.5,
        r in 0.2f64..1.5,
        which in 0usize..4,
    ) {
        let (u, lambda) = [
            (families::fueter_symmetric(2, &[1, 2]).unwrap(), 0.0),
            (families::ck(3, &[(1.0, vec![2, 1, 0]), (0.3, vec![0, 0, 0])]).unwrap(), 0.0),
            (families::exp_planar(2, 1.0).unwrap(), 1.0),
            (families::underline_exp(3, -1.0, &[(1.0, vec![1, 1])]).unwrap(), -1.0),
        ][which].clone();
        let v = u.dilate(s);
        let nu = compute_n(&u, s * r, &config(&u, lambda, vec![1.0])).unwrap();
        let nv = compute_n(&v, r, &config(&v, lambda * s, vec![1.0])).unwrap();
        prop_assert!((nu - nv).abs() <= 1e-9 * (1.0 + nu.abs()), "{} vs {}", nu, nv);
    }

    #[test]
    fn frequency_is_scale_invariant(c in prop::sample::select(vec![-3.0, 1e-3, 0.5, 7.0, 1e4]), r in 0.2f64..2.0) {
        let u = families::exp_planar(3, 2.0).unwrap();
        let cfg = config(&u, 2.0, vec![1.0]);
        let a = compute_n(&u, r, &cfg).unwrap();
        let b = compute_n(&u.scale(c), r, &cfg).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
    }
}

#[test]
fn coarse_orders_refine_to_the_same_values() {
    let u = families::exp_planar(3, 2.0).unwrap();
    let fine = FrequencyEngine::<f64>::new(
        &u,
        2.0,
        QuadOrders {
            radial: 32,
            polar: 32,
            transverse: 8,
        },
        1e-12,
    )
    .unwrap();
    let coarse = FrequencyEngine::new(&u, 2.0, QuadOrders::uniform(4), 1e-10).unwrap();
    let (a, b) = (fine.at(1.3).unwrap(), coarse.at(1.3).unwrap());
    assert!((a.h - b.h).abs() <= 1e-9 * a.h);
    assert!((a.i - b.i).abs() <= 1e-9 * a.i);
}
