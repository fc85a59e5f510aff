use proptest::prelude::*;
use threeballs_core::field::{families, EigenSpec, Point};
use threeballs_core::theorem::{
    check_h_bounds, check_mean_value, check_three_balls_l2, check_three_balls_linf_eigen,
    check_three_balls_linf_monogenic, constants_l2, moser_fit, sup_estimate,
};
use threeballs_core::{ExpPolyField, Multivector, RadiiTriple, TheoremConfig};

fn cfg() -> TheoremConfig<f64> {
    TheoremConfig::new(2.0).unwrap()
}

fn triples() -> [RadiiTriple<f64>; 2] {
    [
        RadiiTriple::new(0.5, 0.9, 2.0).unwrap(),
        RadiiTriple::new(0.3, 0.7, 1.5).unwrap(),
    ]
}

#[test]
fn radii_must_be_admissible() {
    assert!(RadiiTriple::new(0.5, 1.0, 2.0).is_err());
    assert!(RadiiTriple::new(0.9, 0.5, 2.0).is_err());
    assert!(RadiiTriple::new(-0.1, 0.5, 2.0).is_err());
    assert!(RadiiTriple::new(0.2, 0.3, 0.9)
        .unwrap()
        .require_unit()
        .is_ok());
    assert!(RadiiTriple::new(0.5, 0.9, 2.0)
        .unwrap()
        .require_unit()
        .is_err());
}

#[test]
fn logarithmic_constants() {
    let k = constants_l2(triples()[0], EigenSpec::monogenic(), 2.0).unwrap();
    let c1 = 1.0 / (2.0f64 * 0.9 / 0.5).ln();
    let c2 = 1.0 / (2.0f64 / 1.8).ln();
    assert!((k.c1 - c1).abs() < 1e-15 && (k.c1 - 0.7806804).abs() < 1e-7);
    assert!((k.c2 - c2).abs() < 1e-13);
    assert!((k.w1 + k.w2 - 1.0).abs() < 1e-15);
    let c4 = 0.5f64.powf(4.0 * k.w1) * 2.0f64.powf(4.0 * k.w2) / (9.0 * 0.9f64.powi(4));
    assert!((k.c4 - c4).abs() < 1e-14 * c4);
    assert!(k.c3.is_none() && k.c3p.is_none());
    assert!((k.c4p / k.c4p_nominal - 16.0).abs() < 1e-12);
    let with_lambda = constants_l2(triples()[0], EigenSpec::new(1.0).unwrap(), 2.0).unwrap();
    assert!(with_lambda.c3.unwrap() > 0.0 && with_lambda.c3p.unwrap() > 0.0);
}

fn monogenic_fields() -> Vec<ExpPolyField<f64>> {
    vec![
        families::constant(Multivector::one(2)),
        families::fueter(2, 1).unwrap(),
        families::fueter_symmetric(3, &[1, 2]).unwrap(),
        families::ck(
            2,
            &[(1.0, vec![4, 0]), (-2.0, vec![1, 3]), (0.5, vec![0, 0])],
        )
        .unwrap(),
        families::ck(3, &[(1.0, vec![1, 2, 0]), (0.3, vec![0, 0, 0])]).unwrap(),
    ]
}

fn eigen_fields() -> Vec<(ExpPolyField<f64>, f64)> {
    let mut v = Vec::new();
    for lambda in [-1.0, 1.0, 2.0] {
        v.push((
            families::exp_constant(lambda, Multivector::one(3)).unwrap(),
            lambda,
        ));
        v.push((families::exp_planar(2, lambda).unwrap(), lambda));
        v.push((
            families::underline_exp(3, lambda, &[(1.0, vec![1, 1]), (0.5, vec![2, 0])]).unwrap(),
            lambda,
        ));
    }
    v
}

#[test]
fn three_balls_l2_holds() {
    let all = monogenic_fields()
        .into_iter()
        .map(|u| (u, 0.0))
        .chain(eigen_fields());
    for (u, lambda) in all {
        for t in triples() {
            let rep = check_three_balls_l2(&u, EigenSpec::new(lambda).unwrap(), t, &cfg()).unwrap();
            assert!(
                rep.pass && rep.margin >= 1.0,
                "{u} {t:?}: margin {}",
                rep.margin
            );
        }
    }
}

#[test]
fn h_bounds_hold() {
    let all = monogenic_fields()
        .into_iter()
        .chain(eigen_fields().into_iter().map(|p| p.0));
    for u in all {
        for r in [0.5, 1.0] {
            for rep in check_h_bounds(&u, r, &cfg()).unwrap() {
                assert!(rep.pass, "{u} r={r} {}: margin {}", rep.label, rep.margin);
            }
        }
    }
}

#[test]
fn mean_value_is_an_equality_for_constants() {
    let u = families::constant(
        Multivector::from_terms(3, [(threeballs_core::BladeIndex::from_bits(0b101), 2.0)]).unwrap(),
    );
    let x = Point::new(vec![0.1, -0.2, 0.3, 0.0]).unwrap();
    let rep = check_mean_value(&u, &x, 0.4, &cfg()).unwrap();
    assert!((rep.margin - 1.0).abs() <= 1e-10, "{}", rep.margin);
    assert!(rep.pass);
}

#[test]
fn mean_value_needs_monogenic_fields() {
    let u = families::exp_constant(1.0, Multivector::one(2)).unwrap();
    assert!(check_mean_value(&u, &Point::origin(2), 0.3, &cfg()).is_err());
}

#[test]
fn sup_estimate_brackets_known_maxima() {
    // |z_1|² = x_0² + x_1², so sup over B_r is r.
    let z1 = families::fueter(3, 1).unwrap();
    for r in [0.3, 1.0, 1.7] {
        let s = sup_estimate(&z1, r, 41).unwrap();
        assert!(
            s.value <= r * (1.0 + 1e-14) && s.value >= r * (1.0 - 1e-6),
            "{r}: {}",
            s.value
        );
        assert!(s.upper() >= s.value);
    }
}

#[test]
fn linf_monogenic_holds_with_derived_constant() {
    for u in monogenic_fields() {
        for t in triples() {
            let [derived, nominal] = check_three_balls_linf_monogenic(&u, t, &cfg()).unwrap();
            assert!(
                derived.pass && !derived.informational,
                "{u}: {}",
                derived.margin
            );
            assert!(nominal.informational);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mean_value_at_random_centres(
        c in prop::collection::vec(-0.35f64..0.35, 4),
        r in 0.1f64..0.6,
        which in 0usize..3,
    ) {
        let u = [
            families::fueter(3, 2).unwrap(),
            families::fueter_symmetric(3, &[1, 1, 2]).unwrap(),
            families::ck(3, &[(1.0, vec![1, 2, 0]), (0.3, vec![0, 0, 0])]).unwrap(),
        ][which].clone();
        let rep = check_mean_value(&u, &Point::new(c).unwrap(), r, &cfg()).unwrap();
        prop_assert!(rep.pass, "margin {}", rep.margin);
    }

    #[test]
    fn fitted_constants_are_scale_invariant(c in prop::sample::select(vec![-4.0, 1e-3, 0.25, 3.0, 1e3])) {
        let t = RadiiTriple::new(0.2, 0.3, 0.9).unwrap();
        let pairs = [(0.25, 0.5), (0.4, 0.8)];
        for (u, lambda) in eigen_fields().into_iter().take(3) {
            let spec = EigenSpec::new(lambda).unwrap();
            let v = u.scale(c);
            let fit = |w: &ExpPolyField<f64>| {
                let rep = check_three_balls_linf_eigen(w, spec, t, &cfg()).unwrap();
                rep.constants["fitted_M"]
            };
            let (a, b) = (fit(&u), fit(&v));
            prop_assert!(a.is_finite() && a > 0.0);
            prop_assert!((a - b).abs() <= 1e-10 * a);
            let (m, n) = (moser_fit(&u, spec, &pairs, &cfg()).unwrap(), moser_fit(&v, spec, &pairs, &cfg()).unwrap());
            prop_assert!(m.is_finite() && m > 0.0);
            prop_assert!((m - n).abs() <= 1e-10 * m);
        }
    }
}
