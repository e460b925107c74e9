use dirac_encode::dynamics::{Coefficient, PotentialSpec};
use dirac_encode::lattice::{gaussian_packet, make_grid, Grid1D, SpinorField};
use dirac_encode::linalg::C64;
use dirac_encode::transforms::*;
use dirac_encode::Error;
use proptest::prelude::*;

fn grid() -> Grid1D {
    make_grid(-8.0, 8.0, 2048).unwrap()
}

fn i(x: f64) -> C64 {
    C64::new(0.0, x)
}

fn exact_cases() -> Vec<(&'static str, PotentialSpec, EquationKind)> {
    vec![
        ("majorana g x", PotentialSpec::scalar(Coefficient::linear(2.0)), EquationKind::Majorana),
        ("majorana constant", PotentialSpec::scalar(Coefficient::constant(1.5)), EquationKind::Majorana),
        (
            "majorana g x + i eps sigma_x",
            PotentialSpec {
                scalar: Coefficient::linear(2.0),
                sigma_x: Coefficient::constant(i(0.3)),
                ..Default::default()
            },
            EquationKind::Majorana,
        ),
        ("dirac f4 = g x", PotentialSpec::sigma_x(Coefficient::linear(2.0)), EquationKind::DiracExact),
        ("dirac f4 = c", PotentialSpec::sigma_x(Coefficient::constant(0.7)), EquationKind::DiracExact),
        ("dirac f4 = i eps", PotentialSpec::sigma_x(Coefficient::constant(i(0.05))), EquationKind::DiracExact),
        (
            "dirac f4 = (1 + i) x",
            PotentialSpec::sigma_x(Coefficient::linear(C64::new(1.0, 0.2))),
            EquationKind::DiracExact,
        ),
        ("dirac f4 = cos", PotentialSpec::sigma_x(Coefficient::cosine(1.0, 3.0)), EquationKind::DiracExact),
    ]
}

#[test]
fn exact_transforms_solve_the_removal_condition() {
    let g = grid();
    for (name, v, kind) in exact_cases() {
        let spec = compile_transform(&v, kind, 4.0, &g).unwrap();
        assert!(spec.is_exact(), "{name}");
        let tf = build_transform_field(&spec, &g).unwrap();
        let r = potential_residual(&tf, &v).unwrap();
        assert!(!r.indices.is_empty());
        assert!(r.max() < 1e-8, "{name}: {}", r.max());
    }
}

#[test]
fn approximate_transforms_also_solve_the_removal_condition() {
    // the approximation lies in commuting U past the free generator, not in U′
    let g = grid();
    let v = PotentialSpec::sigma_z(Coefficient::cosine(2.0, 15.0));
    let spec = compile_transform(&v, EquationKind::DiracApprox, 4.0, &g).unwrap();
    let tf = build_transform_field(&spec, &g).unwrap();
    let r = potential_residual(&tf, &v).unwrap();
    assert!(r.max() < 1e-8 * 15.0, "{}", r.max());

    let g = make_grid(-2.0, 2.0, 1024).unwrap();
    let v = PotentialSpec::sigma_z(Coefficient::constant(1.0));
    let spec = compile_transform(&v, EquationKind::MasslessMass, 0.0, &g).unwrap();
    let tf = build_transform_field(&spec, &g).unwrap();
    let r = potential_residual(&tf, &v).unwrap();
    assert!(r.max() < 1e-8, "{}", r.max());
}

#[test]
fn two_body_transform_solves_the_coupling_condition() {
    let g = make_grid(-3.0, 3.0, 1024).unwrap();
    let spec = compile_transform(
        &PotentialSpec::zero(),
        EquationKind::TwoBodyMajorana { omega: 0.25 },
        4.0,
        &g,
    )
    .unwrap();
    let tf = build_two_body_transform_field(&spec, &g).unwrap();
    let r = two_body_residual(&tf, 4.0, 0.25);
    let scale = tf.matrices().iter().map(|m| m[0][0].norm()).fold(0.0, f64::max);
    assert!(r.max() < 1e-8 * scale, "{}", r.max());
}

#[test]
fn linear_potential_is_not_removable_for_dirac() {
    let g = grid();
    let v = PotentialSpec::scalar(Coefficient::linear(2.0));
    match compile_transform(&v, EquationKind::DiracExact, 4.0, &g) {
        Err(Error::UnsupportedPotential(msg)) => assert!(msg.contains("f1"), "{msg}"),
        other => panic!("expected UnsupportedPotential, got {other:?}"),
    }
    assert!(compile_transform(&v, EquationKind::DiracApprox, 4.0, &g).is_err());
}

#[test]
fn unsupported_shapes_are_rejected() {
    let g = grid();
    let cases = [
        (PotentialSpec::sigma_z(Coefficient::linear(1.0)), EquationKind::Majorana),
        (PotentialSpec::scalar(Coefficient::constant(i(1.0))), EquationKind::Majorana),
        (PotentialSpec::sigma_x(Coefficient::constant(1.0)), EquationKind::Majorana),
        (PotentialSpec::sigma_z(Coefficient::linear(1.0)), EquationKind::MasslessMass),
    ];
    for (v, kind) in cases {
        assert!(
            matches!(compile_transform(&v, kind, 0.0, &g), Err(Error::UnsupportedPotential(_))),
            "{v:?} {kind:?}"
        );
    }
    let v = PotentialSpec::sigma_z(Coefficient::constant(1.0));
    assert!(compile_transform(&v, EquationKind::MasslessMass, 1.0, &g).is_err());
}

#[test]
fn worked_forms() {
    let g = grid();
    // Majorana g x → exp(−i g x² σx / 2)
    let spec = compile_transform(
        &PotentialSpec::scalar(Coefficient::linear(2.0)),
        EquationKind::Majorana,
        4.0,
        &g,
    )
    .unwrap();
    assert_eq!(spec.sigma_x, Coefficient::quadratic(1.0));
    // Dirac g cos(λx) σz → exp(−(g/λ) sin(λx) σy)
    let spec = compile_transform(
        &PotentialSpec::sigma_z(Coefficient::cosine(2.0, 15.0)),
        EquationKind::DiracApprox,
        4.0,
        &g,
    )
    .unwrap();
    let f2 = spec.sigma_y.eval(0.3).unwrap();
    let expected = -i(2.0 / 15.0 * (15.0f64 * 0.3).sin());
    assert!((f2 - expected).norm() < 1e-15);
    // massless: exp(−m x σy)
    let spec = compile_transform(
        &PotentialSpec::sigma_z(Coefficient::constant(3.0)),
        EquationKind::MasslessMass,
        0.0,
        &g,
    )
    .unwrap();
    assert!((spec.sigma_y.eval(0.5).unwrap() - i(-1.5)).norm() < 1e-15);
    // two-body: exp(−m ω x² β₁₂ / 2)
    let spec = compile_transform(
        &PotentialSpec::zero(),
        EquationKind::TwoBodyMajorana { omega: 0.5 },
        4.0,
        &g,
    )
    .unwrap();
    assert_eq!(spec.beta12, Coefficient::quadratic(1.0));
}

#[test]
fn spec_round_trips_through_json() {
    let g = grid();
    for (_, v, kind) in exact_cases() {
        let spec = compile_transform(&v, kind, 4.0, &g).unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        let back: TransformSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }
}

#[test]
fn density_relation_holds_pointwise_for_imaginary_phase() {
    let g = grid();
    let psi: SpinorField = gaussian_packet(&g, 0.3, 0.6, 1.0, [C64::new(1.0, 0.0), i(0.5)]).unwrap();
    for coeff in [Coefficient::constant(i(0.4)), Coefficient::linear(i(0.3))] {
        let spec = TransformSpec::phase_only(coeff);
        let tf = build_transform_field(&spec, &g).unwrap();
        let (mapped, k) = apply_transform(&psi, &tf, Direction::Forward).unwrap();
        let factor = density_relation_factor(&spec, &g).unwrap();
        let lhs = dirac_encode::lattice::density(&mapped);
        let rhs = dirac_encode::lattice::density(&psi).mul(&factor).unwrap().scaled(k * k);
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn inverse_undoes_forward(g1 in -3.0f64..3.0, eps in -0.5f64..0.5, x0 in -2.0f64..2.0) {
        let g = make_grid(-6.0, 6.0, 256).unwrap();
        let v = PotentialSpec {
            scalar: Coefficient::linear(g1),
            sigma_x: Coefficient::constant(i(eps)),
            ..Default::default()
        };
        let spec = compile_transform(&v, EquationKind::Majorana, 1.0, &g).unwrap();
        let tf = build_transform_field(&spec, &g).unwrap();
        let psi: SpinorField = gaussian_packet(&g, x0, 0.5, 0.0, [C64::new(1.0, 0.0), i(1.0)]).unwrap();
        let (phi, c1) = apply_transform(&psi, &tf, Direction::Inverse).unwrap();
        let (back, c2) = apply_transform(&phi, &tf, Direction::Forward).unwrap();
        prop_assert!(back.relative_distance(&psi).unwrap() < 1e-12);
        // both rescales together undo each other for a unit-norm input
        prop_assert!((c1 * c2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitary_transforms_preserve_norm(g1 in -3.0f64..3.0, lam in 0.5f64..20.0) {
        let g = make_grid(-6.0, 6.0, 256).unwrap();
        let spec = compile_transform(
            &PotentialSpec::sigma_x(Coefficient::cosine(g1, lam)),
            EquationKind::DiracExact,
            1.0,
            &g,
        ).unwrap();
        let tf = build_transform_field(&spec, &g).unwrap();
        prop_assert!(tf.is_unitary());
        let psi: SpinorField = gaussian_packet(&g, 0.0, 0.5, 2.0, [C64::new(1.0, 0.0), i(1.0)]).unwrap();
        let (phi, k) = apply_transform(&psi, &tf, Direction::Inverse).unwrap();
        prop_assert_eq!(k, 1.0);
        prop_assert!((phi.norm() - 1.0).abs() < 1e-13);
    }
}
