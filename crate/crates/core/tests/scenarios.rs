use dirac_encode::linalg::C64;
use dirac_encode::scenarios::*;

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn worst(values: &[f64]) -> f64 {
    values.iter().copied().fold(0.0, f64::max)
}

fn small(kind: ScenarioKind) -> ScenarioConfig {
    let mut cfg = ScenarioConfig::defaults(kind);
    cfg.grid.n_points = 512;
    cfg.evolution.t_final = 0.2;
    cfg.evolution.snapshots = 2;
    cfg
}

fn movie_relative_error(a: &Movie, b: &Movie) -> f64 {
    let rho = |f: &Frame| -> Vec<f64> {
        f.values
            .chunks(a.components)
            .map(|v| v.iter().map(|z| z.norm_sqr()).sum())
            .collect()
    };
    a.frames
        .iter()
        .zip(&b.frames)
        .map(|(x, y)| {
            let (rx, ry) = (rho(x), rho(y));
            let num: f64 = rx.iter().zip(&ry).map(|(p, q)| (p - q) * (p - q)).sum();
            let den: f64 = rx.iter().map(|p| p * p).sum();
            (num / den).sqrt()
        })
        .fold(0.0, f64::max)
}

#[test]
fn fig1_without_potential_has_identity_transform() {
    let mut cfg = small(ScenarioKind::Fig1);
    cfg.physics.g = 0.0;
    let r = run_scenario(&cfg).unwrap().report;
    for label in ["a_vs_b", "a_vs_c"] {
        let c = r.comparison(label).unwrap();
        assert!(worst(&c.global) < 1e-13, "{label}: {:?}", c.global);
    }
}

#[test]
fn fig1_faster_oscillation_improves_encoding() {
    let central = |lambda: f64| {
        let mut cfg = small(ScenarioKind::Fig1);
        cfg.physics.lambda = lambda;
        let r = run_scenario(&cfg).unwrap().report;
        let w = cfg.comparison.central_half_width;
        worst(&r.comparison("a_vs_b").unwrap().window(w).unwrap().values)
    };
    let (coarse, fine) = (central(15.0), central(150.0));
    assert!(fine < 0.2 * coarse, "{fine} vs {coarse}");
}

#[test]
fn fig1_mapping_back_matters() {
    let r = run_scenario(&small(ScenarioKind::Fig1)).unwrap().report;
    let mapped = worst(&r.comparison("a_vs_b").unwrap().global);
    let unmapped = worst(&r.comparison("a_vs_b_unmapped").unwrap().global);
    assert!(mapped < unmapped);
}

#[test]
fn majorana_linear_zero_slope_is_trivial() {
    let mut cfg = small(ScenarioKind::MajoranaLinear);
    cfg.physics.g = 0.0;
    let r = run_scenario(&cfg).unwrap().report;
    assert!(worst(&r.comparison("a_vs_b").unwrap().global) < 1e-13);
    assert!(r.passed());
}

#[test]
fn majorana_linear_oracle_is_step_converged() {
    let cfg = ScenarioConfig::defaults(ScenarioKind::MajoranaLinear);
    let mut half = cfg.clone();
    half.evolution.dt /= 2.0;
    let a = run_scenario(&cfg).unwrap().movies;
    let b = run_scenario(&half).unwrap().movies;
    let d = movie_relative_error(&a[0], &b[0]);
    assert!(d < MAJORANA_LINEAR_TOL, "{d}");
}

#[test]
fn dirac_f4_oracle_is_step_converged() {
    let mut cfg = ScenarioConfig::defaults(ScenarioKind::DiracF4);
    cfg.evolution.t_final = 0.2;
    cfg.evolution.snapshots = 2;
    let mut half = cfg.clone();
    half.evolution.dt /= 2.0;
    let a = run_scenario(&cfg).unwrap().movies;
    let b = run_scenario(&half).unwrap().movies;
    let d = movie_relative_error(&a[0], &b[0]);
    assert!(d < DIRAC_F4_TOL, "{d}");
}

#[test]
fn dirac_f4_forms_all_pass() {
    for form in [F4Form::Linear, F4Form::Constant, F4Form::Imaginary] {
        let mut cfg = small(ScenarioKind::DiracF4);
        cfg.grid.x_min = -8.0;
        cfg.grid.x_max = 8.0;
        cfg.grid.n_points = 1024;
        cfg.physics.f4_form = form;
        let r = run_scenario(&cfg).unwrap().report;
        for c in &r.checks {
            assert!(c.passed, "{}: {} {:?}", form.name(), c.name, c);
        }
    }
}

#[test]
fn imaginary_f4_norm_grows_for_mixed_spinor() {
    let mut cfg = small(ScenarioKind::DiracF4);
    cfg.physics.f4_form = F4Form::Imaginary;
    cfg.physics.epsilon = 0.5;
    cfg.packet.weights = vec![real(1.0), real(1.0)];
    let r = run_scenario(&cfg).unwrap().report;
    assert!(r.passed(), "{:?}", r.checks);
    let norms = &r.norms["a"];
    assert!((norms[0] - 1.0).abs() < 1e-12);
    assert!(norms[2] > 1.01, "{norms:?}");
}

#[test]
fn imaginary_f4_massless_eigenstate_grows_exponentially() {
    let mut cfg = small(ScenarioKind::DiracF4);
    cfg.physics.f4_form = F4Form::Imaginary;
    cfg.physics.mass = 0.0;
    cfg.physics.epsilon = 0.5;
    cfg.packet.weights = vec![real(1.0), real(1.0)];
    let r = run_scenario(&cfg).unwrap().report;
    let closed = &r.traces["closed_form_norm"];
    for ((t, n), c) in r.times.iter().zip(&r.norms["a"]).zip(closed) {
        let expected = (0.5 * t).exp();
        assert!((c / expected - 1.0).abs() < 1e-12, "{t}: {c}");
        assert!((n / expected - 1.0).abs() < 1e-10, "{t}: {n}");
    }
}

#[test]
fn massless_without_mass_is_exact() {
    let mut cfg = small(ScenarioKind::MasslessMass);
    cfg.physics.mass = 0.0;
    let r = run_scenario(&cfg).unwrap().report;
    assert!(worst(&r.comparison("a_vs_b").unwrap().global) < 1e-13);
    assert!(r.checks.is_empty());
}

#[test]
fn massless_error_grows_linearly_at_short_times_for_a_moving_packet() {
    // a packet at rest with a real spinor has no first-order error by symmetry
    let mut cfg = ScenarioConfig::defaults(ScenarioKind::MasslessMass);
    cfg.packet.k0 = 3.0;
    cfg.evolution.t_final = 0.05;
    cfg.evolution.snapshots = 4;
    let r = run_scenario(&cfg).unwrap().report;
    let e = &r.comparison("a_vs_b").unwrap().window(0.5).unwrap().values;
    let (e1, e2, e4) = (e[1], e[2], e[4]);
    for slope in [(e2 / e1).log2(), (e4 / e2).log2()] {
        assert!((0.75..1.25).contains(&slope), "{slope} from {e:?}");
    }
}

#[test]
fn two_body_without_coupling_is_exact() {
    let mut cfg = small(ScenarioKind::TwoBody);
    cfg.physics.omega = 0.0;
    let r = run_scenario(&cfg).unwrap().report;
    for label in ["majorana", "dirac"] {
        assert!(worst(&r.comparison(label).unwrap().global) < 1e-12, "{label}");
    }
}

#[test]
fn two_body_branches_are_exact_on_their_own_subspaces() {
    let error = |weights: [f64; 4], label: &str| {
        let mut cfg = small(ScenarioKind::TwoBody);
        cfg.packet.weights = weights.map(real).to_vec();
        let r = run_scenario(&cfg).unwrap().report;
        worst(&r.comparison(label).unwrap().global)
    };
    assert!(error([1.0, 0.0, 0.0, 1.0], "majorana") < 1e-10);
    assert!(error([0.0, 1.0, 1.0, 0.0], "dirac") < 1e-10);
    assert!(error([1.0, 0.0, 0.0, 0.0], "dirac") > 1e-3);
}

#[test]
fn runners_reject_foreign_configs() {
    let cfg = small(ScenarioKind::TwoBody);
    assert!(run_fig1(&cfg).is_err());
    assert!(run_massless_mass(&cfg).is_err());
}

#[test]
fn report_survives_json() {
    let r = run_scenario(&small(ScenarioKind::MajoranaLinear)).unwrap().report;
    let back: ComparisonReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back.checks, r.checks);
    assert_eq!(back.comparisons, r.comparisons);
    assert_eq!(back.config, r.config);
}
