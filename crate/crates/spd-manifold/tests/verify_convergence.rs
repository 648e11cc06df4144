//! Finite-difference convergence checks: derivative realizations of the
//! matrix exponential, metric agreement order, geodesic residuals with a
//! negative control, and the check-suite plumbing.

mod common;

use common::fit_loglog_slope;
use spd_manifold::{
    convergence_study, curve_residual, default_step, fd_dexp, fd_second_mixed, frechet_dexp,
    geodesic_residual, mat_exp, random_self_adjoint, random_spd, run_check,
    second_order_agreement_error, symmetrized_product, CheckConfig, Field, Geodesic, Matrix,
    Mutation, SelfAdjointMatrix, SplitMix64, SpdMatrix, TangentVector, STEP_LADDER,
};

#[test]
fn fd_dexp_at_zero_recovers_direction() {
    let a = SelfAdjointMatrix::from_row_major(2, vec![1.0, 0.0, 0.0, 2.0]).unwrap();
    let zero = SelfAdjointMatrix::<f64>::zeros(2);
    let fd = fd_dexp(&zero, &a, 1e-4).unwrap();
    let err = (&fd - &a).norm_fro();
    // Truncation term is ||A^3|| h^2 / 6, about 1.3e-8 here.
    assert!(err <= 2e-8, "error {err}");
}

#[test]
fn fd_dexp_of_zero_direction_is_exactly_zero() {
    let mut rng = SplitMix64::new(1);
    let t = random_self_adjoint::<f64>(3, &mut rng);
    let zero = SelfAdjointMatrix::<f64>::zeros(3);
    let fd = fd_dexp(&t, &zero, 1e-3).unwrap();
    assert!(fd.matrix().data().iter().all(|&x| x == 0.0));
}

#[test]
fn fd_dexp_converges_to_frechet_at_second_order() {
    let mut rng = SplitMix64::new(2);
    let t = random_self_adjoint::<f64>(4, &mut rng);
    let a = random_self_adjoint::<f64>(4, &mut rng);
    let exact = frechet_dexp(&t, &a).unwrap();
    let errs: Vec<f64> = STEP_LADDER
        .iter()
        .map(|&h| (&fd_dexp(&t, &a, h).unwrap() - &exact).norm_fro())
        .collect();
    let slope = fit_loglog_slope(&STEP_LADDER, &errs);
    assert!((1.8..=2.2).contains(&slope), "fitted order {slope}");
}

#[test]
fn fd_second_mixed_with_equal_arguments_converges_to_square() {
    let mut rng = SplitMix64::new(18);
    let a = random_self_adjoint::<f64>(3, &mut rng);
    let square = SelfAdjointMatrix::new(a.matrix().mul(a.matrix())).unwrap();
    let report = convergence_study(
        &STEP_LADDER,
        |h| Ok((&fd_second_mixed(&a, &a, h)? - &square).norm_fro()),
        (1.8, 2.2),
    )
    .unwrap();
    assert!(report.pass, "order {}", report.fitted_order);
}

#[test]
fn fd_second_mixed_anticommuting_pair_converges_to_zero() {
    let x = SelfAdjointMatrix::from_row_major(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
    let z = SelfAdjointMatrix::from_row_major(2, vec![1.0, 0.0, 0.0, -1.0]).unwrap();
    let fd = fd_second_mixed(&x, &z, 1e-3).unwrap();
    assert!(fd.norm_fro() <= 1e-8, "XZ + ZX = 0, residual {}", fd.norm_fro());
}

#[test]
fn fd_second_mixed_error_quarters_when_step_halves() {
    let mut rng = SplitMix64::new(19);
    let a = random_self_adjoint::<f64>(4, &mut rng);
    let b = random_self_adjoint::<f64>(4, &mut rng);
    let target = symmetrized_product(&a, &b);
    let err = |h: f64| (&fd_second_mixed(&a, &b, h).unwrap() - &target).norm_fro();
    let ratio = err(2e-3) / err(1e-3);
    assert!(
        (3.5..=4.5).contains(&ratio),
        "halving h should quarter the error, ratio {ratio}"
    );
}

#[test]
fn agreement_error_vanishes_at_zero_base() {
    let mut rng = SplitMix64::new(8);
    let a = random_self_adjoint::<f64>(4, &mut rng);
    let b = random_self_adjoint::<f64>(4, &mut rng);
    let zero = SelfAdjointMatrix::<f64>::zeros(4);
    let err = second_order_agreement_error(&zero, &a, &b).unwrap();
    assert!(err <= 1e-13, "flat reduction at T = 0, error {err}");
}

#[test]
fn agreement_error_decays_quadratically_in_base() {
    let mut rng = SplitMix64::new(4);
    let t0 = {
        let raw = random_self_adjoint::<f64>(4, &mut rng);
        raw.scale(0.5 / raw.norm_fro())
    };
    let a = random_self_adjoint::<f64>(4, &mut rng);
    let b = random_self_adjoint::<f64>(4, &mut rng);
    let scales = [1.0, 0.5, 0.25, 0.125];
    let errs: Vec<f64> = scales
        .iter()
        .map(|&s| second_order_agreement_error(&t0.scale(s), &a, &b).unwrap())
        .collect();
    let slope = fit_loglog_slope(&scales, &errs);
    assert!((1.8..=2.2).contains(&slope), "slope {slope}, errors {errs:?}");
}

#[test]
fn agreement_error_is_zero_for_commuting_family() {
    // Diagonal T with diagonal A = B: the scalar calculation collapses,
    // e^(-l) . e^l a . e^(-l) . e^l b summed over the diagonal is exactly
    // tr(AB), so the closed-form error is 0.
    let t = SelfAdjointMatrix::from_row_major(3, vec![0.4, 0.0, 0.0, 0.0, -0.2, 0.0, 0.0, 0.0, 0.9])
        .unwrap();
    let a = SelfAdjointMatrix::from_row_major(3, vec![1.1, 0.0, 0.0, 0.0, 0.7, 0.0, 0.0, 0.0, -0.3])
        .unwrap();
    for s in [1.0, 0.5, 0.25] {
        let err = second_order_agreement_error(&t.scale(s), &a, &a).unwrap();
        assert!(err <= 1e-10, "commuting closed form is exact, error {err}");
    }
}

#[test]
fn constant_curve_has_no_residual() {
    let mut rng = SplitMix64::new(9);
    let p = random_spd::<f64>(3, &mut rng, 20.0);
    let v = TangentVector::new(p, SelfAdjointMatrix::zeros(3)).unwrap();
    let g = Geodesic::new(v);
    let r = geodesic_residual(&g, 0.4, 1e-3).unwrap();
    assert!(r <= 1e-10, "constant curve residual {r}");
}

#[test]
fn identity_geodesic_residual_decays_at_second_order() {
    let mut rng = SplitMix64::new(10);
    let c = random_self_adjoint::<f64>(3, &mut rng);
    let g = Geodesic::from_identity(c);
    let steps = [8e-3, 4e-3, 2e-3, 1e-3];
    let report =
        convergence_study(&steps, |h| geodesic_residual(&g, 0.8, h), (1.8, 2.2)).unwrap();
    assert!(report.pass, "order {} errors {:?}", report.fitted_order, report.errors);
    // Halving the step divides the residual by about four.
    let ratio = report.errors[0] / report.errors[1];
    assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn perturbed_curve_fails_the_geodesic_equation() {
    let mut rng = SplitMix64::new(12);
    let p = random_spd::<f64>(3, &mut rng, 20.0);
    let v = TangentVector::new(p, random_self_adjoint(3, &mut rng)).unwrap();
    let g = Geodesic::new(v);
    let t0 = 0.3;
    let h = 1e-3;
    let clean = geodesic_residual(&g, t0, h).unwrap();

    let e = {
        let raw = random_self_adjoint::<f64>(3, &mut rng);
        raw.scale(1.0 / raw.norm_fro())
    };
    // gamma(t) + (t - t0)^2 E leaves value and velocity at t0 untouched and
    // shifts the acceleration by exactly 2E.
    let perturbed = |s: f64| {
        let base = g.at(s)?;
        let bump = e.scale((s - t0) * (s - t0));
        SpdMatrix::from_matrix(base.matrix().add(bump.matrix()))
    };
    let dirty = curve_residual(perturbed, t0, h).unwrap();
    assert!(
        dirty >= 1e3 * clean.max(1e-12),
        "negative control {dirty} vs clean {clean}"
    );
    assert!(dirty >= 0.2 * 2.0, "acceleration defect should be near ||2E|| = 2, got {dirty}");
}

#[test]
fn default_step_shrinks_with_scale() {
    assert_eq!(default_step(0.0), 1e-3);
    assert_eq!(default_step(1.0), 5e-4);
    assert!(default_step(100.0) < 1e-5);
}

#[test]
fn convergence_study_stops_at_the_rounding_floor() {
    // Synthetic error model: clean second-order decay that bottoms out and
    // rises at the last rung; the study must drop the risen tail before
    // fitting.
    let steps = [1e-2, 5e-3, 2.5e-3, 1.25e-3];
    let err_model = |h: f64| Ok(if h < 2e-3 { 1e-5 } else { h * h });
    let report = convergence_study(&steps, err_model, (1.8, 2.2)).unwrap();
    assert_eq!(report.errors.len(), 3, "rising tail must be dropped");
    assert!(report.pass, "order {}", report.fitted_order);
    assert!((report.fitted_order - 2.0).abs() <= 1e-12);
}

#[test]
fn convergence_report_serializes_unfittable_order_as_null() {
    let steps = [1e-2, 5e-3];
    // Both errors below the fit floor: no usable points remain.
    let report = convergence_study(&steps, |_| Ok(0.0), (1.8, 2.2)).unwrap();
    assert!(report.pass, "vacuous study passes");
    let json = serde_json::to_string(&report).unwrap();
    assert!(json.contains("\"fitted_order\":null"), "json was {json}");
}

#[test]
fn check_suite_passes_and_mutation_fails() {
    let passing = run_check(&CheckConfig {
        dim: 3,
        trials: 10,
        seed: 0,
        field: Field::Real,
        mutation: None,
    })
    .unwrap();
    assert!(passing.all_pass);
    assert_eq!(passing.properties.len(), 24);

    let mutated = run_check(&CheckConfig {
        dim: 3,
        trials: 10,
        seed: 0,
        field: Field::Real,
        mutation: Some(Mutation::MetricSignFlip),
    })
    .unwrap();
    assert!(!mutated.all_pass, "metric sign flip must be detected");
    let failed: Vec<&str> = mutated
        .properties
        .iter()
        .filter(|p| !p.pass)
        .map(|p| p.name.as_str())
        .collect();
    assert!(failed.contains(&"flat_reduction_at_identity"), "failed set {failed:?}");
}

#[test]
fn check_suite_handles_dimension_one() {
    for field in [Field::Real, Field::Complex] {
        let report = run_check(&CheckConfig {
            dim: 1,
            trials: 8,
            seed: 5,
            field,
            mutation: None,
        })
        .unwrap();
        assert!(report.all_pass, "scalar case must pass trivially");
    }
}

#[test]
fn step_ladder_matches_documentation() {
    assert_eq!(STEP_LADDER, [1e-2, 5e-3, 2.5e-3, 1.25e-3]);
    let m = Matrix::<f64>::identity(2);
    assert!(mat_exp(&SelfAdjointMatrix::new(m).unwrap()).is_ok());
}
