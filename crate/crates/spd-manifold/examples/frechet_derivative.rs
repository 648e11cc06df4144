//! The directional derivative of the matrix exponential.
//!
//! `frechet_dexp(T, A)` evaluates (d/ds) exp(T + sA) at s = 0 exactly via
//! divided differences in the eigenbasis of T; `fd_dexp` is the
//! central-difference realization, which converges at order h^2. Run with
//! `cargo run --example frechet_derivative`.

use spd_manifold::{
    convergence_study, fd_dexp, frechet_dexp, random_self_adjoint, Result, SplitMix64,
    STEP_LADDER,
};

fn main() -> Result<()> {
    let dim = 4;
    let mut rng = SplitMix64::new(2);
    let t = random_self_adjoint::<f64>(dim, &mut rng);
    let a = random_self_adjoint::<f64>(dim, &mut rng);

    let exact = frechet_dexp(&t, &a)?;
    println!("|| dexp_T(A) ||_F = {:.6}", exact.norm_fro());

    // At T = 0 the derivative is the identity map: dexp_0(A) = A exactly.
    let zero = spd_manifold::SelfAdjointMatrix::<f64>::zeros(dim);
    let at_zero = frechet_dexp(&zero, &a)?;
    println!("dexp_0(A) == A bitwise: {}", at_zero.matrix().data() == a.matrix().data());

    println!("\ncentral-difference convergence toward the exact derivative:");
    let report = convergence_study(
        &STEP_LADDER,
        |h| Ok((&fd_dexp(&t, &a, h)? - &exact).norm_fro()),
        (1.8, 2.2),
    )?;
    for (h, e) in report.step_sizes.iter().zip(&report.errors) {
        println!("  h = {h:.2e}: error {e:.3e}");
    }
    println!(
        "fitted order {:.3} (expected 2), within window: {}",
        report.fitted_order, report.pass
    );
    println!("\nreport as JSON:\n{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(())
}
