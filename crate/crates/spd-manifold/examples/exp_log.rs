//! Matrix exponential, logarithm, and square root of self-adjoint matrices.
//!
//! All three are computed spectrally: diagonalize once, apply the scalar
//! function to the eigenvalues, and rebuild. Run with
//! `cargo run --example exp_log`.

use spd_manifold::{mat_exp, mat_log, mat_sqrt, Result, Scalar, SelfAdjointMatrix};

fn print_matrix<S: Scalar>(label: &str, m: &spd_manifold::Matrix<S>) {
    println!("{label}:");
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format!("{:10.6}", m[(i, j)])).collect();
        println!("  [{}]", row.join(", "));
    }
}

fn main() -> Result<()> {
    let a = SelfAdjointMatrix::from_row_major(
        3,
        vec![0.4, 0.3, -0.1, 0.3, -0.2, 0.5, -0.1, 0.5, 0.1],
    )?;
    print_matrix("A (symmetric)", a.matrix());

    let p = mat_exp(&a)?;
    print_matrix("exp A", p.matrix());
    println!("eigenvalues of exp A: {:?}", p.eigenvalues());

    // det(exp A) = e^{tr A} is the scalar shadow of the spectral computation.
    let det = p.det();
    let expected = a.trace().exp();
    println!("det(exp A) = {det:.12}, e^(tr A) = {expected:.12}");

    let b = mat_log(&p);
    let roundtrip = (&b - &a).norm_fro();
    println!("|| log(exp A) - A ||_F = {roundtrip:.3e}");

    let r = mat_sqrt(&p);
    let square_back = r.matrix().mul(r.matrix()).sub(p.matrix()).norm_fro();
    print_matrix("sqrt(exp A)", r.matrix());
    println!("|| sqrt(P)^2 - P ||_F = {square_back:.3e}");

    Ok(())
}
