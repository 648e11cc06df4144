//! The determinant-one submanifold and its trace-zero tangent space.
//!
//! `project_det1` rescales an SPD matrix onto det = 1; `project_trace0`
//! centers a self-adjoint matrix onto trace 0. The matrix exponential maps
//! the trace-zero subspace onto the det-one submanifold, and congruence by
//! a special-linear element keeps det-one points on it. Run with
//! `cargo run --example unit_determinant`.

use spd_manifold::{
    congruence_spd, mat_exp, project_det1, project_trace0, random_group_element,
    random_self_adjoint, random_spd, GroupTag, Result, SplitMix64,
};

fn main() -> Result<()> {
    let dim = 4;
    let mut rng = SplitMix64::new(37);

    let p = random_spd::<f64>(dim, &mut rng, 100.0);
    println!("det P             = {:.12}", p.det());
    let m = project_det1(&p)?;
    println!("det project_det1  = {:.12}", m.det());

    let a = random_self_adjoint::<f64>(dim, &mut rng);
    println!("\ntr A              = {:.12}", a.trace());
    let a0 = project_trace0(&a);
    println!("tr project_trace0 = {:.12e}", a0.trace());

    // exp maps trace-zero onto determinant-one.
    let e = mat_exp(&a0)?;
    println!("det exp(A0)       = {:.12}", e.det());

    // An SL congruence preserves the submanifold.
    let t = random_group_element::<f64>(GroupTag::Sl, dim, &mut rng);
    let moved = congruence_spd(t.matrix(), &m)?;
    println!("det T* M T, T in SL = {:.12}", moved.det());
    Ok(())
}
