//! The affine-invariant Riemannian metric on positive-definite matrices.
//!
//! `metric(P, A, B)` evaluates Re tr(P^-1 A P^-1 B) for tangent vectors A, B
//! at base P. The defining property is invariance under every congruence
//! A -> T* A T by an invertible T; at P = I the metric is the flat inner
//! product tr(AB). Run with `cargo run --example invariant_metric`.

use spd_manifold::{
    congruence_spd, metric, pushforward, random_group_element, random_self_adjoint, random_spd,
    trace_inner, GroupTag, Result, SplitMix64, SpdMatrix, TangentVector,
};

fn main() -> Result<()> {
    let dim = 4;
    let mut rng = SplitMix64::new(7);

    let p = random_spd::<f64>(dim, &mut rng, 50.0);
    let a = TangentVector::new(p.clone(), random_self_adjoint(dim, &mut rng))?;
    let b = TangentVector::new(p.clone(), random_self_adjoint(dim, &mut rng))?;

    let g = metric(&p, &a, &b)?;
    println!("base condition number: {:.2}", p.condition_number());
    println!("<A, B>_P = {g:.12}");

    // Flat reduction: at the identity the metric is tr(AB).
    let id = SpdMatrix::<f64>::identity(dim);
    let ai = TangentVector::new(id.clone(), a.value().clone())?;
    let bi = TangentVector::new(id.clone(), b.value().clone())?;
    let flat = trace_inner(ai.value(), bi.value())?;
    let at_identity = metric(&id, &ai, &bi)?;
    println!("metric(I, A, B) = {at_identity:.12}, tr(AB) = {flat:.12}");

    // Invariance: transporting base and tangents by any invertible T
    // leaves the metric unchanged. Sample T from each group.
    println!("\ninvariance under congruence (relative error):");
    for tag in GroupTag::ALL {
        let t = random_group_element::<f64>(tag, dim, &mut rng);
        let tp = congruence_spd(t.matrix(), &p)?;
        let ta = pushforward(t.matrix(), &a)?;
        let tb = pushforward(t.matrix(), &b)?;
        let gt = metric(&tp, &ta, &tb)?;
        println!(
            "  {:2}: <dtau A, dtau B>_(tau P) = {gt:.12}  err {:.2e}",
            tag.name(),
            (gt - g).abs() / (1.0 + g.abs())
        );
    }
    Ok(())
}
