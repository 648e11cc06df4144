//! Everything works over the complex field as well: Hermitian matrices,
//! Hermitian positive-definite base points, unitary congruences, geodesic
//! distance. Run with `cargo run --example complex_hermitian`.

use num_complex::Complex64;
use spd_manifold::{
    congruence_spd, distance, mat_log, random_group_element, random_spd, sym_eig, GroupTag,
    Result, SelfAdjointMatrix, SplitMix64,
};

fn main() -> Result<()> {
    // A 2x2 Hermitian matrix with a genuinely complex off-diagonal entry.
    let h = SelfAdjointMatrix::from_row_major(
        2,
        vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(2.0, 0.0),
        ],
    )?;
    let eig = sym_eig(&h)?;
    println!("eigenvalues of [[2, -i], [i, 2]]: {:?}", eig.eigenvalues());

    let mut rng = SplitMix64::new(5);
    let p = random_spd::<Complex64>(3, &mut rng, 40.0);
    let q = random_spd::<Complex64>(3, &mut rng, 40.0);
    println!("\nd(P, Q) = {:.12}", distance(&p, &q)?);

    // log of a Hermitian positive-definite matrix is Hermitian with the
    // same eigenbasis; its trace is ln det P (real).
    let l = mat_log(&p);
    println!("tr log P = {:.12}, ln det P = {:.12}", l.trace(), p.det().ln());

    // Unitary congruence is an isometry.
    let u = random_group_element::<Complex64>(GroupTag::SpecialOrthogonal, 3, &mut rng);
    let pu = congruence_spd(u.matrix(), &p)?;
    let qu = congruence_spd(u.matrix(), &q)?;
    println!(
        "d(U* P U, U* Q U) = {:.12} (difference {:.2e})",
        distance(&pu, &qu)?,
        (distance(&pu, &qu)? - distance(&p, &q)?).abs()
    );
    Ok(())
}
