//! Group sampling and membership: determinants checked by cofactor
//! expansion, orthogonality by explicit multiply-back, plus closure and
//! orbit properties.

mod common;

use common::{det_cofactor, sturm_eigenvalues_real};
use num_complex::Complex64;
use spd_manifold::{
    congruence_spd, is_member, project_det1, random_group_element, random_spd, GroupTag, Matrix,
    SplitMix64,
};

#[test]
fn orthogonal_group_in_dimension_one_is_sign() {
    let mut saw_plus = false;
    let mut saw_minus = false;
    for seed in 0..20 {
        let mut rng = SplitMix64::new(seed);
        let g = random_group_element::<f64>(GroupTag::Orthogonal, 1, &mut rng);
        let x = g.matrix()[(0, 0)];
        // The normalization x / sqrt(x^2) reaches +-1 up to one rounding.
        assert!((x.abs() - 1.0).abs() <= 1e-15, "O(1) sample was {x}");
        saw_plus |= x > 0.0;
        saw_minus |= x < 0.0;
    }
    assert!(saw_plus && saw_minus, "both signs should occur across seeds");
}

#[test]
fn special_linear_sample_has_unit_determinant() {
    let mut rng = SplitMix64::new(9);
    for dim in [2usize, 3, 5] {
        let g = random_group_element::<f64>(GroupTag::Sl, dim, &mut rng);
        let det = det_cofactor(g.matrix());
        assert!(
            (det - 1.0).abs() <= 1e-12,
            "dim {dim}: cofactor det {det}"
        );
    }
}

#[test]
fn special_orthogonal_sample_multiplies_back_to_identity() {
    let mut rng = SplitMix64::new(1);
    let g = random_group_element::<f64>(GroupTag::SpecialOrthogonal, 3, &mut rng);
    let gram = g.matrix().adjoint().mul(g.matrix());
    assert!(gram.sub(&Matrix::identity(3)).norm_fro() <= 1e-12);
    let det = det_cofactor(g.matrix());
    assert!((det - 1.0).abs() <= 1e-12);
}

#[test]
fn membership_trivial_cases() {
    let id = Matrix::<f64>::identity(3);
    for tag in GroupTag::ALL {
        assert!(is_member(tag, &id, 1e-12).is_ok());
    }

    let sl = Matrix::from_row_major(2, 2, vec![2.0, 0.0, 0.0, 0.5]);
    assert!(is_member(GroupTag::Sl, &sl, 1e-12).is_ok());

    let stretch = Matrix::from_row_major(2, 2, vec![2.0, 0.0, 0.0, 1.0]);
    assert!(is_member(GroupTag::Orthogonal, &stretch, 1e-12).is_err());
}

#[test]
fn every_sampler_output_is_a_member() {
    let mut rng = SplitMix64::new(77);
    for tag in GroupTag::ALL {
        for dim in 1..=6 {
            let gr = random_group_element::<f64>(tag, dim, &mut rng);
            assert!(is_member(tag, gr.matrix(), 1e-10).is_ok());
            let gc = random_group_element::<Complex64>(tag, dim, &mut rng);
            assert!(is_member(tag, gc.matrix(), 1e-10).is_ok());
        }
    }
}

#[test]
fn group_products_stay_in_the_group() {
    let mut rng = SplitMix64::new(23);
    for _ in 0..10 {
        let a = random_group_element::<f64>(GroupTag::Sl, 4, &mut rng);
        let b = random_group_element::<f64>(GroupTag::Sl, 4, &mut rng);
        assert!(is_member(GroupTag::Sl, &a.matrix().mul(b.matrix()), 2e-10).is_ok());

        let u = random_group_element::<Complex64>(GroupTag::Orthogonal, 4, &mut rng);
        let v = random_group_element::<Complex64>(GroupTag::Orthogonal, 4, &mut rng);
        assert!(is_member(GroupTag::Orthogonal, &u.matrix().mul(v.matrix()), 2e-10).is_ok());
    }
}

#[test]
fn sl_congruence_preserves_unit_determinant_points() {
    let mut rng = SplitMix64::new(31);
    for _ in 0..10 {
        let p = random_spd::<f64>(4, &mut rng, 100.0);
        let m = project_det1(&p).unwrap();
        let t = random_group_element::<f64>(GroupTag::Sl, 4, &mut rng);
        let moved = congruence_spd(t.matrix(), &m).unwrap();
        let det = det_cofactor(moved.matrix());
        assert!((det - 1.0).abs() <= 1e-10, "cofactor det after SL orbit: {det}");
    }
}

#[test]
fn random_spd_with_unit_cap_is_scalar_matrix() {
    let mut rng = SplitMix64::new(4);
    let p = random_spd::<f64>(3, &mut rng, 1.0);
    let lambda = p.eigenvalues()[0];
    assert!(lambda > 0.0);
    let want = Matrix::<f64>::identity(3).scale(lambda);
    assert!(p.matrix().sub(&want).norm_fro() <= 1e-15 * lambda);
}

#[test]
fn random_spd_respects_condition_cap() {
    let mut rng = SplitMix64::new(0);
    let p = random_spd::<f64>(4, &mut rng, 100.0);
    let oracle = sturm_eigenvalues_real(p.matrix());
    let ratio = oracle.last().unwrap() / oracle.first().unwrap();
    assert!(ratio <= 100.0 * (1.0 + 1e-9), "condition ratio {ratio}");
    assert!(oracle.iter().all(|&l| l > 0.0));
}

#[test]
fn sampling_is_deterministic_per_seed() {
    let a = random_spd::<f64>(4, &mut SplitMix64::new(12), 50.0);
    let b = random_spd::<f64>(4, &mut SplitMix64::new(12), 50.0);
    assert_eq!(a.matrix().data(), b.matrix().data());

    let g = random_group_element::<Complex64>(GroupTag::Gl, 3, &mut SplitMix64::new(12));
    let h = random_group_element::<Complex64>(GroupTag::Gl, 3, &mut SplitMix64::new(12));
    assert_eq!(g.matrix().data(), h.matrix().data());
}
