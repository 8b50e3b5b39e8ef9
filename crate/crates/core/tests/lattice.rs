use eisk3_core::eisenstein::{discriminant_group, hermitian_form, intmat, smith_diagonal, EisensteinInt, IsometricLattice};
use eisk3_core::Complex64;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complex_pairing(lat: &IsometricLattice, x: &[i64], y: &[i64]) -> Complex64 {
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let mut ry = y.to_vec();
    let mut out = Complex64::new(0.0, 0.0);
    for k in 0..3 {
        out += w.powu(k) * lat.pairing(x, &ry).unwrap() as f64;
        ry = lat.apply(&ry).unwrap();
    }
    out
}

#[test]
fn snf_invariant_under_200_unimodular_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..200 {
        let lat = IsometricLattice::random_eisenstein(1 + case % 3, &mut rng);
        let before = discriminant_group(lat.gram()).unwrap();
        let (u, inv) = intmat::random_unimodular(lat.rank(), 6, &mut rng);
        let moved = lat.change_basis(&u, &inv).unwrap();
        assert_eq!(discriminant_group(moved.gram()).unwrap(), before, "case {case}");
        assert!(moved.is_eisenstein());
    }
}

#[test]
fn a2_sums_have_3_elementary_discriminant() {
    let a2 = IsometricLattice::a2();
    for k in 1..=4 {
        let parts = vec![a2.clone(); k];
        let sum = IsometricLattice::direct_sum(&parts).unwrap();
        let d = discriminant_group(sum.gram()).unwrap();
        assert!(d.is_3_elementary());
        assert_eq!(d.p_rank(3), k);
        assert_eq!(d.order(), BigInt::from(3).pow(k as u32));
    }
}

#[test]
fn smith_diagonal_of_diagonal_matrix() {
    let d = smith_diagonal(&vec![vec![4, 0], vec![0, 6]]);
    assert_eq!(d, vec![BigInt::from(2), BigInt::from(12)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermitian_matches_complex_expansion(seed in any::<u64>(), blocks in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lat = IsometricLattice::random_eisenstein(blocks, &mut rng);
        let n = lat.rank();
        let x: Vec<i64> = (0..n).map(|i| (seed.rotate_left(i as u32) % 7) as i64 - 3).collect();
        let y: Vec<i64> = (0..n).map(|i| (seed.rotate_right(i as u32 + 5) % 9) as i64 - 4).collect();
        let h = hermitian_form(&lat, &x, &y).unwrap();
        prop_assert!((h.to_complex() - complex_pairing(&lat, &x, &y)).norm() < 1e-9);
        prop_assert_eq!(hermitian_form(&lat, &y, &x).unwrap(), h.conj());
        let rx = lat.apply(&x).unwrap();
        prop_assert_eq!(hermitian_form(&lat, &rx, &y).unwrap(), EisensteinInt::ZETA * h);
    }

    #[test]
    fn eisenstein_ring_matches_complex(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000, d in -1000i64..1000) {
        let (x, y) = (EisensteinInt::new(a, b), EisensteinInt::new(c, d));
        prop_assert!(((x * y).to_complex() - x.to_complex() * y.to_complex()).norm() < 1e-6);
        prop_assert_eq!(x.norm() as f64, x.to_complex().norm_sqr().round());
        prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
    }
}
