use eisk3_core::poly::{
    find_special_fibers, q, resultant_uni, resultant_y, singular_points, BivarPoly, Direction, FiberKind, UniPoly,
};
use eisk3_core::{BigRational, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-5i64..=5, 1..5).prop_map(|c| UniPoly::from_ints(&c))
}

/// `∏ (y − rᵢ)`
fn from_roots(roots: &[i64]) -> UniPoly {
    roots.iter().fold(UniPoly::from_ints(&[1]), |acc, &r| &acc * &UniPoly::from_ints(&[-r, 1]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_is_multiplicative(f in small_poly(), g in small_poly(), h in small_poly()) {
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let lhs = resultant_uni(&(&f * &g), &h).unwrap();
        let rhs = resultant_uni(&f, &h).unwrap() * resultant_uni(&g, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_is_product_over_roots(roots in prop::collection::vec(-4i64..=4, 1..4), g in small_poly()) {
        prop_assume!(!g.is_zero());
        let f = from_roots(&roots);
        let expected = roots.iter().fold(BigRational::from_integer(1.into()), |acc, &r| acc * g.eval(&q(r)));
        prop_assert_eq!(resultant_uni(&f, &g).unwrap(), expected);
    }
}

#[test]
fn resultant_in_y_of_parabola() {
    // Res_y(y² − x, 2y) = −4x
    let h = BivarPoly::from_int_terms(&[(0, 2, 1), (1, 0, -1)]);
    let r = resultant_y(&h, &h.partial_y()).unwrap();
    assert_eq!(r, UniPoly::from_ints(&[0, -4]));
}

fn random_33(rng: &mut ChaCha8Rng) -> BivarPoly {
    let mut terms = Vec::new();
    for i in 0..=3u32 {
        for j in 0..=3u32 {
            terms.push((i, j, rng.random_range(-3i64..=3)));
        }
    }
    // Keep the full bidegree.
    terms.push((3, 3, 1 + rng.random_range(0..3)));
    BivarPoly::from_int_terms(&terms)
}

#[test]
fn random_bidegree_33_fibers_are_finite_and_tangent() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut scanned = 0;
    let mut tangents = 0;
    while scanned < 100 {
        let h = random_33(&mut rng);
        for dir in [Direction::One, Direction::Two] {
            let scan = match find_special_fibers(&h, dir) {
                Ok(s) => s,
                Err(Error::NotSquarefree(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            for f in &scan.fibers {
                let p = f.tangency_point;
                assert!(f.value.is_finite() && p.x.is_finite() && p.y.is_finite());
                let scale = h.magnitude_c(p.x, p.y).max(1.0);
                assert!(h.eval_c(p.x, p.y).norm() < 1e-6 * scale, "{h}: {f:?}");
                // the fiber is tangent: the derivative along it vanishes
                let along = match dir {
                    Direction::One => h.partial_y(),
                    Direction::Two => h.partial_x(),
                };
                assert!(along.eval_c(p.x, p.y).norm() < 1e-6 * along.magnitude_c(p.x, p.y).max(1.0), "{h}: {f:?}");
                assert_eq!(f.contact, 2);
                if f.kind == FiberKind::Tangent {
                    tangents += 1;
                }
            }
        }
        scanned += 1;
    }
    // generic curves have only simple tangencies
    assert!(tangents > 100, "{tangents}");
}

#[test]
fn generic_curves_are_smooth() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut smooth = 0;
    for _ in 0..20 {
        if singular_points(&random_33(&mut rng)).map(|s| s.is_empty()).unwrap_or(false) {
            smooth += 1;
        }
    }
    assert!(smooth >= 15, "{smooth}");
}
