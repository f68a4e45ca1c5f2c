use extpow::exterior::{binomial, exterior_power, ExteriorContext};
use extpow::linalg::{
    det, hall_witt_check, mat_inverse, minor, tw, word_evaluate, Matrix, Transvection, Word,
};
use extpow::rings::{ideal_generate, ideal_membership, solve_linear, Ring};
use proptest::prelude::*;

fn ring() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::integers()),
        Just(Ring::zmod(9).unwrap()),
        Just(Ring::zmod(12).unwrap()),
        Just(Ring::fp(7).unwrap()),
    ]
}

fn finite_ring() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::zmod(9).unwrap()),
        Just(Ring::zmod(8).unwrap()),
        Just(Ring::fp(5).unwrap())
    ]
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-20i64..20, n), n)
}

/// Elementary matrices, as products of random transvections.
fn invertible(ring: Ring, n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec((1..=n, 1..=n, -9i64..9), 0..12).prop_map(move |ts| {
        let mut g = Matrix::identity(&ring, n);
        for (i, j, x) in ts {
            if i != j {
                g = &g * &Transvection::new(n, i, j, ring.int(x)).unwrap().matrix();
            }
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ideal_contains_generators_and_combinations(r in ring(), a in -50i64..50, b in -50i64..50, s in -5i64..5, t in -5i64..5) {
        let i = ideal_generate(&r, &[r.int(a), r.int(b)]).unwrap();
        prop_assert!(ideal_membership(&i, &r.int(a)).unwrap());
        prop_assert!(ideal_membership(&i, &r.int(b)).unwrap());
        let comb = &(&r.int(s) * &r.int(a)) + &(&r.int(t) * &r.int(b));
        prop_assert!(ideal_membership(&i, &comb).unwrap());
        prop_assert!(ideal_membership(&i, &r.zero()).unwrap());
    }

    #[test]
    fn solvable_systems_are_solved(r in ring(), a in prop::collection::vec(prop::collection::vec(-9i64..9, 4), 3), x in prop::collection::vec(-9i64..9, 4)) {
        let a: Vec<Vec<_>> = a.iter().map(|row| row.iter().map(|&v| r.int(v)).collect()).collect();
        let x: Vec<_> = x.iter().map(|&v| r.int(v)).collect();
        let dot = |row: &[_], y: &[_]| row.iter().zip(y).fold(r.zero(), |acc, (p, q)| &acc + &(p * q));
        let b: Vec<_> = a.iter().map(|row| dot(row, &x)).collect();
        let y = solve_linear(&r, &a, &b).unwrap().expect("a solution exists");
        for (row, bi) in a.iter().zip(&b) {
            prop_assert_eq!(&dot(row, &y), bi);
        }
    }

    #[test]
    fn full_minor_is_the_determinant(r in ring(), a in square(4)) {
        let m = Matrix::from_ints(&r, &a);
        let all = [1, 2, 3, 4];
        prop_assert_eq!(minor(&m, &all, &all).unwrap(), det(&m).unwrap());
    }

    #[test]
    fn inverse_of_invertible(g in finite_ring().prop_flat_map(|r| invertible(r, 4))) {
        let inv = mat_inverse(&g).unwrap();
        prop_assert!((&g * &inv).is_identity());
        prop_assert!((&inv * &g).is_identity());
    }

    #[test]
    fn word_times_inverse_is_identity(ts in prop::collection::vec((1usize..=4, 1usize..=4, -9i64..9), 1..8)) {
        let r = Ring::zmod(9).unwrap();
        let letters: Vec<_> = ts
            .into_iter()
            .filter(|(i, j, _)| i != j)
            .map(|(i, j, x)| tw(&Transvection::new(4, i, j, r.int(x)).unwrap()))
            .collect();
        prop_assume!(!letters.is_empty());
        let w = Word::prod(letters);
        let e = word_evaluate(&Word::prod(vec![w.clone(), Word::inv(w)])).unwrap();
        prop_assert!(e.is_identity());
    }

    #[test]
    fn hall_witt_holds(x in invertible(Ring::fp(5).unwrap(), 3), y in invertible(Ring::fp(5).unwrap(), 3), z in invertible(Ring::fp(5).unwrap(), 3)) {
        prop_assert!(hall_witt_check(&x, &y, &z).unwrap());
    }

    #[test]
    fn exterior_power_is_multiplicative(
        (r, a, b) in finite_ring().prop_flat_map(|r| (Just(r.clone()), invertible(r.clone(), 5), invertible(r, 5))),
        m in 1usize..5,
    ) {
        let ctx = ExteriorContext::new(5, m).unwrap();
        let lhs = exterior_power(&ctx, &(&a * &b)).unwrap();
        let rhs = &exterior_power(&ctx, &a).unwrap() * &exterior_power(&ctx, &b).unwrap();
        prop_assert_eq!(lhs, rhs, "over {}", r);
    }

    #[test]
    fn determinant_of_exterior_power(r in ring(), a in square(4), m in 1usize..4) {
        let ctx = ExteriorContext::new(4, m).unwrap();
        let g = Matrix::from_ints(&r, &a);
        let d = det(&exterior_power(&ctx, &g).unwrap()).unwrap();
        prop_assert_eq!(d, det(&g).unwrap().pow(binomial(3, m - 1) as u32));
    }
}
