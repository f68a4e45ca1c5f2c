use extpow::exterior::{exterior_power, ExteriorContext};
use extpow::invariants::{
    build_form, build_partition_ideal, build_pluecker, congruence_membership, span_membership,
    stabilizer_check, substitute_linear, StabTarget, WeightPoly,
};
use extpow::linalg::{det, minor, Matrix};
use extpow::rings::{ideal_generate, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, ring: &Ring, rows: usize, cols: usize) -> Matrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..63)).collect())
        .collect();
    Matrix::from_ints(ring, &data)
}

fn random_invertible(rng: &mut ChaCha8Rng, ring: &Ring, n: usize) -> Matrix {
    loop {
        let g = random_matrix(rng, ring, n, n);
        if det(&g).unwrap().is_unit() {
            return g;
        }
    }
}

#[test]
fn form_multiplier_is_the_determinant() {
    let f7 = Ring::fp(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let ctx = ExteriorContext::new(4, 2).unwrap();
    let f = StabTarget::Form(build_form(&ctx, &f7).unwrap());
    for _ in 0..20 {
        let h = random_invertible(&mut rng, &f7, 4);
        let r = stabilizer_check(&exterior_power(&ctx, &h).unwrap(), &f).unwrap();
        assert!(r.member);
        assert_eq!(r.multiplier.unwrap(), det(&h).unwrap());
    }
    let id = stabilizer_check(&Matrix::identity(&f7, 6), &f).unwrap();
    assert!(id.member && id.multiplier.unwrap().is_one());
    let mut t = Matrix::identity(&f7, 6);
    t.set(0, 1, f7.one());
    assert!(!stabilizer_check(&t, &f).unwrap().member);
}

#[test]
fn diagonal_substitution_scales_by_det() {
    let z = Ring::integers();
    let ctx = ExteriorContext::new(4, 2).unwrap();
    let f = build_form(&ctx, &z).unwrap();
    let d = Matrix::from_ints(
        &z,
        &[
            vec![2, 0, 0, 0],
            vec![0, 3, 0, 0],
            vec![0, 0, 5, 0],
            vec![0, 0, 0, 7],
        ],
    );
    let g = exterior_power(&ctx, &d).unwrap();
    assert_eq!(substitute_linear(&f, &g).unwrap(), f.scale(&z.int(210)));
}

#[test]
fn forms_are_preserved_by_the_image() {
    let f5 = Ring::fp(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (n, m) in [(2, 1), (3, 1), (4, 1), (6, 2)] {
        let ctx = ExteriorContext::new(n, m).unwrap();
        let f = StabTarget::Form(build_form(&ctx, &f5).unwrap());
        for _ in 0..3 {
            let h = random_invertible(&mut rng, &f5, n);
            let r = stabilizer_check(&exterior_power(&ctx, &h).unwrap(), &f).unwrap();
            assert!(r.member, "(n,m)=({n},{m})");
        }
    }
}

#[test]
fn pluecker_span_is_translation_invariant() {
    let f7 = Ring::fp(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, m) in [(5, 2), (6, 3), (6, 2)] {
        let ctx = ExteriorContext::new(n, m).unwrap();
        let sys = build_pluecker(&ctx, &f7).unwrap();
        let h = random_invertible(&mut rng, &f7, n);
        let g = exterior_power(&ctx, &h).unwrap();
        for p in &sys.generators {
            assert!(span_membership(&substitute_linear(p, &g).unwrap(), &sys).unwrap());
        }
        let target = StabTarget::System(sys);
        assert!(stabilizer_check(&g, &target).unwrap().member);
        let other = random_invertible(&mut rng, &f7, ctx.big_n());
        assert!(!stabilizer_check(&other, &target).unwrap().member);
    }
}

#[test]
fn pluecker_vanishes_on_grassmann_points() {
    let f7 = Ring::fp(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (n, m) in [(4, 2), (5, 2), (6, 3)] {
        let ctx = ExteriorContext::new(n, m).unwrap();
        let sys = build_pluecker(&ctx, &f7).unwrap();
        for _ in 0..20 {
            let a = random_matrix(&mut rng, &f7, n, m);
            let cols: Vec<usize> = (1..=m).collect();
            let point: Vec<_> = ctx
                .indices()
                .iter()
                .map(|w| minor(&a, w.elems(), &cols).unwrap())
                .collect();
            for p in &sys.generators {
                assert!(p.evaluate(&point).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn span_membership_examples() {
    let z = Ring::integers();
    let ctx = ExteriorContext::new(4, 2).unwrap();
    let sys = build_pluecker(&ctx, &z).unwrap();
    assert!(span_membership(&sys.generators[0].scale(&z.int(3)), &sys).unwrap());
    assert!(span_membership(&WeightPoly::zero(&ctx, &z, false), &sys).unwrap());
    let sq = WeightPoly::monomial(&ctx, &z, false, &[0, 0], z.one());
    assert!(!span_membership(&sq, &sys).unwrap());
    let mixed = sq.add(&WeightPoly::monomial(&ctx, &z, false, &[0], z.one()));
    assert!(span_membership(&mixed, &sys).is_err());
    let part = build_partition_ideal(&ExteriorContext::new(5, 2).unwrap(), &z).unwrap();
    assert!(part
        .generators
        .iter()
        .all(|p| span_membership(p, &part).unwrap()));
}

#[test]
fn single_form_refused_for_exceptional_case() {
    let f7 = Ring::fp(7).unwrap();
    let ctx = ExteriorContext::new(6, 3).unwrap();
    let f = StabTarget::Form(build_form(&ctx, &f7).unwrap());
    assert!(stabilizer_check(&Matrix::identity(&f7, 20), &f).is_err());
}

#[test]
fn congruence_over_z9() {
    let z9 = Ring::zmod(9).unwrap();
    let ctx = ExteriorContext::new(4, 2).unwrap();
    let a = ideal_generate(&z9, &[z9.int(3)]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let h = random_invertible(&mut rng, &z9, 4);
        let u = random_matrix(&mut rng, &z9, 6, 6);
        let e = Matrix::identity(&z9, 6).add(&u.scale(&z9.int(3)));
        let g = &exterior_power(&ctx, &h).unwrap() * &e;
        assert!(congruence_membership(&ctx, &g, &a).unwrap());
        let mut bad = g.clone();
        bad.set(0, 1, bad.get(0, 1) + &z9.one());
        assert!(!congruence_membership(&ctx, &bad, &a).unwrap());
    }
    let unit = ideal_generate(&z9, &[z9.int(2)]).unwrap();
    assert!(congruence_membership(&ctx, &Matrix::identity(&z9, 6), &unit).unwrap());
}

#[test]
fn middle_form_is_nondegenerate_for_even_m() {
    let f7 = Ring::fp(7).unwrap();
    for (n, m) in [(4, 2), (8, 4)] {
        let ctx = ExteriorContext::new(n, m).unwrap();
        let f = build_form(&ctx, &f7).unwrap();
        let big = ctx.big_n();
        let mut gram = Matrix::zeros(&f7, big, big);
        for (mono, c) in f.terms() {
            let (a, b) = (mono[0], mono[1]);
            if a == b {
                gram.set(a, a, c + c);
            } else {
                gram.set(a, b, c.clone());
                gram.set(b, a, c.clone());
            }
        }
        assert!(det(&gram).unwrap().is_unit(), "(n,m)=({n},{m})");
    }
}
