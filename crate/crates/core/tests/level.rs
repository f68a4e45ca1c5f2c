use extpow::exterior::{ExtTransvection, ExteriorContext, WeightIndex};
use extpow::level::{
    equalize_witness, lower_height_witness, raise_height_witness, validate_derivation, LevelError,
    StepKind,
};
use extpow::rings::Ring;

fn w(label: &str) -> WeightIndex {
    WeightIndex::new(
        label
            .chars()
            .map(|c| c.to_digit(10).unwrap() as usize)
            .collect(),
    )
    .unwrap()
}

#[test]
fn corrupted_generator_is_located() {
    let f7 = Ring::fp(7).unwrap();
    let ctx = ExteriorContext::new(6, 2).unwrap();
    let mut d =
        equalize_witness(&ctx, (&w("12"), &w("34")), (&w("56"), &w("13")), &f7.int(3)).unwrap();
    assert!(validate_derivation(&d, &f7).unwrap().valid);
    let k = d
        .steps
        .iter()
        .position(|s| matches!(s.kind, StepKind::ExtGen { .. }))
        .unwrap();
    if let StepKind::ExtGen { arg, .. } = &mut d.steps[k].kind {
        *arg = &*arg + &f7.one();
    }
    let r = validate_derivation(&d, &f7).unwrap();
    assert!(!r.valid);
    let bad = r.failing_step.unwrap();
    assert!(bad > k, "failure reported at {bad}, corruption at {k}");
}

#[test]
fn wrong_conclusion_is_rejected() {
    let f5 = Ring::fp(5).unwrap();
    let ctx = ExteriorContext::new(6, 2).unwrap();
    let mut d =
        lower_height_witness(&ctx, (&w("12"), &w("13")), (&w("12"), &w("34")), &f5.int(2)).unwrap();
    assert!(validate_derivation(&d, &f5).unwrap().valid);
    d.conclusion = d.conclusion.with_arg(d.conclusion.arg() + &f5.one());
    assert!(!validate_derivation(&d, &f5).unwrap().valid);
}

#[test]
fn halving_needs_two_invertible() {
    let z = Ring::integers();
    let z9 = Ring::zmod(9).unwrap();
    let ctx = ExteriorContext::new(4, 2).unwrap();
    // exchanging row and column of height 0 in the second power goes through a halving
    let (from, to) = ((&w("12"), &w("34")), (&w("34"), &w("12")));
    assert!(matches!(
        equalize_witness(&ctx, from, to, &z.one()),
        Err(LevelError::TwoNotInvertible)
    ));
    let d = equalize_witness(&ctx, from, to, &z9.one()).unwrap();
    assert!(d.uses_halving());
    assert!(validate_derivation(&d, &z9).unwrap().valid);
    assert!(matches!(
        validate_derivation(&d, &z),
        Err(LevelError::TwoNotInvertible)
    ));
}

#[test]
fn derivations_are_ring_generic() {
    let z = Ring::integers();
    let ctx = ExteriorContext::new(7, 3).unwrap();
    let d = lower_height_witness(
        &ctx,
        (&w("123"), &w("124")),
        (&w("156"), &w("234")),
        &z.int(5),
    )
    .unwrap();
    assert!(!d.uses_halving());
    for r in [z.clone(), Ring::zmod(8).unwrap(), Ring::fp(3).unwrap()] {
        assert!(validate_derivation(&d, &r).unwrap().valid, "over {r}");
    }
    let t = &d.conclusion;
    assert_eq!(t.height(), 0);
    let d = raise_height_witness(&ctx, 1, &Ring::fp(7).unwrap().int(5)).unwrap();
    assert_eq!(d.conclusion.height(), 2);
    assert_eq!(
        ExtTransvection::new(&ctx, t.row().clone(), t.col().clone(), t.arg().clone()).unwrap(),
        *t
    );
}
