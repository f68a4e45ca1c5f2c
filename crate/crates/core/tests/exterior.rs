use extpow::exterior::{
    classify_commutator, commutator_word, ext_evaluate, ext_transvection_decomposition,
    ext_transvection_factors, exterior_power, ExtTransvection, ExteriorContext,
};
use extpow::linalg::{word_evaluate, Transvection};
use extpow::rings::Ring;

fn contexts(max_n: usize, max_m: usize) -> Vec<ExteriorContext> {
    (2..=max_n)
        .flat_map(|n| (1..=max_m.min(n - 1)).map(move |m| ExteriorContext::new(n, m).unwrap()))
        .collect()
}

#[test]
fn formula_m_matches_binet_cauchy_image() {
    let p = "poly:xi@z".parse::<Ring>().unwrap();
    let xi = p.var("xi").unwrap();
    for ctx in contexts(7, 3) {
        let n = ctx.n();
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                let a = Transvection::new(n, i, j, xi.clone()).unwrap().matrix();
                let image = exterior_power(&ctx, &a).unwrap();
                let word = ext_transvection_decomposition(&ctx, i, j, &xi).unwrap();
                assert_eq!(
                    word_evaluate(&word).unwrap(),
                    image,
                    "n={n} m={} i={i} j={j}",
                    ctx.m()
                );
            }
        }
    }
}

#[test]
fn formula_m_factors_commute() {
    let f = Ring::fp(7).unwrap();
    for ctx in contexts(6, 3) {
        let factors = ext_transvection_factors(&ctx, 1, ctx.n(), &f.int(3)).unwrap();
        for x in &factors {
            for y in &factors {
                assert_eq!(&x.matrix() * &y.matrix(), &y.matrix() * &x.matrix());
            }
        }
    }
}

#[test]
fn classifier_agrees_with_brute_force() {
    let p = "poly:xi,zeta@z".parse::<Ring>().unwrap();
    let xi = p.var("xi").unwrap();
    let zeta = p.var("zeta").unwrap();
    for ctx in contexts(6, 3) {
        let n = ctx.n();
        for row in ctx.indices() {
            for col in ctx.indices().iter().filter(|c| *c != row) {
                let t = ExtTransvection::new(&ctx, row.clone(), col.clone(), xi.clone()).unwrap();
                for a in 1..=n {
                    for b in (1..=n).filter(|&b| b != a) {
                        let class = classify_commutator(&t, a, b, &zeta).unwrap();
                        let brute = word_evaluate(&commutator_word(&t, a, b, &zeta)).unwrap();
                        assert_eq!(
                            ext_evaluate(&ctx, &p, &class.word()).unwrap(),
                            brute,
                            "[{t}, ∧t_{{{a},{b}}}] classified as {}",
                            class.kind()
                        );
                    }
                }
            }
        }
    }
}
