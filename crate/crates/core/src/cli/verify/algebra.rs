use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Ctx;
use crate::exterior::{
    binomial, classify_commutator, ext_evaluate, ext_transvection_decomposition, exterior_power,
    height, tword, weight_sign, ExtTransvection, ExteriorContext, WeightIndex,
};
use crate::level::DerivationBuilder;
use crate::linalg::{
    chevalley_commutator, det, hall_witt_check, tw, word_evaluate, ChevalleyResult, Matrix,
    Transvection, Word,
};
use crate::rings::{Ring, RingElem};

pub(super) fn random_matrix(rng: &mut ChaCha8Rng, ring: &Ring, rows: usize, cols: usize) -> Matrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..1000)).collect())
        .collect();
    Matrix::from_ints(ring, &data)
}

pub(super) fn random_invertible(rng: &mut ChaCha8Rng, ring: &Ring, n: usize) -> Matrix {
    loop {
        let g = random_matrix(rng, ring, n, n);
        if det(&g).map(|d| d.is_unit()).unwrap_or(false) {
            return g;
        }
    }
}

/// Symbolic ring for the worked examples; 2 must be invertible for halving.
pub(super) fn symbolic() -> Ring {
    "poly:xi,zeta,zeta1@fp:1000003"
        .parse()
        .expect("polynomial ring")
}

/// A signed monomial such as `-2*xi*zeta^2`.
pub(super) fn mono(ring: &Ring, s: &str) -> RingElem {
    let (neg, body) = s.strip_prefix('-').map_or((false, s), |b| (true, b));
    let v = body.split('*').fold(ring.one(), |acc, f| {
        let (base, exp) = f
            .split_once('^')
            .map_or((f, 1), |(b, e)| (b, e.parse().expect("exponent")));
        &acc * &ring.parse_elem(base).expect("factor").pow(exp)
    });
    if neg {
        -&v
    } else {
        v
    }
}

/// `"135"` → {1,3,5}.
pub(super) fn w(label: &str) -> WeightIndex {
    WeightIndex::new(
        label
            .chars()
            .map(|c| c.to_digit(10).expect("digit") as usize)
            .collect(),
    )
    .expect("index")
}

/// Transvections given as `(I, J, arg)` labels, sorted for comparison of
/// commuting products.
pub(super) fn labels(
    ctx: &ExteriorContext,
    ring: &Ring,
    ts: &[(&str, &str, &str)],
) -> Vec<ExtTransvection> {
    let mut v: Vec<ExtTransvection> = ts
        .iter()
        .map(|(i, j, a)| ExtTransvection::new(ctx, w(i), w(j), mono(ring, a)).expect("t"))
        .collect();
    v.sort_by_key(|t| (t.row().clone(), t.col().clone()));
    v
}

pub(super) fn sorted(mut v: Vec<ExtTransvection>) -> Vec<ExtTransvection> {
    v.sort_by_key(|t| (t.row().clone(), t.col().clone()));
    v
}

fn first_failure(cases: usize, fails: Vec<String>) -> (usize, Option<String>) {
    (cases, fails.into_iter().next())
}

pub(super) fn functoriality(c: &mut Ctx) {
    c.cover(&["exterior_power", "det", "is_unit"]);
    for ring in [Ring::fp(7).unwrap(), Ring::zmod(9).unwrap()] {
        for (n, m) in [(4, 2), (5, 2), (6, 2), (6, 3)] {
            let name = format!("functoriality ({n},{m}) over {ring}");
            c.check(1, &name, |c| {
                let ctx = ExteriorContext::new(n, m).unwrap();
                let mut fails = Vec::new();
                let exp = binomial(n - 1, m - 1) as u32;
                for k in 0..200 {
                    let a = random_invertible(&mut c.rng, &ring, n);
                    let b = random_invertible(&mut c.rng, &ring, n);
                    let pa = exterior_power(&ctx, &a).unwrap();
                    let pb = exterior_power(&ctx, &b).unwrap();
                    if exterior_power(&ctx, &(&a * &b)).unwrap() != &pa * &pb {
                        fails.push(format!("pair {k}: ∧(ab) ≠ ∧a·∧b"));
                    }
                    if k < 10 && det(&pa).unwrap() != det(&a).unwrap().pow(exp) {
                        fails.push(format!("pair {k}: det(∧a) ≠ det(a)^{exp}"));
                    }
                }
                first_failure(200, fails)
            });
        }
    }
}

pub(super) fn formula_m(c: &mut Ctx) {
    c.cover(&[
        "ext_transvection_decomposition",
        "word_evaluate",
        "exterior_power",
        "weight_sign",
        "height",
    ]);
    c.check(2, "formula (m) for n ≤ 7, m ≤ 3", |_| {
        let p = symbolic();
        let xi = p.var("xi").unwrap();
        let mut cases = 0;
        let mut fails = Vec::new();
        for n in 2..=7 {
            for m in 1..=3.min(n - 1) {
                let ctx = ExteriorContext::new(n, m).unwrap();
                for i in 1..=n {
                    for j in (1..=n).filter(|&j| j != i) {
                        cases += 1;
                        let a = Transvection::new(n, i, j, xi.clone()).unwrap().matrix();
                        let word = ext_transvection_decomposition(&ctx, i, j, &xi).unwrap();
                        if word_evaluate(&word).unwrap() != exterior_power(&ctx, &a).unwrap() {
                            fails.push(format!("(n,m)=({n},{m}), t_{{{i},{j}}}"));
                        }
                    }
                }
            }
        }
        first_failure(cases, fails)
    });
    c.check(2, "sign examples", |_| {
        let ok = weight_sign(&[], 1, 2).unwrap() == 1
            && weight_sign(&[2], 1, 3).unwrap() == -1
            && weight_sign(&[3, 5], 1, 2).unwrap() == 1
            && height(&w("12"), &w("34")) == 0
            && height(&w("135"), &w("124")) == 1;
        (5, (!ok).then(|| "sign or height example differs".into()))
    });
    c.cover(&["classify_commutator"]);
    c.check(2, "displayed commutators and weight diagrams", |_| {
        let p = symbolic();
        let (xi, zeta) = (p.var("xi").unwrap(), p.var("zeta").unwrap());
        let c73 = ExteriorContext::new(7, 3).unwrap();
        let c52 = ExteriorContext::new(5, 2).unwrap();
        type Case<'a> = (
            &'a ExteriorContext,
            &'a str,
            &'a str,
            usize,
            usize,
            Vec<(&'a str, &'a str, &'a str)>,
        );
        let cases: Vec<Case> = vec![
            (&c73, "135", "124", 7, 6, vec![]),
            (&c73, "135", "124", 4, 6, vec![("135", "126", "xi*zeta")]),
            (
                &c73,
                "135",
                "124",
                4,
                3,
                vec![
                    ("135", "123", "xi*zeta"),
                    ("145", "123", "xi*zeta^2"),
                    ("145", "124", "-zeta*xi"),
                ],
            ),
            (&c52, "14", "15", 2, 3, vec![]),
            (&c52, "13", "35", 2, 3, vec![("12", "35", "-xi*zeta")]),
            (
                &c52,
                "13",
                "24",
                2,
                3,
                vec![
                    ("12", "24", "-xi*zeta"),
                    ("12", "34", "xi*zeta^2"),
                    ("13", "34", "zeta*xi"),
                ],
            ),
        ];
        let n = cases.len();
        let mut fails = Vec::new();
        for (ctx, i, j, a, b, want) in cases {
            let t = ExtTransvection::new(ctx, w(i), w(j), xi.clone()).unwrap();
            let got = classify_commutator(&t, a, b, &zeta)
                .unwrap()
                .factors()
                .map(sorted);
            if got != Some(labels(ctx, &p, &want)) {
                fails.push(format!("[t_{{{i},{j}}}, ∧t_{{{a},{b}}}]"));
            }
        }
        first_failure(n, fails)
    });
}

/// The product of the commutators of `t` with `∧t_{a,b}(ζ)` and
/// `∧t_{a,b}(−ζ)`, as claimed by the derivation builder.
fn doubled(
    t: &ExtTransvection,
    a: usize,
    b: usize,
    zeta: &RingElem,
) -> Option<Vec<ExtTransvection>> {
    let mut d = DerivationBuilder::new(t.ctx(), t.arg().ring());
    let s = d.given(t);
    let g1 = d.ext_gen(a, b, zeta);
    let c1 = d.commute_with_gen(s, g1).ok()?;
    let g2 = d.ext_gen(a, b, &-zeta);
    let c2 = d.commute_with_gen(s, g2).ok()?;
    let p = d.product(&[c1, c2]);
    d.claim(p).map(|c| sorted(c.to_vec()))
}

pub(super) fn commutators(c: &mut Ctx) {
    c.cover(&["classify_commutator", "word_evaluate"]);
    c.check(3, "classifier vs brute force, n ≤ 6, m ≤ 3", |_| {
        let p = symbolic();
        let (xi, zeta) = (p.var("xi").unwrap(), p.var("zeta").unwrap());
        let mut cases = 0;
        let mut fails = Vec::new();
        for n in 2..=6 {
            for m in 1..=3.min(n - 1) {
                let ctx = ExteriorContext::new(n, m).unwrap();
                for row in ctx.indices() {
                    for col in ctx.indices().iter().filter(|c| *c != row) {
                        let t = ExtTransvection::new(&ctx, row.clone(), col.clone(), xi.clone())
                            .unwrap();
                        for a in 1..=n {
                            for b in (1..=n).filter(|&b| b != a) {
                                cases += 1;
                                let class = classify_commutator(&t, a, b, &zeta).unwrap();
                                let lhs = Word::comm(
                                    tword(&t),
                                    crate::exterior::pword(&ctx, a, b, &zeta),
                                );
                                if ext_evaluate(&ctx, &p, &class.word()).unwrap()
                                    != word_evaluate(&lhs).unwrap()
                                {
                                    fails.push(format!("[{t}, ∧t_{{{a},{b}}}] ({})", class.kind()));
                                }
                            }
                        }
                    }
                }
            }
        }
        first_failure(cases, fails)
    });
    c.check(3, "second-power step calculations", |_| {
        let p = symbolic();
        let (xi, zeta, zeta1) = (
            p.var("xi").unwrap(),
            p.var("zeta").unwrap(),
            p.var("zeta1").unwrap(),
        );
        let c4 = ExteriorContext::new(4, 2).unwrap();
        let c5 = ExteriorContext::new(5, 2).unwrap();
        let c6 = ExteriorContext::new(6, 2).unwrap();
        let t = |ctx: &ExteriorContext, i: &str, j: &str, x: &RingElem| {
            ExtTransvection::new(ctx, w(i), w(j), x.clone()).unwrap()
        };
        let single = |tt: &ExtTransvection, a, b, z: &RingElem| {
            classify_commutator(tt, a, b, z)
                .unwrap()
                .factors()
                .map(sorted)
        };
        let mut fails = Vec::new();
        // (1)
        let t1 = t(&c4, "12", "34", &xi);
        let want = labels(
            &c4,
            &p,
            &[
                ("14", "23", "-xi*zeta^2"),
                ("14", "34", "-zeta*xi"),
                ("12", "23", "-xi*zeta"),
            ],
        );
        if single(&t1, 4, 2, &zeta) != Some(want) {
            fails.push("step (1) commutator".to_string());
        }
        if doubled(&t1, 4, 2, &zeta) != Some(labels(&c4, &p, &[("14", "23", "-2*xi*zeta^2")])) {
            fails.push("step (1) doubled product".to_string());
        }
        // (2)
        if single(&t(&c5, "12", "34", &xi), 4, 5, &zeta)
            != Some(labels(&c5, &p, &[("12", "35", "xi*zeta")]))
        {
            fails.push("step (2)".to_string());
        }
        // (3): the second half is stated for the transvection t_{12,34}(ξζ)
        if single(&t(&c4, "12", "13", &xi), 1, 4, &zeta)
            != Some(labels(&c4, &p, &[("12", "34", "-xi*zeta")]))
        {
            fails.push("step (3) first commutator".to_string());
        }
        let t3 = t(&c4, "12", "34", &(&xi * &zeta));
        let cz = classify_commutator(&t3, 4, 1, &zeta1)
            .unwrap()
            .factors()
            .unwrap();
        let rest = labels(
            &c4,
            &p,
            &[
                ("12", "13", "-xi*zeta*zeta1"),
                ("24", "34", "zeta1*xi*zeta"),
            ],
        );
        let sq = labels(&c4, &p, &[("24", "13", "zeta1^2*xi*zeta")]);
        let mut with_sq = rest.clone();
        with_sq.extend(sq.iter().cloned());
        if sorted(cz) != sorted(with_sq)
            || doubled(&t3, 4, 1, &zeta1) != Some(vec![sq[0].with_arg(sq[0].arg() + sq[0].arg())])
        {
            fails.push("step (3) second commutators".to_string());
        }
        // (4)
        if single(&t(&c4, "12", "23", &xi), 4, 2, &zeta)
            != Some(labels(&c4, &p, &[("14", "23", "-zeta*xi")]))
        {
            fails.push("step (4)".to_string());
        }
        // (5)
        let pa = labels(
            &c6,
            &p,
            &[("14", "34", "-zeta*xi"), ("12", "23", "-xi*zeta")],
        );
        let t5 = t(&c6, "45", "16", &xi);
        let want5 = labels(
            &c6,
            &p,
            &[
                ("56", "14", "-zeta1^2*xi"),
                ("45", "14", "xi*zeta1"),
                ("56", "16", "zeta1*xi"),
            ],
        );
        if single(&t5, 6, 4, &zeta1) != Some(want5) {
            fails.push("step (5) second commutator".to_string());
        }
        let pb = labels(
            &c6,
            &p,
            &[("45", "14", "xi*zeta1"), ("56", "16", "zeta1*xi")],
        );
        let word = |ts: &[ExtTransvection]| Word::prod(ts.iter().map(tword).collect());
        let comm = ext_evaluate(&c6, &p, &Word::comm(word(&pb), word(&pa))).unwrap();
        let target = labels(&c6, &p, &[("45", "34", "-xi^2*zeta1*zeta")]);
        if comm != ext_evaluate(&c6, &p, &word(&target)).unwrap() {
            fails.push("step (5) final commutator".to_string());
        }
        first_failure(8, fails)
    });
}

pub(super) fn group_identities(c: &mut Ctx) {
    c.cover(&[
        "hall_witt_check",
        "chevalley_commutator",
        "mat_inverse",
        "word_evaluate",
    ]);
    c.check(10, "Hall–Witt identity", |c| {
        let ring = Ring::zmod(9).unwrap();
        let mut fails = Vec::new();
        for k in 0..1000 {
            let x = random_invertible(&mut c.rng, &ring, 3);
            let y = random_invertible(&mut c.rng, &ring, 3);
            let z = random_invertible(&mut c.rng, &ring, 3);
            if !hall_witt_check(&x, &y, &z).unwrap() {
                fails.push(format!("triple {k}"));
            }
        }
        first_failure(1000, fails)
    });
    c.check(10, "Chevalley commutator formula", |c| {
        let ring = Ring::zmod(9).unwrap();
        let n = 4;
        let mut fails = Vec::new();
        let pick = |rng: &mut ChaCha8Rng| {
            let i = rng.gen_range(1..=n);
            let j = (i + rng.gen_range(1..n) - 1) % n + 1;
            Transvection::new(n, i, j, ring.int(rng.gen_range(0..9))).unwrap()
        };
        for k in 0..1000 {
            let a = pick(&mut c.rng);
            let b = pick(&mut c.rng);
            let brute = word_evaluate(&Word::comm(tw(&a), tw(&b))).unwrap();
            let got = match chevalley_commutator(&a, &b).unwrap() {
                ChevalleyResult::Identity => Matrix::identity(&ring, n),
                ChevalleyResult::Transvection(t) => t.matrix(),
                ChevalleyResult::Irreducible(m) => m,
            };
            if got != brute {
                fails.push(format!("pair {k}: [{a}, {b}]"));
            }
        }
        first_failure(1000, fails)
    });
}
