use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::algebra::w;
use super::Ctx;
use crate::exterior::{ext_evaluate, ExtLetter, ExtTransvection, ExteriorContext, WeightIndex};
use crate::level::{
    compute_level, equalize_witness, factorization_word, lower_height_witness, perfectness_witness,
    raise_height_witness, raise_height_witness_with, relative_generator_factorization,
    validate_derivation, Derivation, LevelError, PerfectTarget, RaiseIndices, RaiseOptions,
    RaiseVariant, RelativeGenerator,
};
use crate::linalg::Word;
use crate::rings::{ideal_generate, ideal_membership, Ring, RingElem};

/// A random pair (I, J), I ≠ J, with |I ∩ J| = h.
fn random_pair(
    rng: &mut ChaCha8Rng,
    ctx: &ExteriorContext,
    h: usize,
) -> (WeightIndex, WeightIndex) {
    let (n, m) = (ctx.n(), ctx.m());
    let mut pts: Vec<usize> = (1..=n).collect();
    pts.shuffle(rng);
    let common = &pts[..h];
    let rest = &pts[h..];
    let row = WeightIndex::new([common, &rest[..m - h]].concat()).unwrap();
    let col = WeightIndex::new([common, &rest[m - h..2 * (m - h)]].concat()).unwrap();
    (row, col)
}

fn random_unit(rng: &mut ChaCha8Rng, ring: &Ring) -> RingElem {
    loop {
        let x = ring.int(rng.gen_range(1..1000));
        if x.is_unit() {
            return x;
        }
    }
}

fn validated(d: Result<Derivation, LevelError>, ring: &Ring) -> Result<(), String> {
    let d = d.map_err(|e| e.to_string())?;
    let r = validate_derivation(&d, ring).map_err(|e| e.to_string())?;
    if r.valid {
        Ok(())
    } else {
        Err(format!("step {:?}: {}", r.failing_step, r.message))
    }
}

fn rings() -> [Ring; 4] {
    [
        Ring::fp(5).unwrap(),
        Ring::fp(7).unwrap(),
        Ring::fp(11).unwrap(),
        Ring::zmod(9).unwrap(),
    ]
}

pub(super) fn witnesses(c: &mut Ctx) {
    c.cover(&[
        "equalize_witness",
        "lower_height_witness",
        "raise_height_witness",
        "validate_derivation",
    ]);
    for (n, m) in [(4, 2), (7, 3)] {
        c.check(4, &format!("equalize at ({n},{m})"), |c| {
            let ctx = ExteriorContext::new(n, m).unwrap();
            let mut fails = Vec::new();
            for (k, ring) in rings()
                .iter()
                .flat_map(|r| std::iter::repeat_n(r, 50))
                .enumerate()
            {
                let h = c.rng.gen_range(0..m);
                let from = random_pair(&mut c.rng, &ctx, h);
                let to = random_pair(&mut c.rng, &ctx, h);
                let xi = random_unit(&mut c.rng, ring);
                if let Err(e) = validated(
                    equalize_witness(&ctx, (&from.0, &from.1), (&to.0, &to.1), &xi),
                    ring,
                ) {
                    fails.push(format!("sample {k} over {ring}: {e}"));
                }
            }
            (200, fails.into_iter().next())
        });
        c.check(4, &format!("lower at ({n},{m})"), |c| {
            let ctx = ExteriorContext::new(n, m).unwrap();
            let mut fails = Vec::new();
            for (k, ring) in rings()
                .iter()
                .flat_map(|r| std::iter::repeat_n(r, 50))
                .enumerate()
            {
                let h1 = c.rng.gen_range(1..m);
                let h2 = c.rng.gen_range(0..h1);
                let from = random_pair(&mut c.rng, &ctx, h1);
                let to = random_pair(&mut c.rng, &ctx, h2);
                let xi = random_unit(&mut c.rng, ring);
                if let Err(e) = validated(
                    lower_height_witness(&ctx, (&from.0, &from.1), (&to.0, &to.1), &xi),
                    ring,
                ) {
                    fails.push(format!("sample {k} over {ring}: {e}"));
                }
            }
            (200, fails.into_iter().next())
        });
    }
    let families = [
        (6, 2, 0, RaiseVariant::Column, RaiseIndices::default()),
        (7, 3, 1, RaiseVariant::Row, RaiseIndices::default()),
        (9, 3, 0, RaiseVariant::Row, RaiseIndices::default()),
        (
            8,
            4,
            2,
            RaiseVariant::Row,
            RaiseIndices {
                fresh: Some(vec![8]),
                c: Some(7),
            },
        ),
    ];
    for (n, m, k, variant, indices) in families {
        c.check(4, &format!("raise at ({n},{m}) from height {k}"), |c| {
            let ctx = ExteriorContext::new(n, m).unwrap();
            let mut fails = Vec::new();
            let samples = 200;
            for (s, ring) in rings()
                .iter()
                .flat_map(|r| std::iter::repeat_n(r, 50))
                .enumerate()
            {
                let xi = random_unit(&mut c.rng, ring);
                let opts = RaiseOptions {
                    variant,
                    indices: indices.clone(),
                    zeta: random_unit(&mut c.rng, ring),
                    zeta1: random_unit(&mut c.rng, ring),
                };
                if let Err(e) = validated(raise_height_witness_with(&ctx, k, &xi, &opts), ring) {
                    fails.push(format!("sample {s} over {ring}: {e}"));
                }
            }
            (samples, fails.into_iter().next())
        });
    }
    c.check(4, "raising walkthroughs for m = 4", |_| {
        let p = super::algebra::symbolic();
        let xi = p.var("xi").unwrap();
        let opts = |indices| RaiseOptions {
            variant: RaiseVariant::Row,
            indices,
            zeta: p.var("zeta").unwrap(),
            zeta1: p.var("zeta1").unwrap(),
        };
        let cases = [
            (
                12,
                0,
                RaiseIndices::default(),
                "4,9,10,11",
                "4,5,6,7",
                "xi^2*zeta*zeta1",
            ),
            (
                10,
                1,
                RaiseIndices::default(),
                "1,4,8,9",
                "1,4,5,6",
                "-xi^2*zeta*zeta1",
            ),
            (
                8,
                2,
                RaiseIndices {
                    fresh: Some(vec![8]),
                    c: Some(7),
                },
                "1,2,4,8",
                "1,2,4,5",
                "xi^2*zeta*zeta1",
            ),
        ];
        let mut fails = Vec::new();
        for (n, k, idx, row, col, arg) in cases {
            let ctx = ExteriorContext::new(n, 4).unwrap();
            match raise_height_witness_with(&ctx, k, &xi, &opts(idx)) {
                Ok(d) => {
                    let t = &d.conclusion;
                    let want = (
                        row.parse::<WeightIndex>().unwrap(),
                        col.parse().unwrap(),
                        super::algebra::mono(&p, arg),
                    );
                    if (t.row().clone(), t.col().clone(), t.arg().clone()) != want {
                        fails.push(format!("n={n}: got {t}"));
                    } else if let Err(e) = validated(Ok(d), &p) {
                        fails.push(format!("n={n}: {e}"));
                    }
                }
                Err(e) => fails.push(format!("n={n}: {e}")),
            }
        }
        (3, fails.into_iter().next())
    });
    c.check(4, "raising refuses too few indices", |_| {
        let ctx = ExteriorContext::new(11, 4).unwrap();
        let r = raise_height_witness(&ctx, 0, &Ring::fp(7).unwrap().one());
        let ok = matches!(r, Err(LevelError::RaiseNeedsIndices { n: 11, need: 12 }));
        (1, (!ok).then(|| "expected an index shortage".into()))
    });
}

/// Checks one factorization; `ideal` is the level the pieces must respect.
fn check_factorization(
    z: &RelativeGenerator,
    ring: &Ring,
    ideal: Option<&crate::rings::Ideal>,
) -> Result<(), String> {
    let pieces = relative_generator_factorization(z, ideal).map_err(|e| e.to_string())?;
    let got =
        ext_evaluate(&z.ctx, ring, &factorization_word(&pieces)).map_err(|e| e.to_string())?;
    if got != z.matrix().map_err(|e| e.to_string())? {
        return Err("product differs from z".into());
    }
    let xi_ideal = ideal_generate(ring, std::slice::from_ref(&z.xi)).unwrap();
    for p in &pieces {
        if let Some(conj) = &p.conjugator {
            if !conj.letters().iter().all(|l| l.is_power()) {
                return Err(format!("conjugator of {} is not in ∧^m E(n,R)", p.base));
            }
        }
        if !ideal_membership(&xi_ideal, p.base.arg()).unwrap() {
            return Err(format!("argument of {} outside ξR", p.base));
        }
    }
    Ok(())
}

pub(super) fn zfactor(c: &mut Ctx) {
    c.cover(&[
        "relative_generator_factorization",
        "ideal_membership",
        "ideal_generate",
    ]);
    let ctx = ExteriorContext::new(6, 2).unwrap();
    c.check(5, "z-factorization at (6,2) over F7, all positions", |c| {
        let f7 = Ring::fp(7).unwrap();
        let mut cases = 0;
        let mut fails = Vec::new();
        for row in ctx.indices() {
            for col in ctx.indices().iter().filter(|x| *x != row) {
                cases += 1;
                let xi = f7.int(c.rng.gen_range(1..7));
                let zeta = f7.int(c.rng.gen_range(0..7));
                let z = RelativeGenerator::new(&ctx, row.clone(), col.clone(), xi, zeta).unwrap();
                if let Err(e) = check_factorization(&z, &f7, None) {
                    fails.push(format!("z_{{{},{}}}: {e}", row.label(), col.label()));
                }
            }
        }
        (cases, fails.into_iter().next())
    });
    c.check(
        5,
        "z-factorization at (6,2) over Z/9 with ξ ∈ (3)",
        |c| {
            let z9 = Ring::zmod(9).unwrap();
            let a = ideal_generate(&z9, &[z9.int(3)]).unwrap();
            let mut cases = 0;
            let mut fails = Vec::new();
            for row in ctx.indices() {
                for col in ctx.indices().iter().filter(|x| *x != row) {
                    cases += 1;
                    let xi = z9.int(3 * c.rng.gen_range(1..3));
                    let zeta = z9.int(c.rng.gen_range(0..9));
                    let z =
                        RelativeGenerator::new(&ctx, row.clone(), col.clone(), xi, zeta).unwrap();
                    if let Err(e) = check_factorization(&z, &z9, Some(&a)) {
                        fails.push(format!("z_{{{},{}}}: {e}", row.label(), col.label()));
                    }
                }
            }
            (cases, fails.into_iter().next())
        },
    );
    c.check(5, "z-factorization at (9,3) over F7, sampled", |c| {
        let f7 = Ring::fp(7).unwrap();
        let ctx = ExteriorContext::new(9, 3).unwrap();
        let samples = 100;
        let mut fails = Vec::new();
        for k in 0..samples {
            let h = c.rng.gen_range(0..3);
            let (row, col) = random_pair(&mut c.rng, &ctx, h);
            let z = RelativeGenerator::new(
                &ctx,
                row,
                col,
                f7.int(c.rng.gen_range(1..7)),
                f7.int(c.rng.gen_range(0..7)),
            )
            .unwrap();
            if let Err(e) = check_factorization(&z, &f7, None) {
                fails.push(format!("sample {k}: {e}"));
            }
        }
        (samples, fails.into_iter().next())
    });
    c.check(5, "ξ outside the declared ideal is refused", |_| {
        let z9 = Ring::zmod(9).unwrap();
        let a = ideal_generate(&z9, &[z9.int(3)]).unwrap();
        let z = RelativeGenerator::new(&ctx, w("12"), w("34"), z9.one(), z9.one()).unwrap();
        let ok = matches!(
            relative_generator_factorization(&z, Some(&a)),
            Err(LevelError::NotInIdeal(_))
        );
        (
            1,
            (!ok).then(|| "factorization accepted ξ = 1 for A = (3)".into()),
        )
    });
}

pub(super) fn compute(c: &mut Ctx) {
    c.cover(&["compute_level", "ideal_generate"]);
    c.check(6, "level ideals", |_| {
        let z = Ring::integers();
        let z9 = Ring::zmod(9).unwrap();
        let ctx = ExteriorContext::new(6, 2).unwrap();
        let t = |r: &Ring, i: &str, j: &str, x: i64| {
            ExtTransvection::new(&ctx, w(i), w(j), r.int(x)).unwrap()
        };
        let same = |got: Result<crate::rings::Ideal, LevelError>, r: &Ring, g: i64| {
            got.map(|i| {
                Some(i.normal_form()) == Some(ideal_generate(r, &[r.int(g)]).unwrap().normal_form())
            })
            .unwrap_or(false)
        };
        let mut fails = Vec::new();
        if !same(
            compute_level(&ctx, &z, &[t(&z, "12", "34", 4), t(&z, "13", "15", 6)]),
            &z,
            2,
        ) {
            fails.push("gcd(4,6) over Z".to_string());
        }
        if !same(
            compute_level(&ctx, &z9, &[t(&z9, "12", "34", 3), t(&z9, "12", "13", 6)]),
            &z9,
            3,
        ) {
            fails.push("(3) over Z/9".to_string());
        }
        if !same(
            compute_level(&ctx, &z9, &[t(&z9, "12", "34", 3), t(&z9, "12", "13", 2)]),
            &z9,
            1,
        ) {
            fails.push("unit ideal over Z/9".to_string());
        }
        let f7 = Ring::fp(7).unwrap();
        for x in 1..7 {
            if !same(compute_level(&ctx, &f7, &[t(&f7, "14", "25", x)]), &f7, 1) {
                fails.push(format!("({x}) over F7"));
            }
        }
        let small = ExteriorContext::new(5, 2).unwrap();
        if !matches!(
            compute_level(&small, &z, &[]),
            Err(LevelError::NetOfIdeals { .. })
        ) {
            fails.push("n < 3m accepted".to_string());
        }
        (10, fails.into_iter().next())
    });
}

/// Left and right factors must be single generators.
fn single_letter(w: &Word<ExtLetter>) -> bool {
    matches!(w, Word::Gen(_))
}

pub(super) fn perfect(c: &mut Ctx) {
    c.cover(&["perfectness_witness"]);
    let ctx = ExteriorContext::new(6, 2).unwrap();
    let z9 = Ring::zmod(9).unwrap();
    let a = ideal_generate(&z9, &[z9.int(3)]).unwrap();
    let check = |target: PerfectTarget, expect: Word<ExtLetter>| -> Result<(), String> {
        let pw = perfectness_witness(&ctx, &target).map_err(|e| e.to_string())?;
        if !single_letter(&pw.left) || !single_letter(&pw.right) {
            return Err("factors are not generators".into());
        }
        for l in pw.left.letters().into_iter().chain(pw.right.letters()) {
            if let ExtLetter::T(t) = l {
                if !ideal_membership(&a, t.arg()).unwrap() {
                    return Err(format!("{t} is outside the relative group"));
                }
            }
        }
        let got = ext_evaluate(&ctx, &z9, &pw.word()).map_err(|e| e.to_string())?;
        if got != ext_evaluate(&ctx, &z9, &expect).map_err(|e| e.to_string())? {
            return Err("commutator differs from the target".into());
        }
        Ok(())
    };
    c.check(9, "perfectness of ∧²E(6, Z/9)", |_| {
        let mut cases = 0;
        let mut fails = Vec::new();
        for i in 1..=6 {
            for j in (1..=6).filter(|&j| j != i) {
                for s in 1..9 {
                    cases += 1;
                    let zeta = z9.int(s);
                    let expect = crate::exterior::pword(&ctx, i, j, &zeta);
                    if let Err(e) = check(PerfectTarget::Power { i, j, zeta }, expect) {
                        fails.push(format!("∧t_{{{i},{j}}}({s}): {e}"));
                    }
                }
            }
        }
        (cases, fails.into_iter().next())
    });
    c.check(9, "relative transvections as commutators, A = (3)", |_| {
        let mut cases = 0;
        let mut fails = Vec::new();
        for row in ctx.indices() {
            for col in ctx.indices().iter().filter(|x| *x != row) {
                for x in [3, 6] {
                    cases += 1;
                    let t =
                        ExtTransvection::new(&ctx, row.clone(), col.clone(), z9.int(x)).unwrap();
                    let expect = crate::exterior::tword(&t);
                    if let Err(e) = check(PerfectTarget::Transvection(t.clone()), expect) {
                        fails.push(format!("{t}: {e}"));
                    }
                }
            }
        }
        (cases, fails.into_iter().next())
    });
}
