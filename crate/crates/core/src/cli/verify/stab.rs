use rand::Rng;

use super::algebra::{random_invertible, random_matrix};
use super::Ctx;
use crate::exterior::{exterior_power, ExteriorContext};
use crate::invariants::{
    build_form, build_partition_ideal, build_pluecker, canonical_targets, congruence_membership,
    span_membership, stabilizer_check, substitute_linear, StabTarget,
};
use crate::linalg::{det, minor, Matrix};
use crate::rings::{ideal_generate, solve_linear, Ring};

fn member_of_all(g: &Matrix, targets: &[StabTarget]) -> Result<bool, String> {
    for t in targets {
        if !stabilizer_check(g, t).map_err(|e| e.to_string())?.member {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(super) fn stabilizer(c: &mut Ctx) {
    c.cover(&[
        "build_form",
        "build_partition_ideal",
        "build_pluecker",
        "substitute_linear",
        "span_membership",
        "stabilizer_check",
    ]);
    let f7 = Ring::fp(7).unwrap();
    let setups: Vec<(usize, usize, &str)> = vec![
        (4, 2, "form"),
        (5, 2, "partition ideal and Plücker"),
        (6, 3, "Plücker"),
    ];
    for (n, m, what) in setups {
        let ctx = ExteriorContext::new(n, m).unwrap();
        let targets = if (n, m) == (4, 2) {
            vec![StabTarget::Form(build_form(&ctx, &f7).unwrap())]
        } else {
            canonical_targets(&ctx, &f7).unwrap()
        };
        c.check(
            7,
            &format!("∧^{m} GL_{n}(F7) preserves the {what}"),
            |c| {
                let mut fails = Vec::new();
                for k in 0..100 {
                    let h = random_invertible(&mut c.rng, &f7, n);
                    let g = exterior_power(&ctx, &h).unwrap();
                    match member_of_all(&g, &targets) {
                        Ok(true) => {}
                        Ok(false) => fails.push(format!("image {k} rejected")),
                        Err(e) => fails.push(format!("image {k}: {e}")),
                    }
                    if let (0, StabTarget::Form(f)) = (k % 10, &targets[0]) {
                        let image = substitute_linear(f, &g).unwrap();
                        if image != f.scale(&det(&h).unwrap()) {
                            fails.push(format!("image {k}: multiplier is not det(h)"));
                        }
                    }
                }
                (100, fails.into_iter().next())
            },
        );
        c.check(
            7,
            &format!("random GL_{}(F7) rejected for the {what}", ctx.big_n()),
            |c| {
                let mut rejected = 0;
                let mut errors = Vec::new();
                for k in 0..100 {
                    let g = random_invertible(&mut c.rng, &f7, ctx.big_n());
                    match member_of_all(&g, &targets) {
                        Ok(false) => rejected += 1,
                        Ok(true) => {}
                        Err(e) => errors.push(format!("matrix {k}: {e}")),
                    }
                }
                let failure = errors
                    .into_iter()
                    .next()
                    .or_else(|| (rejected < 95).then(|| format!("only {rejected}/100 rejected")));
                (100, failure)
            },
        );
    }
    c.check(7, "system generators lie in their own span", |_| {
        let mut fails = Vec::new();
        for (n, m) in [(5, 2), (7, 2), (7, 3)] {
            let ctx = ExteriorContext::new(n, m).unwrap();
            for sys in [
                build_partition_ideal(&ctx, &f7).unwrap(),
                build_pluecker(&ctx, &f7).unwrap(),
            ] {
                if !sys
                    .generators
                    .iter()
                    .all(|p| span_membership(p, &sys).unwrap_or(false))
                {
                    fails.push(format!("({n},{m}) {}", sys.provenance.name()));
                }
            }
        }
        (6, fails.into_iter().next())
    });
    c.cover(&["minor"]);
    c.check(7, "Plücker quadrics vanish on decomposable vectors", |c| {
        let mut fails = Vec::new();
        let mut cases = 0;
        for (n, m) in [(4, 2), (5, 2), (6, 3)] {
            let ctx = ExteriorContext::new(n, m).unwrap();
            let sys = build_pluecker(&ctx, &f7).unwrap();
            let cols: Vec<usize> = (1..=m).collect();
            let done = cases;
            let count = if m == 3 { 166 } else { 167 };
            while cases < count + done {
                let a = random_matrix(&mut c.rng, &f7, n, m);
                let point: Vec<_> = ctx
                    .indices()
                    .iter()
                    .map(|w| minor(&a, w.elems(), &cols).unwrap())
                    .collect();
                if point.iter().all(|x| x.is_zero()) {
                    continue;
                }
                cases += 1;
                if !sys
                    .generators
                    .iter()
                    .all(|p| p.evaluate(&point).map(|v| v.is_zero()).unwrap_or(false))
                {
                    fails.push(format!("({n},{m}) point {cases}"));
                }
            }
        }
        (cases, fails.into_iter().next())
    });
}

pub(super) fn congruence(c: &mut Ctx) {
    c.cover(&["congruence_membership", "solve_linear"]);
    let z9 = Ring::zmod(9).unwrap();
    let ctx = ExteriorContext::new(4, 2).unwrap();
    let a = ideal_generate(&z9, &[z9.int(3)]).unwrap();
    c.check(
        8,
        "∧²(h)·(e + 3u) in the congruence stabilizer over Z/9",
        |c| {
            let mut fails = Vec::new();
            for k in 0..50 {
                let h = random_invertible(&mut c.rng, &z9, 4);
                let u = random_matrix(&mut c.rng, &z9, 6, 6);
                let e = Matrix::identity(&z9, 6).add(&u.scale(&z9.int(3)));
                let g = &exterior_power(&ctx, &h).unwrap() * &e;
                if !congruence_membership(&ctx, &g, &a).unwrap_or(false) {
                    fails.push(format!("sample {k} rejected"));
                }
            }
            (50, fails.into_iter().next())
        },
    );
    c.check(8, "off-form transvections are rejected over Z/9", |c| {
        let mut fails = Vec::new();
        for k in 0..50 {
            let h = random_invertible(&mut c.rng, &z9, 4);
            let p = c.rng.gen_range(0..6);
            let q = (p + c.rng.gen_range(1..6)) % 6;
            let mut t = Matrix::identity(&z9, 6);
            t.set(p, q, z9.int([1, 2, 4, 5, 7, 8][c.rng.gen_range(0..6)]));
            let g = &exterior_power(&ctx, &h).unwrap() * &t;
            if congruence_membership(&ctx, &g, &a).unwrap_or(true) {
                fails.push(format!("sample {k} accepted"));
            }
        }
        (50, fails.into_iter().next())
    });
    c.check(8, "linear systems over Z/9", |c| {
        let mut fails = Vec::new();
        for k in 0..50 {
            let m = random_matrix(&mut c.rng, &z9, 4, 5);
            let x = random_matrix(&mut c.rng, &z9, 5, 1);
            let b: Vec<_> = (&m * &x)
                .to_rows()
                .into_iter()
                .map(|r| r[0].clone())
                .collect();
            match solve_linear(&z9, &m.to_rows(), &b) {
                Ok(Some(y)) => {
                    let col =
                        Matrix::from_rows(&z9, y.into_iter().map(|v| vec![v]).collect()).unwrap();
                    let got: Vec<_> = (&m * &col)
                        .to_rows()
                        .into_iter()
                        .map(|r| r[0].clone())
                        .collect();
                    if got != b {
                        fails.push(format!("system {k}: wrong solution"));
                    }
                }
                _ => fails.push(format!("system {k}: solvable system reported unsolvable")),
            }
        }
        (50, fails.into_iter().next())
    });
}
