use std::io::Read;

use serde_json::{json, Value as Json};
use thiserror::Error;

use super::{Command, Common, Output, SystemKind, VariantArg, WitnessKind};
use crate::exterior::{
    classify_commutator, ext_evaluate, ext_transvection_factors, exterior_power, pword,
    ExtTransvection, ExteriorContext, ExteriorError, WeightIndex,
};
use crate::invariants::{
    build_form, build_partition_ideal, build_pluecker, canonical_targets, congruence_membership,
    stabilizer_check, InvariantsError, QuadricSystem, StabTarget,
};
use crate::level::{
    compute_level, equalize_witness, factorization_word, lower_height_witness, perfectness_witness,
    raise_height_witness_with, relative_generator_factorization, validate_derivation, Derivation,
    LevelError, PerfectTarget, RaiseIndices, RaiseOptions, RaiseVariant, RelativeGenerator,
};
use crate::linalg::{LinalgError, Matrix};
use crate::rings::{ideal_generate, Ring, RingElem, RingError};

#[derive(Debug, Error)]
pub(crate) enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Level(#[from] LevelError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
}

type Res<T> = Result<T, CliError>;

fn setup(c: &Common) -> Res<(Ring, ExteriorContext)> {
    let ring: Ring = c.ring.parse()?;
    Ok((ring, ExteriorContext::new(c.n, c.m)?))
}

/// `1,3,5`, or `135` when every index is a single digit.
fn weight(ctx: &ExteriorContext, s: &str) -> Res<WeightIndex> {
    let s = s.trim();
    let w: WeightIndex = if !s.contains(',') && s.len() == ctx.m() && ctx.n() < 10 && s.len() > 1 {
        let digits: Option<Vec<usize>> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect();
        let digits = digits.ok_or_else(|| CliError::Input(format!("bad weight index `{s}`")))?;
        WeightIndex::new(digits)?
    } else {
        s.parse()?
    };
    ctx.check(&w)?;
    Ok(w)
}

/// Ring element from a flag. The symbolic defaults `xi`, `zeta`, `zeta1`
/// stand for 1 over rings without variables.
fn elem(ring: &Ring, s: &str) -> Res<RingElem> {
    if !ring.is_polynomial() && matches!(s, "xi" | "zeta" | "zeta1") {
        return Ok(ring.one());
    }
    Ok(ring.parse_elem(s)?)
}

fn pair(ctx: &ExteriorContext, s: &str) -> Res<(WeightIndex, WeightIndex)> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| CliError::Input(format!("expected I:J, got `{s}`")))?;
    Ok((weight(ctx, a)?, weight(ctx, b)?))
}

fn read_matrix(path: &str, ring: &Ring) -> Res<Matrix> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
    } else {
        text =
            std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    }
    let v: Json =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    // a bare list of rows is accepted as well as the full matrix object
    let v = if v.is_array() {
        json!({ "rows": v })
    } else {
        v
    };
    Ok(Matrix::from_json(&v, Some(ring))?)
}

/// ±1 with `conclusion = u·ξ`, when it is one of those.
fn unit_of(d: &Derivation, xi: &RingElem) -> Json {
    let arg = d.conclusion.arg();
    if arg == xi {
        json!(1)
    } else if *arg == -xi {
        json!(-1)
    } else {
        Json::Null
    }
}

fn derivation_output(d: Derivation, xi: &RingElem) -> Res<Output> {
    let report = validate_derivation(&d, &d.ring)?;
    let mut j = d.to_json();
    j["unit"] = unit_of(&d, xi);
    j["valid"] = json!(report.valid);
    let text = format!("{}\nvalid: {}", d.transcript(), report.valid);
    Ok(Output::with_text(j, text))
}

pub(crate) fn dispatch(cmd: Command) -> Res<Output> {
    match cmd {
        Command::Power { common, matrix } => {
            let (ring, ctx) = setup(&common)?;
            let a = read_matrix(&matrix, &ring)?;
            let p = exterior_power(&ctx, &a)?;
            Ok(Output::with_text(p.to_json(), p.to_string()))
        }
        Command::Transvection { common, i, j, arg } => {
            let (ring, ctx) = setup(&common)?;
            let x = elem(&ring, &arg)?;
            let fs = ext_transvection_factors(&ctx, i, j, &x)?;
            let label = pword(&ctx, i, j, &x).to_string();
            let prod = fs
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join("·");
            Ok(Output::with_text(
                json!({
                    "generator": label,
                    "factors": fs.iter().map(ExtTransvection::to_json).collect::<Vec<_>>(),
                }),
                format!("{label} = {prod}"),
            ))
        }
        Command::Commutator {
            common,
            row,
            col,
            i,
            j,
            xi,
            zeta,
        } => {
            let (ring, ctx) = setup(&common)?;
            let t = ExtTransvection::new(
                &ctx,
                weight(&ctx, &row)?,
                weight(&ctx, &col)?,
                elem(&ring, &xi)?,
            )?;
            let z = elem(&ring, &zeta)?;
            let class = classify_commutator(&t, i, j, &z)?;
            let lhs = format!("[{t}, {}]", pword(&ctx, i, j, &z));
            let rhs = match class.factors() {
                Some(fs) if fs.is_empty() => "e".to_string(),
                Some(fs) => fs
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join("·"),
                None => class.word().to_string(),
            };
            Ok(Output::with_text(
                json!({
                    "kind": class.kind(),
                    "factors": class.factors().map(|fs| fs.iter().map(ExtTransvection::to_json).collect::<Vec<_>>()),
                    "word": class.word().to_string(),
                }),
                format!("{lhs} = {rhs}    [{}]", class.kind()),
            ))
        }
        Command::Level { common, gens } => {
            let (ring, ctx) = setup(&common)?;
            let gs = gens
                .iter()
                .map(|g| {
                    let mut parts = g.splitn(3, ':');
                    let (Some(a), Some(b), Some(x)) = (parts.next(), parts.next(), parts.next())
                    else {
                        return Err(CliError::Input(format!("expected I:J:xi, got `{g}`")));
                    };
                    Ok(ExtTransvection::new(
                        &ctx,
                        weight(&ctx, a)?,
                        weight(&ctx, b)?,
                        elem(&ring, x)?,
                    )?)
                })
                .collect::<Res<Vec<_>>>()?;
            let a = compute_level(&ctx, &ring, &gs)?;
            Ok(Output::json(
                json!({"ring": ring.to_string(), "level": a.to_string()}),
            ))
        }
        Command::Witness { kind } => witness(kind),
        Command::Form { common } => {
            let (ring, ctx) = setup(&common)?;
            let f = build_form(&ctx, &ring)?;
            Ok(Output::with_text(f.to_json(), f.to_string()))
        }
        Command::Pluecker { common } => {
            let (ring, ctx) = setup(&common)?;
            let s = build_pluecker(&ctx, &ring)?;
            let text = s
                .generators
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::with_text(s.to_json(), text))
        }
        Command::Stab {
            common,
            matrix,
            system,
        } => {
            let (ring, ctx) = setup(&common)?;
            let g = read_matrix(&matrix, &ring)?;
            let targets = match system {
                SystemKind::Canonical => canonical_targets(&ctx, &ring)?,
                SystemKind::Form => vec![StabTarget::Form(build_form(&ctx, &ring)?)],
                SystemKind::Partition => {
                    vec![StabTarget::System(build_partition_ideal(&ctx, &ring)?)]
                }
                SystemKind::Pluecker => vec![StabTarget::System(build_pluecker(&ctx, &ring)?)],
            };
            let mut reports = Vec::new();
            for t in &targets {
                let name = match t {
                    StabTarget::Form(_) => "form",
                    StabTarget::System(QuadricSystem { provenance, .. }) => provenance.name(),
                };
                let mut r = stabilizer_check(&g, t)?.to_json();
                r["target"] = json!(name);
                reports.push(r);
            }
            let member = reports.iter().all(|r| r["member"] == json!(true));
            Ok(Output::json(json!({"member": member, "reports": reports})))
        }
        Command::Congr {
            common,
            matrix,
            modulus,
        } => {
            let (ring, ctx) = setup(&common)?;
            let g = read_matrix(&matrix, &ring)?;
            let a = ideal_generate(&ring, &[ring.int(modulus)])?;
            let member = congruence_membership(&ctx, &g, &a)?;
            Ok(Output::json(
                json!({"ideal": a.to_string(), "member": member}),
            ))
        }
        Command::Verify { suite, seed } => {
            let report = super::run_suite(suite, seed);
            let text = report.render();
            let mut out = Output::with_text(report.to_json(), text);
            out.failed = report.failures() > 0;
            Ok(out)
        }
    }
}

fn witness(kind: WitnessKind) -> Res<Output> {
    match kind {
        WitnessKind::Equalize {
            common,
            from,
            to,
            xi,
        } => {
            let (ring, ctx) = setup(&common)?;
            let (f, t) = (pair(&ctx, &from)?, pair(&ctx, &to)?);
            let x = elem(&ring, &xi)?;
            derivation_output(equalize_witness(&ctx, (&f.0, &f.1), (&t.0, &t.1), &x)?, &x)
        }
        WitnessKind::Lower {
            common,
            from,
            to,
            xi,
        } => {
            let (ring, ctx) = setup(&common)?;
            let (f, t) = (pair(&ctx, &from)?, pair(&ctx, &to)?);
            let x = elem(&ring, &xi)?;
            derivation_output(
                lower_height_witness(&ctx, (&f.0, &f.1), (&t.0, &t.1), &x)?,
                &x,
            )
        }
        WitnessKind::Raise {
            common,
            k,
            xi,
            zeta,
            zeta1,
            variant,
            fresh,
            c,
        } => {
            let (ring, ctx) = setup(&common)?;
            let x = elem(&ring, &xi)?;
            let fresh = fresh
                .map(|s| {
                    s.split(',')
                        .map(|v| {
                            v.trim()
                                .parse::<usize>()
                                .map_err(|_| CliError::Input(format!("bad index `{v}`")))
                        })
                        .collect::<Res<Vec<_>>>()
                })
                .transpose()?;
            let opts = RaiseOptions {
                variant: match variant {
                    VariantArg::Row => RaiseVariant::Row,
                    VariantArg::Column => RaiseVariant::Column,
                },
                indices: RaiseIndices { fresh, c },
                zeta: elem(&ring, &zeta)?,
                zeta1: elem(&ring, &zeta1)?,
            };
            derivation_output(raise_height_witness_with(&ctx, k, &x, &opts)?, &x)
        }
        WitnessKind::Zfactor {
            common,
            row,
            col,
            xi,
            zeta,
            ideal,
        } => {
            let (ring, ctx) = setup(&common)?;
            let z = RelativeGenerator::new(
                &ctx,
                weight(&ctx, &row)?,
                weight(&ctx, &col)?,
                elem(&ring, &xi)?,
                elem(&ring, &zeta)?,
            )?;
            let a = ideal
                .map(|g| Ok::<_, CliError>(ideal_generate(&ring, &[elem(&ring, &g)?])?))
                .transpose()?;
            let pieces = relative_generator_factorization(&z, a.as_ref())?;
            let verified =
                ext_evaluate(&ctx, &ring, &factorization_word(&pieces))? == z.matrix()?;
            let js: Vec<Json> = pieces
                .iter()
                .map(|p| json!({"conjugator": p.conjugator.as_ref().map(|c| c.to_json()), "base": p.base.to_json()}))
                .collect();
            let text = pieces
                .iter()
                .map(|p| p.word().to_string())
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::with_text(
                json!({"pieces": js, "verified": verified}),
                format!("{text}\nverified: {verified}"),
            ))
        }
        WitnessKind::Perfect {
            common,
            row,
            col,
            i,
            j,
            arg,
        } => {
            let (ring, ctx) = setup(&common)?;
            let x = elem(&ring, &arg)?;
            let target = match (row, col, i, j) {
                (Some(r), Some(c), None, None) => PerfectTarget::Transvection(
                    ExtTransvection::new(&ctx, weight(&ctx, &r)?, weight(&ctx, &c)?, x)?,
                ),
                (None, None, Some(i), Some(j)) => PerfectTarget::Power { i, j, zeta: x },
                _ => {
                    return Err(CliError::Input(
                        "give either --I and --J or --i and --j".into(),
                    ))
                }
            };
            let w = perfectness_witness(&ctx, &target)?;
            let verified =
                ext_evaluate(&ctx, &ring, &w.word())? == ext_evaluate(&ctx, &ring, &w.target)?;
            Ok(Output::with_text(
                json!({
                    "target": w.target.to_string(),
                    "left": w.left.to_string(),
                    "right": w.right.to_string(),
                    "verified": verified,
                }),
                format!("{} = {}\nverified: {verified}", w.target, w.word()),
            ))
        }
    }
}
