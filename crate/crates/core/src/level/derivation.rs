use std::fmt;

use serde_json::{json, Value as Json};

use super::LevelError;
use crate::exterior::{
    classify_commutator, ext_evaluate, tword, CommutatorClass, ExtLetter, ExtTransvection,
    ExteriorContext,
};
use crate::linalg::{Letter, Matrix, Word};
use crate::rings::{Ring, RingElem};

/// One closure move. Step operands refer to earlier steps by index.
#[derive(Clone, Debug, PartialEq)]
pub enum StepKind {
    /// A hypothesis `t_{I,J}(ξ) ∈ H`.
    Given(ExtTransvection),
    /// `∧^m t_{i,j}(ζ)`, always in H.
    ExtGen {
        i: usize,
        j: usize,
        arg: RingElem,
    },
    Commute(usize, usize),
    Product(Vec<usize>),
    Inverse(usize),
    /// Replaces a single transvection `t_{I,J}(x)` by `t_{I,J}(x/2)`.
    ScaleByHalf(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub kind: StepKind,
    /// When present, the step's value is the product of these transvections.
    pub claim: Option<Vec<ExtTransvection>>,
    pub note: String,
}

/// A checkable sequence of closure moves ending in `conclusion`.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub ctx: ExteriorContext,
    pub ring: Ring,
    pub steps: Vec<Step>,
    pub conclusion: ExtTransvection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub failing_step: Option<usize>,
    pub message: String,
}

impl Derivation {
    pub fn uses_halving(&self) -> bool {
        self.steps
            .iter()
            .any(|s| matches!(s.kind, StepKind::ScaleByHalf(_)))
    }

    pub fn to_json(&self) -> Json {
        let steps: Vec<Json> = self
            .steps
            .iter()
            .map(|s| {
                let mut v = match &s.kind {
                    StepKind::Given(t) => json!({"op": "given", "t": t.to_json()}),
                    StepKind::ExtGen { i, j, arg } => {
                        json!({"op": "ext_gen", "i": i, "j": j, "arg": arg.to_json()})
                    }
                    StepKind::Commute(a, b) => json!({"op": "commute", "x": a, "y": b}),
                    StepKind::Product(ids) => json!({"op": "product", "factors": ids}),
                    StepKind::Inverse(a) => json!({"op": "inverse", "of": a}),
                    StepKind::ScaleByHalf(a) => json!({"op": "scale_by_half", "of": a}),
                };
                if let Some(c) = &s.claim {
                    v["claim"] = Json::Array(c.iter().map(ExtTransvection::to_json).collect());
                }
                if !s.note.is_empty() {
                    v["note"] = json!(s.note);
                }
                v
            })
            .collect();
        json!({
            "n": self.ctx.n(),
            "m": self.ctx.m(),
            "ring": self.ring.to_string(),
            "steps": steps,
            "conclusion": self.conclusion.to_json(),
        })
    }

    /// Human-readable transcript, one step per line.
    pub fn transcript(&self) -> String {
        self.to_string()
    }
}

fn product_label(ts: &[ExtTransvection]) -> String {
    if ts.is_empty() {
        return "e".into();
    }
    ts.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join("·")
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.steps.iter().enumerate() {
            let lhs = match &s.kind {
                StepKind::Given(t) => format!("{t} ∈ H"),
                StepKind::ExtGen { i, j, arg } => format!("∧t_{{{i},{j}}}({arg})"),
                StepKind::Commute(a, b) => format!("[s{a}, s{b}]"),
                StepKind::Product(ids) => ids
                    .iter()
                    .map(|i| format!("s{i}"))
                    .collect::<Vec<_>>()
                    .join("·"),
                StepKind::Inverse(a) => format!("s{a}^-1"),
                StepKind::ScaleByHalf(a) => format!("half(s{a})"),
            };
            write!(f, "s{k} = {lhs}")?;
            if let (Some(c), false) = (&s.claim, matches!(s.kind, StepKind::Given(_))) {
                write!(f, " = {}", product_label(c))?;
            }
            if !s.note.is_empty() {
                write!(f, "    [{}]", s.note)?;
            }
            writeln!(f)?;
        }
        write!(f, "therefore {} ∈ H", self.conclusion)
    }
}

/// Incremental construction with symbolic tracking of each step's value.
pub struct DerivationBuilder {
    ctx: ExteriorContext,
    ring: Ring,
    steps: Vec<Step>,
}

impl DerivationBuilder {
    pub fn new(ctx: &ExteriorContext, ring: &Ring) -> Self {
        DerivationBuilder {
            ctx: ctx.clone(),
            ring: ring.clone(),
            steps: Vec::new(),
        }
    }

    pub fn ctx(&self) -> &ExteriorContext {
        &self.ctx
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn push(
        &mut self,
        kind: StepKind,
        claim: Option<Vec<ExtTransvection>>,
        note: impl Into<String>,
    ) -> usize {
        self.steps.push(Step {
            kind,
            claim,
            note: note.into(),
        });
        self.steps.len() - 1
    }

    pub fn claim(&self, id: usize) -> Option<&[ExtTransvection]> {
        self.steps[id].claim.as_deref()
    }

    /// The single transvection a step is known to equal.
    pub fn single(&self, id: usize) -> Option<&ExtTransvection> {
        match self.claim(id) {
            Some([t]) => Some(t),
            _ => None,
        }
    }

    pub fn given(&mut self, t: &ExtTransvection) -> usize {
        self.push(
            StepKind::Given(t.clone()),
            Some(vec![t.clone()]),
            "hypothesis",
        )
    }

    pub fn ext_gen(&mut self, i: usize, j: usize, arg: &RingElem) -> usize {
        self.push(
            StepKind::ExtGen {
                i,
                j,
                arg: arg.clone(),
            },
            None,
            "∧^m E(n,R) ≤ H",
        )
    }

    /// `[s_a, s_b]` with the claim supplied by the caller.
    pub fn commute_claimed(
        &mut self,
        a: usize,
        b: usize,
        claim: Vec<ExtTransvection>,
        note: &str,
    ) -> usize {
        self.push(StepKind::Commute(a, b), Some(claim), note)
    }

    /// `[t_{I,J}(ξ), ∧^m t_{i,j}(ζ)]` for a step known to be a single
    /// transvection, claimed through the commutator classification.
    pub fn commute_with_gen(
        &mut self,
        t_step: usize,
        gen_step: usize,
    ) -> Result<usize, LevelError> {
        let t = self
            .single(t_step)
            .ok_or(LevelError::Internal("commutator needs a transvection"))?
            .clone();
        let StepKind::ExtGen { i, j, arg } = &self.steps[gen_step].kind else {
            return Err(LevelError::Internal("second operand must be a generator"));
        };
        let (i, j, arg) = (*i, *j, arg.clone());
        let class = classify_commutator(&t, i, j, &arg)?;
        let note = format!("{} commutator", class.kind());
        match class {
            CommutatorClass::Irreducible { .. } => {
                Ok(self.push(StepKind::Commute(t_step, gen_step), None, note))
            }
            other => Ok(self.push(StepKind::Commute(t_step, gen_step), other.factors(), note)),
        }
    }

    pub fn product(&mut self, ids: &[usize]) -> usize {
        let claim = ids
            .iter()
            .map(|&i| self.claim(i).map(<[_]>::to_vec))
            .collect::<Option<Vec<_>>>()
            .map(|parts| merge_commuting(parts.concat()));
        self.push(StepKind::Product(ids.to_vec()), claim, "product")
    }

    pub fn inverse(&mut self, id: usize) -> usize {
        let claim = self
            .claim(id)
            .map(|c| c.iter().rev().map(|t| t.with_arg(-t.arg())).collect());
        self.push(StepKind::Inverse(id), claim, "inverse")
    }

    pub fn half(&mut self, id: usize) -> Result<usize, LevelError> {
        let half = self
            .ring
            .int(2)
            .inverse()
            .ok_or(LevelError::TwoNotInvertible)?;
        let t = self
            .single(id)
            .ok_or(LevelError::Internal("halving needs a transvection"))?;
        let claim = vec![t.with_arg(t.arg() * &half)];
        Ok(self.push(StepKind::ScaleByHalf(id), Some(claim), "2 is invertible"))
    }

    pub fn finish(self, last: usize) -> Result<Derivation, LevelError> {
        let conclusion = self
            .single(last)
            .ok_or(LevelError::Internal(
                "derivation must end in a single transvection",
            ))?
            .clone();
        Ok(Derivation {
            ctx: self.ctx,
            ring: self.ring,
            steps: self.steps,
            conclusion,
        })
    }

    /// Appends the steps of `d`, renumbered, and returns the index of its
    /// final step. Its hypotheses are kept as GIVEN steps.
    pub fn splice(&mut self, d: &Derivation) -> usize {
        let offset = self.steps.len();
        for s in &d.steps {
            let shift = |i: &usize| i + offset;
            let kind = match &s.kind {
                StepKind::Commute(a, b) => StepKind::Commute(shift(a), shift(b)),
                StepKind::Product(ids) => StepKind::Product(ids.iter().map(shift).collect()),
                StepKind::Inverse(a) => StepKind::Inverse(shift(a)),
                StepKind::ScaleByHalf(a) => StepKind::ScaleByHalf(shift(a)),
                other => other.clone(),
            };
            self.steps.push(Step {
                kind,
                claim: s.claim.clone(),
                note: s.note.clone(),
            });
        }
        self.steps.len() - 1
    }
}

fn commute(a: &ExtTransvection, b: &ExtTransvection) -> bool {
    a.col() != b.row() && a.row() != b.col()
}

/// Collects equal positions when all factors commute pairwise; otherwise
/// leaves the list as it is.
fn merge_commuting(ts: Vec<ExtTransvection>) -> Vec<ExtTransvection> {
    let all_commute = ts
        .iter()
        .enumerate()
        .all(|(k, a)| ts[k + 1..].iter().all(|b| commute(a, b)));
    if !all_commute {
        return ts;
    }
    let mut out: Vec<ExtTransvection> = Vec::new();
    for t in ts {
        match out
            .iter_mut()
            .find(|u| u.row() == t.row() && u.col() == t.col())
        {
            Some(u) => *u = u.with_arg(u.arg() + t.arg()),
            None => out.push(t),
        }
    }
    out.retain(|t| !t.arg().is_zero());
    out
}

/// Re-evaluates every step with exact matrices over `ring`, checking each
/// claim and the conclusion.
pub fn validate_derivation(d: &Derivation, ring: &Ring) -> Result<ValidationReport, LevelError> {
    if d.uses_halving() && !ring.two_invertible() {
        return Err(LevelError::TwoNotInvertible);
    }
    let ctx = &d.ctx;
    let big = ctx.big_n();
    let coerce_t = |t: &ExtTransvection| -> Result<ExtTransvection, LevelError> {
        Ok(t.with_arg(ring.coerce(t.arg())?))
    };
    let word_of = |ts: &[ExtTransvection]| -> Result<Word<ExtLetter>, LevelError> {
        Ok(Word::prod(
            ts.iter()
                .map(|t| coerce_t(t).map(|t| tword(&t)))
                .collect::<Result<_, _>>()?,
        ))
    };
    let fail = |k: usize, msg: String| ValidationReport {
        valid: false,
        failing_step: Some(k),
        message: msg,
    };
    // each value is stored with its inverse
    let mut values: Vec<(Matrix, Matrix)> = Vec::with_capacity(d.steps.len());
    for (k, s) in d.steps.iter().enumerate() {
        let operands_ok = match &s.kind {
            StepKind::Commute(a, b) => *a < k && *b < k,
            StepKind::Product(ids) => ids.iter().all(|&i| i < k),
            StepKind::Inverse(a) | StepKind::ScaleByHalf(a) => *a < k,
            _ => true,
        };
        if !operands_ok {
            return Ok(fail(k, "step refers to a later step".into()));
        }
        let value = match &s.kind {
            StepKind::Given(t) => {
                let w = tword(&coerce_t(t)?);
                (
                    ext_evaluate(ctx, ring, &w)?,
                    ext_evaluate(ctx, ring, &Word::inv(w))?,
                )
            }
            StepKind::ExtGen { i, j, arg } => {
                let l = ExtLetter::power(ctx, *i, *j, ring.coerce(arg)?)?;
                let mut m = Matrix::identity(ring, big);
                l.act_left(&mut m);
                let mut inv = Matrix::identity(ring, big);
                l.inverse().act_left(&mut inv);
                (m, inv)
            }
            StepKind::Commute(a, b) => {
                let (x, xi) = &values[*a];
                let (y, yi) = &values[*b];
                (&(&(x * y) * xi) * yi, &(&(y * x) * yi) * xi)
            }
            StepKind::Product(ids) => {
                let mut m = Matrix::identity(ring, big);
                let mut inv = Matrix::identity(ring, big);
                for &i in ids {
                    m = &m * &values[i].0;
                    inv = &values[i].1 * &inv;
                }
                (m, inv)
            }
            StepKind::Inverse(a) => (values[*a].1.clone(), values[*a].0.clone()),
            StepKind::ScaleByHalf(a) => {
                let Some([t]) = d.steps[*a].claim.as_deref() else {
                    return Ok(fail(
                        k,
                        "halving needs a step claimed as one transvection".into(),
                    ));
                };
                let t = coerce_t(t)?;
                if ext_evaluate(ctx, ring, &tword(&t))? != values[*a].0 {
                    return Ok(fail(
                        k,
                        "operand of halving is not the claimed transvection".into(),
                    ));
                }
                let half = ring.int(2).inverse().ok_or(LevelError::TwoNotInvertible)?;
                let w = tword(&t.with_arg(t.arg() * &half));
                (
                    ext_evaluate(ctx, ring, &w)?,
                    ext_evaluate(ctx, ring, &Word::inv(w))?,
                )
            }
        };
        if let Some(c) = &s.claim {
            if ext_evaluate(ctx, ring, &word_of(c)?)? != value.0 {
                return Ok(fail(
                    k,
                    format!("value differs from claimed {}", product_label(c)),
                ));
            }
        }
        values.push(value);
    }
    let Some((last, _)) = values.last() else {
        return Ok(fail(0, "empty derivation".into()));
    };
    let concl = ext_evaluate(ctx, ring, &tword(&coerce_t(&d.conclusion)?))?;
    if *last != concl {
        return Ok(fail(
            d.steps.len() - 1,
            format!("final value is not {}", d.conclusion),
        ));
    }
    Ok(ValidationReport {
        valid: true,
        failing_step: None,
        message: "ok".into(),
    })
}
