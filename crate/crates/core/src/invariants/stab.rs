use std::collections::BTreeMap;

use serde_json::{json, Value as Json};

use super::{
    build_form, build_partition_ideal, build_pluecker, substitute_linear, InvariantsError,
    QuadricSystem, WeightPoly,
};
use crate::exterior::ExteriorContext;
use crate::linalg::{mat_inverse, Matrix};
use crate::rings::{solve_linear, Ideal, Integer, Ring, RingElem, RingSpec};

type Terms = BTreeMap<Vec<usize>, RingElem>;

/// Row-reduced basis of a generator span, over a field.
struct Echelon {
    rows: Vec<(Vec<usize>, Terms)>,
}

impl Echelon {
    fn new(gens: &[WeightPoly]) -> Echelon {
        let mut rows: Vec<(Vec<usize>, Terms)> = Vec::new();
        for g in gens {
            let mut t = g.terms().clone();
            reduce(&rows, &mut t);
            let Some((pivot, c)) = t.iter().next().map(|(m, c)| (m.clone(), c.clone())) else {
                continue;
            };
            let inv = c.inverse().expect("nonzero field element");
            let t: Terms = t.into_iter().map(|(m, a)| (m, &a * &inv)).collect();
            for (_, r) in rows.iter_mut() {
                let f = r.get(&pivot).cloned();
                if let Some(f) = f {
                    axpy(r, &-&f, &t);
                }
            }
            rows.push((pivot, t));
        }
        Echelon { rows }
    }

    fn contains(&self, p: &Terms) -> bool {
        let mut t = p.clone();
        reduce(&self.rows, &mut t);
        t.is_empty()
    }
}

/// `acc += c·t`
fn axpy(acc: &mut Terms, c: &RingElem, t: &Terms) {
    for (m, a) in t {
        let v = acc.get(m).map_or_else(|| a * c, |b| b + &(a * c));
        if v.is_zero() {
            acc.remove(m);
        } else {
            acc.insert(m.clone(), v);
        }
    }
}

fn reduce(rows: &[(Vec<usize>, Terms)], t: &mut Terms) {
    for (pivot, r) in rows {
        if let Some(c) = t.get(pivot).cloned() {
            axpy(t, &-&c, r);
        }
    }
}

/// Decides membership in the R-span of a generator list.
struct SpanChecker<'a> {
    sys: &'a QuadricSystem,
    echelon: Option<Echelon>,
}

impl<'a> SpanChecker<'a> {
    fn new(sys: &'a QuadricSystem, ring: &Ring) -> Result<Self, InvariantsError> {
        if ring.is_polynomial() {
            return Err(InvariantsError::Unsupported(format!(
                "span membership over {ring}"
            )));
        }
        let echelon = ring.is_field().then(|| Echelon::new(&sys.generators));
        Ok(SpanChecker { sys, echelon })
    }

    fn contains(&self, p: &WeightPoly) -> Result<bool, InvariantsError> {
        if p.is_zero() {
            return Ok(true);
        }
        let Some(d) = p.homogeneous_degree() else {
            return Err(InvariantsError::Inhomogeneous);
        };
        if let Some(g) = self.sys.generators.first() {
            if g.is_alternating() != p.is_alternating() {
                return Err(InvariantsError::Unsupported(
                    "mixing alternating and symmetric polynomials".into(),
                ));
            }
        }
        if d != self.sys.degree || self.sys.generators.is_empty() {
            return Ok(false);
        }
        if let Some(e) = &self.echelon {
            return Ok(e.contains(p.terms()));
        }
        // coefficient comparison: one equation per monomial
        let ring = p.ring();
        let mut monos: Vec<&Vec<usize>> = self
            .sys
            .generators
            .iter()
            .flat_map(|g| g.terms().keys())
            .collect();
        monos.sort();
        monos.dedup();
        if p.terms().keys().any(|m| monos.binary_search(&m).is_err()) {
            return Ok(false);
        }
        let a: Vec<Vec<RingElem>> = monos
            .iter()
            .map(|m| self.sys.generators.iter().map(|g| g.coeff(m)).collect())
            .collect();
        let b: Vec<RingElem> = monos.iter().map(|m| p.coeff(m)).collect();
        Ok(solve_linear(ring, &a, &b)?.is_some())
    }
}

/// True iff `p` is an R-linear combination of the generators of `sys`.
pub fn span_membership(p: &WeightPoly, sys: &QuadricSystem) -> Result<bool, InvariantsError> {
    SpanChecker::new(sys, p.ring())?.contains(p)
}

#[derive(Clone, Debug, PartialEq)]
pub enum StabTarget {
    Form(WeightPoly),
    System(QuadricSystem),
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerReport {
    pub member: bool,
    /// `λ` with `g∘f = λ·f`, for a single form.
    pub multiplier: Option<RingElem>,
    pub failing_generator: Option<usize>,
}

impl StabilizerReport {
    pub fn to_json(&self) -> Json {
        json!({
            "member": self.member,
            "multiplier": self.multiplier.as_ref().map(RingElem::to_json),
            "failing_generator": self.failing_generator,
        })
    }
}

fn form_report(g: &Matrix, f: &WeightPoly) -> Result<StabilizerReport, InvariantsError> {
    let ctx = f.ctx();
    if ctx.n() == 2 * ctx.m() && ctx.m() >= 3 {
        return Err(InvariantsError::FormRefused(ctx.n(), ctx.m()));
    }
    let ring = f.ring();
    let gf = substitute_linear(f, &g.map_ring(ring)?)?;
    let no = StabilizerReport {
        member: false,
        multiplier: None,
        failing_generator: Some(0),
    };
    let Some((mono, c)) = f.terms().iter().next() else {
        return Ok(StabilizerReport {
            member: true,
            multiplier: None,
            failing_generator: None,
        });
    };
    let Some(cinv) = c.inverse() else {
        return Err(InvariantsError::Unsupported(
            "form with a non-unit leading coefficient".into(),
        ));
    };
    let lambda = &gf.coeff(mono) * &cinv;
    if !lambda.is_unit() || gf != f.scale(&lambda) {
        return Ok(no);
    }
    Ok(StabilizerReport {
        member: true,
        multiplier: Some(lambda),
        failing_generator: None,
    })
}

/// Whether `g` preserves the form up to a unit, or the span of the system
/// in both directions (under `g` and under `g⁻¹`).
pub fn stabilizer_check(
    g: &Matrix,
    target: &StabTarget,
) -> Result<StabilizerReport, InvariantsError> {
    let ginv = mat_inverse(g).map_err(|_| InvariantsError::NotInvertible)?;
    match target {
        StabTarget::Form(f) => form_report(g, f),
        StabTarget::System(sys) => {
            let Some(first) = sys.generators.first() else {
                return Ok(StabilizerReport {
                    member: true,
                    multiplier: None,
                    failing_generator: None,
                });
            };
            let ring = first.ring();
            let (g, ginv) = (g.map_ring(ring)?, ginv.map_ring(ring)?);
            let span = SpanChecker::new(sys, ring)?;
            for (k, p) in sys.generators.iter().enumerate() {
                for h in [&g, &ginv] {
                    if !span.contains(&substitute_linear(p, h)?)? {
                        return Ok(StabilizerReport {
                            member: false,
                            multiplier: None,
                            failing_generator: Some(k),
                        });
                    }
                }
            }
            Ok(StabilizerReport {
                member: true,
                multiplier: None,
                failing_generator: None,
            })
        }
    }
}

/// The invariants whose common stabilizer is tested for (n, m): the form
/// when `m | n` and `n ≠ 2m`, the Plücker system when `n = 2m`, and the
/// partition ideal together with the Plücker system when `m ∤ n`.
pub fn canonical_targets(
    ctx: &ExteriorContext,
    ring: &Ring,
) -> Result<Vec<StabTarget>, InvariantsError> {
    let (n, m) = (ctx.n(), ctx.m());
    if n % m == 0 && n != 2 * m {
        return Ok(vec![StabTarget::Form(build_form(ctx, ring)?)]);
    }
    if n == 2 * m {
        return Ok(vec![StabTarget::System(build_pluecker(ctx, ring)?)]);
    }
    Ok(vec![
        StabTarget::System(build_partition_ideal(ctx, ring)?),
        StabTarget::System(build_pluecker(ctx, ring)?),
    ])
}

/// Membership of `g` in the preimage of ∧^m GL_n(R/A) under reduction
/// modulo A, for R = ℤ or ℤ/k.
pub fn congruence_membership(
    ctx: &ExteriorContext,
    g: &Matrix,
    a: &Ideal,
) -> Result<bool, InvariantsError> {
    if g.rows() != ctx.big_n() || !g.is_square() {
        return Err(InvariantsError::SizeMismatch(g.rows(), ctx.big_n()));
    }
    let ring = a.ring();
    if !matches!(
        ring.spec(),
        RingSpec::Integers | RingSpec::IntegersMod(_) | RingSpec::PrimeField(_)
    ) {
        return Err(InvariantsError::QuotientNotRepresentable(ring.to_string()));
    }
    let g = g.map_ring(ring)?;
    let d: Integer = a
        .normal_form()
        .cloned()
        .ok_or_else(|| InvariantsError::QuotientNotRepresentable(a.to_string()))?;
    if d.is_one() {
        return Ok(true);
    }
    let quotient = if d.is_zero() {
        ring.clone()
    } else {
        let k = d
            .to_i64()
            .ok_or_else(|| InvariantsError::QuotientNotRepresentable(a.to_string()))?
            as u64;
        if crate::rings::is_prime(k) {
            Ring::fp(k)?
        } else {
            Ring::zmod(k)?
        }
    };
    let gbar = g.map_ring(&quotient)?;
    if mat_inverse(&gbar).is_err() {
        return Ok(false);
    }
    for t in canonical_targets(ctx, &quotient)? {
        if !stabilizer_check(&gbar, &t)?.member {
            return Ok(false);
        }
    }
    Ok(true)
}
