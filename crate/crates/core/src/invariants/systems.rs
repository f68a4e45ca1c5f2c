use serde_json::{json, Value as Json};

use super::{InvariantsError, WeightPoly};
use crate::exterior::{subsets, ExteriorContext, WeightIndex};
use crate::rings::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Form,
    PartitionIdeal,
    Pluecker,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Form => "form",
            Provenance::PartitionIdeal => "partition-ideal",
            Provenance::Pluecker => "pluecker",
        }
    }
}

/// Homogeneous generators of equal degree; their span is the object whose
/// stabilizer is tested.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricSystem {
    pub ctx: ExteriorContext,
    pub generators: Vec<WeightPoly>,
    pub degree: usize,
    pub provenance: Provenance,
}

impl QuadricSystem {
    pub fn from_form(f: WeightPoly) -> Self {
        let degree = f.homogeneous_degree().unwrap_or(0);
        QuadricSystem {
            ctx: f.ctx().clone(),
            generators: vec![f],
            degree,
            provenance: Provenance::Form,
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn to_json(&self) -> Json {
        json!({
            "n": self.ctx.n(),
            "m": self.ctx.m(),
            "provenance": self.provenance.name(),
            "degree": self.degree,
            "generators": self.generators.iter().map(WeightPoly::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Partitions of `set` into blocks of size `m`, each block sorted and the
/// blocks ordered by their least element.
fn partitions(set: &[usize], m: usize) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = set.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for tail in subsets(rest, m - 1) {
        let block: Vec<usize> = std::iter::once(first).chain(tail.iter().copied()).collect();
        let remaining: Vec<usize> = rest.iter().copied().filter(|x| !tail.contains(x)).collect();
        for mut p in partitions(&remaining, m) {
            p.insert(0, block.clone());
            out.push(p);
        }
    }
    out
}

fn inversion_sign(seq: &[usize]) -> i64 {
    let inv = (0..seq.len())
        .map(|a| (a + 1..seq.len()).filter(|&b| seq[a] > seq[b]).count())
        .sum::<usize>();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `f` on the index set `support`: signed sum over its partitions into
/// m-blocks. Alternating when m is odd.
fn form_on(
    ctx: &ExteriorContext,
    ring: &Ring,
    support: &[usize],
) -> Result<WeightPoly, InvariantsError> {
    let m = ctx.m();
    let mut f = WeightPoly::zero(ctx, ring, m % 2 == 1);
    for p in partitions(support, m) {
        let concat: Vec<usize> = p.concat();
        let ranks = p
            .iter()
            .map(|b| {
                ctx.rank(&WeightIndex::new(b.clone())?)
                    .ok_or(InvariantsError::Internal("block rank"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        f.add_term(ranks, ring.int(inversion_sign(&concat)));
    }
    Ok(f)
}

/// `f_{n,m}` for `m | n`.
pub fn build_form(ctx: &ExteriorContext, ring: &Ring) -> Result<WeightPoly, InvariantsError> {
    if !ctx.n().is_multiple_of(ctx.m()) {
        return Err(InvariantsError::NotDivisible(ctx.n(), ctx.m()));
    }
    form_on(ctx, ring, &(1..=ctx.n()).collect::<Vec<_>>())
}

/// For `m ∤ n`, `n = lm + r`: one copy of `f_{lm,m}` per lm-subset.
pub fn build_partition_ideal(
    ctx: &ExteriorContext,
    ring: &Ring,
) -> Result<QuadricSystem, InvariantsError> {
    let (n, m) = (ctx.n(), ctx.m());
    if n % m == 0 {
        return Err(InvariantsError::Divisible(n, m));
    }
    let l = n / m;
    let all: Vec<usize> = (1..=n).collect();
    let generators = subsets(&all, l * m)
        .iter()
        .map(|s| form_on(ctx, ring, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QuadricSystem {
        ctx: ctx.clone(),
        generators,
        degree: l,
        provenance: Provenance::PartitionIdeal,
    })
}

/// Quadrics `Σ_k (−1)^k x_{S∪t_k}·x_{T∖t_k}` over (m−1)-subsets S and
/// (m+1)-subsets T, with zero quadrics dropped and duplicates up to sign
/// removed.
pub fn build_pluecker(
    ctx: &ExteriorContext,
    ring: &Ring,
) -> Result<QuadricSystem, InvariantsError> {
    let (n, m) = (ctx.n(), ctx.m());
    if m >= n {
        return Err(InvariantsError::BadPower(n, m));
    }
    let all: Vec<usize> = (1..=n).collect();
    let rank = |v: Vec<usize>| {
        ctx.rank(&WeightIndex::new(v).expect("distinct"))
            .expect("in range")
    };
    let mut generators: Vec<WeightPoly> = Vec::new();
    for s in subsets(&all, m - 1) {
        for t in subsets(&all, m + 1) {
            let mut q = WeightPoly::zero(ctx, ring, false);
            for (k, &tk) in t.iter().enumerate() {
                if s.contains(&tk) {
                    continue;
                }
                // x_{S∪t_k} with S listed first, then t_k
                let mut left = s.clone();
                left.push(tk);
                let sign = inversion_sign(&left) * if k % 2 == 0 { 1 } else { -1 };
                left.sort_unstable();
                let right: Vec<usize> = t.iter().copied().filter(|&x| x != tk).collect();
                q.add_term(vec![rank(left), rank(right)], ring.int(sign));
            }
            if q.is_zero() {
                continue;
            }
            if q.terms()
                .values()
                .next()
                .is_some_and(|c| c.to_string().starts_with('-'))
            {
                q = q.neg();
            }
            if !generators.contains(&q) {
                generators.push(q);
            }
        }
    }
    Ok(QuadricSystem {
        ctx: ctx.clone(),
        generators,
        degree: 2,
        provenance: Provenance::Pluecker,
    })
}
