use super::derivation::{Derivation, DerivationBuilder};
use super::LevelError;
use crate::exterior::{ExtTransvection, ExteriorContext, WeightIndex};
use crate::rings::RingElem;

/// Tracks the current transvection `t_{I,J}(x)` while moves are appended.
struct Walker<'a> {
    b: DerivationBuilder,
    cur: usize,
    zeta: &'a RingElem,
}

impl Walker<'_> {
    fn state(&self) -> ExtTransvection {
        self.b
            .single(self.cur)
            .expect("walker state is a transvection")
            .clone()
    }

    fn gen_commute(&mut self, i: usize, j: usize) -> Result<(), LevelError> {
        let g = self.b.ext_gen(i, j, self.zeta);
        self.cur = self.b.commute_with_gen(self.cur, g)?;
        if self.b.single(self.cur).is_none() {
            return Err(LevelError::Internal(
                "move did not produce a single transvection",
            ));
        }
        Ok(())
    }

    /// `J ∖ {j} ∪ {y}` via `∧^m t_{j,y}(ζ)`.
    fn replace_col(&mut self, j: usize, y: usize) -> Result<(), LevelError> {
        self.gen_commute(j, y)
    }

    /// `I ∖ {i} ∪ {y}` via `∧^m t_{y,i}(ζ)`.
    fn replace_row(&mut self, i: usize, y: usize) -> Result<(), LevelError> {
        self.gen_commute(y, i)
    }

    /// Moves `a ∈ J∖I` into I and `b ∈ I∖J` into J: commutators with
    /// `∧^m t_{a,b}(±ζ)`, their product `t_{Ĩ,J̃}(±2ζ²x)`, then halving.
    fn swap(&mut self, a: usize, b: usize) -> Result<(), LevelError> {
        let start = self.cur;
        let g1 = self.b.ext_gen(a, b, self.zeta);
        let c1 = self.b.commute_with_gen(start, g1)?;
        let g2 = self.b.ext_gen(a, b, &-self.zeta);
        let c2 = self.b.commute_with_gen(start, g2)?;
        let p = self.b.product(&[c1, c2]);
        if self.b.single(p).is_none() {
            return Err(LevelError::Internal("type-3 product did not collapse"));
        }
        self.cur = self.b.half(p)?;
        Ok(())
    }
}

/// Free indices: outside `I ∪ J`, ascending, preferring those outside
/// `avoid`.
fn free_indices(ctx: &ExteriorContext, t: &ExtTransvection, avoid: &[&WeightIndex]) -> Vec<usize> {
    let mut v: Vec<usize> = (1..=ctx.n())
        .filter(|&x| !t.row().contains(x) && !t.col().contains(x))
        .collect();
    v.sort_by_key(|&x| avoid.iter().any(|w| w.contains(x)));
    v
}

fn equalize_in(
    w: &mut Walker<'_>,
    target_row: &WeightIndex,
    target_col: &WeightIndex,
) -> Result<(), LevelError> {
    let ctx = w.b.ctx().clone();
    let insufficient = || LevelError::InsufficientIndices(ctx.n());
    let common_target = target_row.intersection(target_col);
    let targets = [target_row, target_col];
    // common part
    loop {
        let t = w.state();
        let common = t.row().intersection(t.col());
        let Some(&c) = common.elems().iter().find(|&&c| !common_target.contains(c)) else {
            break;
        };
        let &c2 = common_target
            .elems()
            .iter()
            .find(|&&c2| !common.contains(c2))
            .expect("equal heights");
        if t.row().contains(c2) {
            w.replace_col(c, c2)?;
        } else if t.col().contains(c2) {
            w.replace_row(c, c2)?;
        } else {
            let a_only = t.row().difference(t.col());
            let a = *a_only
                .elems()
                .iter()
                .find(|&&a| !target_row.contains(a))
                .or(a_only.elems().first())
                .ok_or_else(insufficient)?;
            w.replace_row(a, c2)?;
            w.replace_col(c, c2)?;
        }
    }
    // row-only part
    loop {
        let t = w.state();
        let a_only = t.row().difference(t.col());
        let want = target_row.difference(&common_target);
        let Some(&a) = a_only.elems().iter().find(|&&a| !want.contains(a)) else {
            break;
        };
        let &a2 = want
            .elems()
            .iter()
            .find(|&&x| !a_only.contains(x))
            .expect("equal sizes");
        if !t.col().contains(a2) {
            w.replace_row(a, a2)?;
        } else if let Some(&y) = free_indices(&ctx, &t, &targets).first() {
            w.replace_col(a2, y)?;
            w.replace_row(a, a2)?;
        } else if a_only.len() > 1 {
            w.swap(a2, a)?;
        } else {
            return Err(insufficient());
        }
    }
    // column-only part; every missing index is free by now
    loop {
        let t = w.state();
        let b_only = t.col().difference(t.row());
        let want = target_col.difference(&common_target);
        let Some(&b) = b_only.elems().iter().find(|&&b| !want.contains(b)) else {
            break;
        };
        let &b2 = want
            .elems()
            .iter()
            .find(|&&x| !b_only.contains(x))
            .expect("equal sizes");
        w.replace_col(b, b2)?;
    }
    let t = w.state();
    if t.row() != target_row || t.col() != target_col {
        return Err(LevelError::Internal("equalize did not reach its target"));
    }
    Ok(())
}

fn check_pair(ctx: &ExteriorContext, i: &WeightIndex, j: &WeightIndex) -> Result<(), LevelError> {
    ctx.check(i)?;
    ctx.check(j)?;
    if i == j {
        return Err(LevelError::DiagonalPosition(i.to_string()));
    }
    Ok(())
}

/// Derives `t_{K,L}(±ξ)` from `t_{I,J}(ξ)` at equal height, with every
/// generator parameter equal to ζ = 1.
pub fn equalize_witness(
    ctx: &ExteriorContext,
    from: (&WeightIndex, &WeightIndex),
    to: (&WeightIndex, &WeightIndex),
    xi: &RingElem,
) -> Result<Derivation, LevelError> {
    equalize_witness_with(ctx, from, to, xi, &xi.ring().one())
}

/// As [`equalize_witness`] with an explicit generator parameter ζ.
pub fn equalize_witness_with(
    ctx: &ExteriorContext,
    from: (&WeightIndex, &WeightIndex),
    to: (&WeightIndex, &WeightIndex),
    xi: &RingElem,
    zeta: &RingElem,
) -> Result<Derivation, LevelError> {
    check_pair(ctx, from.0, from.1)?;
    check_pair(ctx, to.0, to.1)?;
    let (h1, h2) = (from.0.intersection_len(from.1), to.0.intersection_len(to.1));
    if h1 != h2 {
        return Err(LevelError::HeightMismatch(h1, h2));
    }
    let mut b = DerivationBuilder::new(ctx, xi.ring());
    let t = ExtTransvection::new(ctx, from.0.clone(), from.1.clone(), xi.clone())?;
    let cur = b.given(&t);
    let mut w = Walker { b, cur, zeta };
    equalize_in(&mut w, to.0, to.1)?;
    w.b.finish(w.cur)
}

/// Derives a transvection at position `(K, L)` from `t_{I,J}(ξ)` of larger
/// height: common indices are dropped one at a time by single commutators,
/// then the positions are matched as in [`equalize_witness`].
pub fn lower_height_witness(
    ctx: &ExteriorContext,
    from: (&WeightIndex, &WeightIndex),
    to: (&WeightIndex, &WeightIndex),
    xi: &RingElem,
) -> Result<Derivation, LevelError> {
    check_pair(ctx, from.0, from.1)?;
    check_pair(ctx, to.0, to.1)?;
    let (h1, h2) = (from.0.intersection_len(from.1), to.0.intersection_len(to.1));
    if h1 <= h2 {
        return Err(LevelError::NotDescending(h1, h2));
    }
    let one = xi.ring().one();
    let mut b = DerivationBuilder::new(ctx, xi.ring());
    let t = ExtTransvection::new(ctx, from.0.clone(), from.1.clone(), xi.clone())?;
    let cur = b.given(&t);
    let mut w = Walker { b, cur, zeta: &one };
    let target_common = to.0.intersection(to.1);
    loop {
        let t = w.state();
        let common = t.row().intersection(t.col());
        if common.len() == h2 {
            break;
        }
        let c = *common
            .elems()
            .iter()
            .find(|&&c| !target_common.contains(c))
            .unwrap_or(&common.elems()[0]);
        let free = free_indices(ctx, &t, &[]);
        let pick = |want: &WeightIndex| {
            free.iter()
                .copied()
                .find(|&y| want.contains(y))
                .or(free.first().copied())
        };
        if to.0.contains(c) && !to.1.contains(c) {
            // c should stay in the row: drop it from the column
            let y = pick(to.1).ok_or(LevelError::InsufficientIndices(ctx.n()))?;
            w.replace_col(c, y)?;
        } else {
            let y = pick(to.0).ok_or(LevelError::InsufficientIndices(ctx.n()))?;
            w.replace_row(c, y)?;
        }
    }
    equalize_in(&mut w, to.0, to.1)?;
    w.b.finish(w.cur)
}

/// Which of the two products in the final commutator carries the new
/// common index: the row variant concludes `t_{I₁,J̃}`, the column variant
/// `t_{I₁,J}` via `[Q, P]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RaiseVariant {
    Row,
    Column,
}

/// Explicit choice of the fresh indices `F` and `c`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RaiseIndices {
    pub fresh: Option<Vec<usize>>,
    pub c: Option<usize>,
}

/// Parameters of the height-raising construction. `zeta` and `zeta1` are
/// the generator parameters of the two type-3 commutations.
#[derive(Clone, Debug)]
pub struct RaiseOptions {
    pub variant: RaiseVariant,
    pub indices: RaiseIndices,
    pub zeta: RingElem,
    pub zeta1: RingElem,
}

impl RaiseOptions {
    pub fn ones(xi: &RingElem) -> Self {
        RaiseOptions {
            variant: RaiseVariant::Row,
            indices: RaiseIndices::default(),
            zeta: xi.ring().one(),
            zeta1: xi.ring().one(),
        }
    }
}

/// From `t_{I,J}(ξ)` at height k, with `I = K∪A`, `J = K∪B`, `K = {1..k}`,
/// `A = {k+1..m}`, `B = {m+1..2m−k}`, derives a transvection of height
/// `k+1` with argument `±ξ²ζζ₁`.
pub fn raise_height_witness(
    ctx: &ExteriorContext,
    k: usize,
    xi: &RingElem,
) -> Result<Derivation, LevelError> {
    raise_height_witness_with(ctx, k, xi, &RaiseOptions::ones(xi))
}

pub fn raise_height_witness_with(
    ctx: &ExteriorContext,
    k: usize,
    xi: &RingElem,
    opts: &RaiseOptions,
) -> Result<Derivation, LevelError> {
    let (n, m) = (ctx.n(), ctx.m());
    if m < 2 || k > m - 2 {
        return Err(LevelError::BadHeight(k, m));
    }
    if n < 3 * m - 2 * k {
        return Err(LevelError::RaiseNeedsIndices {
            n,
            need: 3 * m - 2 * k,
        });
    }
    let ring = xi.ring();
    let wi = |v: Vec<usize>| WeightIndex::new(v).map_err(LevelError::from);
    let kk: Vec<usize> = (1..=k).collect();
    let a_set: Vec<usize> = (k + 1..=m).collect();
    let b_set: Vec<usize> = (m + 1..=2 * m - k).collect();
    let row = wi([kk.clone(), a_set.clone()].concat())?;
    let col = wi([kk.clone(), b_set.clone()].concat())?;
    let a = *b_set.last().unwrap();
    let b = *a_set.last().unwrap();
    // fresh indices: F first, then c
    let used: Vec<usize> = (1..=2 * m - k).collect();
    let mut avail = (1..=n).filter(|x| !used.contains(x));
    let fresh = match &opts.indices.fresh {
        Some(f) => f.clone(),
        None => avail.by_ref().take(m - k - 1).collect(),
    };
    let c = match opts.indices.c {
        Some(c) => c,
        None => avail
            .find(|x| !fresh.contains(x))
            .ok_or(LevelError::InsufficientIndices(n))?,
    };
    if fresh.len() != m - k - 1
        || fresh
            .iter()
            .chain([&c])
            .any(|x| used.contains(x) || *x == 0 || *x > n)
        || fresh.contains(&c)
    {
        return Err(LevelError::BadRaiseIndices);
    }
    let pivot = match opts.variant {
        RaiseVariant::Row => b,
        RaiseVariant::Column => a,
    };
    let row1 = wi([kk.clone(), vec![pivot], fresh.clone()].concat())?;
    let col1 = row.without(b).with(c);

    let mut bld = DerivationBuilder::new(ctx, ring);
    let hyp = ExtTransvection::new(ctx, row.clone(), col.clone(), xi.clone())?;
    let s0 = bld.given(&hyp);
    let p = strip_square(&mut bld, s0, a, b, &opts.zeta)?;

    // t_{I₁,J₁}(ξ) from the hypothesis
    let eq = equalize_witness(ctx, (&row, &col), (&row1, &col1), xi)?;
    let mut s1 = bld.splice(&eq);
    if bld.single(s1).map(|t| t.arg() != xi).unwrap_or(true) {
        s1 = bld.inverse(s1);
    }
    let q = strip_square(&mut bld, s1, c, pivot, &opts.zeta1)?;

    let pf = bld.claim(p).unwrap().to_vec();
    let qf = bld.claim(q).unwrap().to_vec();
    let find = |fs: &[ExtTransvection], r: &WeightIndex, c: &WeightIndex| {
        fs.iter().find(|t| t.row() == r && t.col() == c).cloned()
    };
    let err = || LevelError::Internal("unexpected factors in the raise construction");
    let fin = match opts.variant {
        RaiseVariant::Row => {
            // [P, Q] = t_{I₁,J̃}(−y₁x₁)
            let jt = col.without(a).with(b);
            let x1 = find(&pf, &row, &jt).ok_or_else(err)?;
            let y1 = find(&qf, &row1, &row).ok_or_else(err)?;
            let t = ExtTransvection::new(ctx, row1.clone(), jt, -&(y1.arg() * x1.arg()))?;
            bld.commute_claimed(p, q, vec![t], "[P, Q]: only t_{I₁,I}·t_{I,J̃} survives")
        }
        RaiseVariant::Column => {
            // [Q, P] = t_{I₁,J}(y₁x₂)
            let it = row.without(b).with(a);
            let x2 = find(&pf, &it, &col).ok_or_else(err)?;
            let y1 = find(&qf, &row1, &it).ok_or_else(err)?;
            let t = ExtTransvection::new(ctx, row1.clone(), col.clone(), y1.arg() * x2.arg())?;
            bld.commute_claimed(q, p, vec![t], "[Q, P]: only t_{I₁,Ĩ}·t_{Ĩ,J} survives")
        }
    };
    bld.finish(fin)
}

/// For a step `t_{I,J}(x)` and a type-3 generator `∧^m t_{a,b}(ζ)`, appends
/// steps producing `t_{Ĩ,J}(·)·t_{I,J̃}(·)`, the commutator with the
/// `ζ²` factor removed.
fn strip_square(
    bld: &mut DerivationBuilder,
    t_step: usize,
    a: usize,
    b: usize,
    zeta: &RingElem,
) -> Result<usize, LevelError> {
    let g1 = bld.ext_gen(a, b, zeta);
    let c1 = bld.commute_with_gen(t_step, g1)?;
    let g2 = bld.ext_gen(a, b, &-zeta);
    let c2 = bld.commute_with_gen(t_step, g2)?;
    let sq2 = bld.product(&[c1, c2]);
    let sq = bld.half(sq2)?;
    let inv = bld.inverse(sq);
    let p = bld.product(&[c1, inv]);
    match bld.claim(p) {
        Some(c) if c.len() == 2 => Ok(p),
        _ => Err(LevelError::Internal("type-3 commutator expected")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::{validate_derivation, StepKind};
    use crate::rings::Ring;

    fn w(s: &str) -> WeightIndex {
        WeightIndex::new(
            s.chars()
                .map(|c| c.to_digit(10).unwrap() as usize)
                .collect(),
        )
        .unwrap()
    }

    fn symbolic() -> Ring {
        "poly:xi,zeta,zeta1@fp:1000003".parse().unwrap()
    }

    fn valid(d: &Derivation) {
        let r = validate_derivation(d, &d.ring).unwrap();
        assert!(r.valid, "{}\n{}", r.message, d);
    }

    #[test]
    fn type_three_swap_in_second_power() {
        let r = symbolic();
        let ctx = ExteriorContext::new(4, 2).unwrap();
        let xi = r.var("xi").unwrap();
        let d = equalize_witness(&ctx, (&w("12"), &w("34")), (&w("14"), &w("23")), &xi).unwrap();
        valid(&d);
        assert_eq!(d.conclusion.to_string(), "t_{14,23}(-xi)");
        assert!(d
            .steps
            .iter()
            .any(|s| matches!(s.kind, StepKind::ExtGen { i: 4, j: 2, .. })));
        assert!(d.uses_halving());
    }

    #[test]
    fn single_move_at_height_zero() {
        let r = symbolic();
        let ctx = ExteriorContext::new(7, 3).unwrap();
        let xi = r.var("xi").unwrap();
        let d =
            equalize_witness(&ctx, (&w("123"), &w("456")), (&w("123"), &w("457")), &xi).unwrap();
        valid(&d);
        assert_eq!(d.steps.len(), 3);
        assert!(matches!(
            d.steps[1].kind,
            StepKind::ExtGen { i: 6, j: 7, .. }
        ));
        let same =
            equalize_witness(&ctx, (&w("123"), &w("456")), (&w("123"), &w("456")), &xi).unwrap();
        assert_eq!(same.steps.len(), 1);
    }

    #[test]
    fn lowering_examples() {
        let r = symbolic();
        let xi = r.var("xi").unwrap();
        let ctx = ExteriorContext::new(4, 2).unwrap();
        let d =
            lower_height_witness(&ctx, (&w("12"), &w("23")), (&w("14"), &w("23")), &xi).unwrap();
        valid(&d);
        assert_eq!(d.conclusion.to_string(), "t_{14,23}(-xi)");
        assert!(matches!(
            d.steps[1].kind,
            StepKind::ExtGen { i: 4, j: 2, .. }
        ));
        let ctx = ExteriorContext::new(7, 3).unwrap();
        let d = lower_height_witness(&ctx, (&w("123"), &w("124")), (&w("123"), &w("456")), &xi)
            .unwrap();
        valid(&d);
        assert!(
            lower_height_witness(&ctx, (&w("123"), &w("456")), (&w("123"), &w("457")), &xi)
                .is_err()
        );
    }

    fn raise(
        n: usize,
        m: usize,
        k: usize,
        variant: RaiseVariant,
        indices: RaiseIndices,
    ) -> Derivation {
        let r = symbolic();
        let ctx = ExteriorContext::new(n, m).unwrap();
        let xi = r.var("xi").unwrap();
        let opts = RaiseOptions {
            variant,
            indices,
            zeta: r.var("zeta").unwrap(),
            zeta1: r.var("zeta1").unwrap(),
        };
        let d = raise_height_witness_with(&ctx, k, &xi, &opts).unwrap();
        valid(&d);
        d
    }

    #[test]
    fn raising_reproduces_worked_examples() {
        let d = raise(12, 4, 0, RaiseVariant::Row, RaiseIndices::default());
        assert_eq!(d.conclusion.row().elems(), [4, 9, 10, 11]);
        assert_eq!(d.conclusion.col().elems(), [4, 5, 6, 7]);
        assert_eq!(d.conclusion.arg().to_string(), "xi^2*zeta*zeta1");
        let d = raise(10, 4, 1, RaiseVariant::Row, RaiseIndices::default());
        assert_eq!(d.conclusion.to_string(), "t_{1489,1456}(-xi^2*zeta*zeta1)");
        let over = RaiseIndices {
            fresh: Some(vec![8]),
            c: Some(7),
        };
        let d = raise(8, 4, 2, RaiseVariant::Row, over);
        assert_eq!(d.conclusion.to_string(), "t_{1248,1245}(xi^2*zeta*zeta1)");
        let d = raise(6, 2, 0, RaiseVariant::Column, RaiseIndices::default());
        assert_eq!(d.conclusion.to_string(), "t_{45,34}(-xi^2*zeta*zeta1)");
    }

    #[test]
    fn raising_needs_indices() {
        let r = Ring::fp(7).unwrap();
        let ctx = ExteriorContext::new(11, 4).unwrap();
        assert!(matches!(
            raise_height_witness(&ctx, 0, &r.int(2)),
            Err(LevelError::RaiseNeedsIndices { n: 11, need: 12 })
        ));
    }
}
