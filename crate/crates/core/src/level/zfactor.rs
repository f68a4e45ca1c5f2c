use super::LevelError;
use crate::exterior::{
    factor_sign, pword, tword, ExtLetter, ExtTransvection, ExteriorContext, WeightIndex,
};
use crate::linalg::{Matrix, Word};
use crate::rings::{ideal_membership, Ideal, RingElem};

/// `z_{I,J}(ξ,ζ) = t_{J,I}(ζ)·t_{I,J}(ξ)·t_{J,I}(−ζ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelativeGenerator {
    pub ctx: ExteriorContext,
    pub row: WeightIndex,
    pub col: WeightIndex,
    pub xi: RingElem,
    pub zeta: RingElem,
}

impl RelativeGenerator {
    pub fn new(
        ctx: &ExteriorContext,
        row: WeightIndex,
        col: WeightIndex,
        xi: RingElem,
        zeta: RingElem,
    ) -> Result<Self, LevelError> {
        ExtTransvection::new(ctx, row.clone(), col.clone(), xi.clone())?;
        Ok(RelativeGenerator {
            ctx: ctx.clone(),
            row,
            col,
            xi,
            zeta,
        })
    }

    pub fn word(&self) -> Word<ExtLetter> {
        let t = |r: &WeightIndex, c: &WeightIndex, x: &RingElem| {
            tword(&ExtTransvection::new(&self.ctx, r.clone(), c.clone(), x.clone()).unwrap())
        };
        Word::conj(
            t(&self.col, &self.row, &self.zeta),
            t(&self.row, &self.col, &self.xi),
        )
    }

    pub fn matrix(&self) -> Result<Matrix, LevelError> {
        Ok(crate::exterior::ext_evaluate(
            &self.ctx,
            self.xi.ring(),
            &self.word(),
        )?)
    }
}

/// `^c b` where `c` is a word in ∧^m E(n,R) (absent for the identity) and
/// `b` has its argument in the level ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorPiece {
    pub conjugator: Option<Word<ExtLetter>>,
    pub base: ExtTransvection,
}

impl FactorPiece {
    pub fn word(&self) -> Word<ExtLetter> {
        match &self.conjugator {
            Some(c) => Word::conj(c.clone(), tword(&self.base)),
            None => tword(&self.base),
        }
    }
}

/// Writes `z_{I,J}(ξ,ζ)` as a product of ∧^m E(n,R)-conjugates of
/// transvections whose arguments lie in `ξR`, by induction on the height.
/// With `ideal` given, ξ is first checked to lie in it.
pub fn relative_generator_factorization(
    z: &RelativeGenerator,
    ideal: Option<&Ideal>,
) -> Result<Vec<FactorPiece>, LevelError> {
    let ctx = &z.ctx;
    if ctx.n() < 3 * ctx.m() {
        return Err(LevelError::NetOfIdeals {
            n: ctx.n(),
            m: ctx.m(),
        });
    }
    if let Some(a) = ideal {
        if !ideal_membership(a, &a.ring().coerce(&z.xi)?)? {
            return Err(LevelError::NotInIdeal(z.xi.to_string()));
        }
    }
    let mut out = Vec::new();
    expand(ctx, &z.row, &z.col, &z.xi, &z.zeta, &mut out)?;
    Ok(out)
}

pub fn factorization_word(pieces: &[FactorPiece]) -> Word<ExtLetter> {
    Word::prod(pieces.iter().map(FactorPiece::word).collect())
}

fn expand(
    ctx: &ExteriorContext,
    i: &WeightIndex,
    j: &WeightIndex,
    xi: &RingElem,
    zeta: &RingElem,
    out: &mut Vec<FactorPiece>,
) -> Result<(), LevelError> {
    let t = |r: &WeightIndex, c: &WeightIndex, x: RingElem| {
        ExtTransvection::new(ctx, r.clone(), c.clone(), x)
    };
    let mut plain = |b: ExtTransvection| {
        out.push(FactorPiece {
            conjugator: None,
            base: b,
        })
    };
    let i_only = i.difference(j);
    let j_only = j.difference(i);
    if i_only.len() == 1 {
        let (a, b) = (j_only.elems()[0], i_only.elems()[0]);
        let s = factor_sign(i.intersection(j).elems(), a, b)?;
        let arg = if s > 0 { zeta.clone() } else { -zeta };
        out.push(FactorPiece {
            conjugator: Some(pword(ctx, a, b, &arg)),
            base: t(i, j, xi.clone())?,
        });
        return Ok(());
    }
    let iq = *i_only.elems().last().unwrap();
    let jq = *j_only.elems().last().unwrap();
    // V = K ∪ {i_1..i_(q-1)} ∪ {j_q}
    let v = i.without(iq).with(jq);
    let zx = zeta * xi;
    let zzx = zeta * &zx;
    let a = t(j, &v, zx.clone())?;
    let a_inv = a.with_arg(-&zx);
    let a1 = t(j, i, zzx.clone())?;
    // ^a[b,c]
    plain(a.clone());
    plain(t(i, &v, xi.clone())?);
    expand(ctx, i, &v, &-xi, &-zeta, out)?;
    let mut plain = |b: ExtTransvection| {
        out.push(FactorPiece {
            conjugator: None,
            base: b,
        })
    };
    plain(a_inv.clone());
    // ^{ac}[b,d]
    plain(a);
    plain(t(&v, j, -&zx)?);
    plain(t(i, j, xi.clone())?);
    plain(a_inv);
    // [a,c]
    plain(t(j, i, -&zzx)?);
    // ^c[a,d]
    plain(a1.clone());
    plain(t(j, &v, zx.clone())?);
    expand(ctx, j, &v, &-&zx, &zeta.ring().one(), out)?;
    out.push(FactorPiece {
        conjugator: None,
        base: a1.with_arg(-&zzx),
    });
    out.push(FactorPiece {
        conjugator: None,
        base: t(&v, i, -&zzx)?,
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::ext_evaluate;
    use crate::rings::Ring;

    fn check(ctx: &ExteriorContext, ring: &Ring, row: &WeightIndex, col: &WeightIndex) {
        let z = RelativeGenerator::new(ctx, row.clone(), col.clone(), ring.int(3), ring.int(5))
            .unwrap();
        let pieces = relative_generator_factorization(&z, None).unwrap();
        let got = ext_evaluate(ctx, ring, &factorization_word(&pieces)).unwrap();
        assert_eq!(got, z.matrix().unwrap(), "z_{{{row},{col}}}");
        assert!(pieces.iter().all(|p| p
            .conjugator
            .as_ref()
            .is_none_or(|c| c.letters().iter().all(|l| l.is_power()))));
    }

    #[test]
    fn exhaustive_second_power() {
        let f = Ring::fp(7).unwrap();
        let ctx = ExteriorContext::new(6, 2).unwrap();
        for row in ctx.indices() {
            for col in ctx.indices().iter().filter(|c| *c != row) {
                check(&ctx, &f, row, col);
            }
        }
    }

    #[test]
    fn height_one_is_a_single_conjugate() {
        let p = "poly:xi,zeta@z".parse::<Ring>().unwrap();
        let ctx = ExteriorContext::new(6, 2).unwrap();
        let z = RelativeGenerator::new(
            &ctx,
            "1,2".parse().unwrap(),
            "1,3".parse().unwrap(),
            p.var("xi").unwrap(),
            p.var("zeta").unwrap(),
        )
        .unwrap();
        let pieces = relative_generator_factorization(&z, None).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(
            pieces[0].word().to_string(),
            "^(∧t_{3,2}(zeta))(t_{12,13}(xi))"
        );
    }

    #[test]
    fn rejects_small_n_and_foreign_xi() {
        let z9 = Ring::integers();
        let ctx = ExteriorContext::new(5, 2).unwrap();
        let z = RelativeGenerator::new(
            &ctx,
            "1,2".parse().unwrap(),
            "3,4".parse().unwrap(),
            z9.int(1),
            z9.int(1),
        );
        assert!(relative_generator_factorization(&z.unwrap(), None).is_err());
        let ctx = ExteriorContext::new(6, 2).unwrap();
        let z = RelativeGenerator::new(
            &ctx,
            "1,2".parse().unwrap(),
            "3,4".parse().unwrap(),
            z9.int(3),
            z9.int(1),
        )
        .unwrap();
        let a = crate::rings::ideal_generate(&z9, &[z9.int(2)]).unwrap();
        assert!(matches!(
            relative_generator_factorization(&z, Some(&a)),
            Err(LevelError::NotInIdeal(_))
        ));
    }
}
