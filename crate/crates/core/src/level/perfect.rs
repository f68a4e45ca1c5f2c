use super::LevelError;
use crate::exterior::{
    factor_sign, pword, tword, ExtLetter, ExtTransvection, ExteriorContext, WeightIndex,
};
use crate::linalg::Word;
use crate::rings::RingElem;

#[derive(Clone, Debug, PartialEq)]
pub enum PerfectTarget {
    /// `∧^m t_{i,j}(ζ)`
    Power {
        i: usize,
        j: usize,
        zeta: RingElem,
    },
    Transvection(ExtTransvection),
}

/// `target = [left, right]` with both factors among the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct PerfectWitness {
    pub target: Word<ExtLetter>,
    pub left: Word<ExtLetter>,
    pub right: Word<ExtLetter>,
}

impl PerfectWitness {
    pub fn word(&self) -> Word<ExtLetter> {
        Word::comm(self.left.clone(), self.right.clone())
    }
}

pub fn perfectness_witness(
    ctx: &ExteriorContext,
    g: &PerfectTarget,
) -> Result<PerfectWitness, LevelError> {
    match g {
        PerfectTarget::Power { i, j, zeta } => {
            ctx.check_point(*i)?;
            ctx.check_point(*j)?;
            let h = (1..=ctx.n())
                .find(|h| h != i && h != j)
                .ok_or(LevelError::InsufficientIndices(ctx.n()))?;
            ExtLetter::power(ctx, *i, *j, zeta.clone())?;
            let one = zeta.ring().one();
            Ok(PerfectWitness {
                target: pword(ctx, *i, *j, zeta),
                left: pword(ctx, *i, h, zeta),
                right: pword(ctx, h, *j, &one),
            })
        }
        PerfectTarget::Transvection(t) => {
            let (row, col) = (t.row(), t.col());
            let common = row.intersection(col);
            let i_only = row.difference(col);
            let j_only = col.difference(row);
            let (v, x, y) = if i_only.len() >= 2 {
                let iq = *i_only.elems().last().unwrap();
                let (jq, js) = j_only.elems().split_last().unwrap();
                (
                    common.union(&WeightIndex::new(js.to_vec())?).with(iq),
                    iq,
                    *jq,
                )
            } else {
                let x = (1..=ctx.n())
                    .find(|&x| !row.contains(x) && !col.contains(x))
                    .ok_or(LevelError::InsufficientIndices(ctx.n()))?;
                (common.with(x), x, j_only.elems()[0])
            };
            let s = factor_sign(v.without(x).elems(), x, y)?;
            let left = ExtTransvection::new(ctx, row.clone(), v, t.arg().clone())?;
            let ring = t.arg().ring();
            let sign = if s > 0 { ring.one() } else { -&ring.one() };
            Ok(PerfectWitness {
                target: tword(t),
                left: tword(&left),
                right: pword(ctx, x, y, &sign),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::ext_evaluate;
    use crate::rings::Ring;

    #[test]
    fn witnesses_evaluate_to_their_targets() {
        let f = Ring::fp(7).unwrap();
        for (n, m) in [(4, 2), (5, 2), (6, 3), (7, 3)] {
            let ctx = ExteriorContext::new(n, m).unwrap();
            let mut targets = vec![PerfectTarget::Power {
                i: 1,
                j: 2,
                zeta: f.int(3),
            }];
            for row in ctx.indices() {
                for col in ctx.indices().iter().filter(|c| *c != row) {
                    let t = ExtTransvection::new(&ctx, row.clone(), col.clone(), f.int(5)).unwrap();
                    targets.push(PerfectTarget::Transvection(t));
                }
            }
            for g in &targets {
                let w = perfectness_witness(&ctx, g).unwrap();
                assert_eq!(
                    ext_evaluate(&ctx, &f, &w.word()).unwrap(),
                    ext_evaluate(&ctx, &f, &w.target).unwrap()
                );
            }
        }
    }

    #[test]
    fn second_power_generator() {
        let p = "poly:zeta@z".parse::<Ring>().unwrap();
        let ctx = ExteriorContext::new(4, 2).unwrap();
        let w = perfectness_witness(
            &ctx,
            &PerfectTarget::Power {
                i: 1,
                j: 2,
                zeta: p.var("zeta").unwrap(),
            },
        )
        .unwrap();
        assert_eq!(w.word().to_string(), "[∧t_{1,3}(zeta), ∧t_{3,2}(1)]");
    }
}
