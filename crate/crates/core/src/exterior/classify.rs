use super::{
    factor_sign, pword, tword, ExtLetter, ExtTransvection, ExteriorContext, ExteriorError,
};
use crate::linalg::{word_evaluate, Matrix, Word};
use crate::rings::RingElem;

/// The three commutator types of `[t_{I,J}(ξ), ∧^m t_{a,b}(ζ)]`, plus the
/// degenerate case where both sides meet the same factor.
#[derive(Clone, Debug, PartialEq)]
pub enum CommutatorClass {
    Identity,
    Single(ExtTransvection),
    /// `t_{Ĩ,J} · t_{I,J̃} · t_{Ĩ,J̃}`; the factors commute.
    Triple([ExtTransvection; 3]),
    /// `[t_{I,J}(ξ), t_{J,I}(±ζ)]`, with its matrix.
    Irreducible {
        word: Word<ExtLetter>,
        matrix: Matrix,
    },
}

impl CommutatorClass {
    pub fn kind(&self) -> &'static str {
        match self {
            CommutatorClass::Identity => "identity",
            CommutatorClass::Single(_) => "single",
            CommutatorClass::Triple(_) => "triple",
            CommutatorClass::Irreducible { .. } => "irreducible",
        }
    }

    /// The transvection factors, when the result is a product of them.
    pub fn factors(&self) -> Option<Vec<ExtTransvection>> {
        match self {
            CommutatorClass::Identity => Some(Vec::new()),
            CommutatorClass::Single(t) => Some(vec![t.clone()]),
            CommutatorClass::Triple(ts) => Some(ts.to_vec()),
            CommutatorClass::Irreducible { .. } => None,
        }
    }

    pub fn word(&self) -> Word<ExtLetter> {
        match self {
            CommutatorClass::Irreducible { word, .. } => word.clone(),
            other => Word::prod(other.factors().unwrap().iter().map(tword).collect()),
        }
    }
}

/// Classifies `[t_{I,J}(ξ), ∧^m t_{a,b}(ζ)]` where the generator is taken
/// with its indices as written.
///
/// The factor `t_{L∪a,L∪b}` of the generator fails to commute with
/// `t_{I,J}` exactly when `L∪a = J` (needs `a ∈ J`, `b ∉ J`) or `L∪b = I`
/// (needs `b ∈ I`, `a ∉ I`); all other factors commute with it and with each
/// other.
pub fn classify_commutator(
    t: &ExtTransvection,
    a: usize,
    b: usize,
    zeta: &RingElem,
) -> Result<CommutatorClass, ExteriorError> {
    let ctx: &ExteriorContext = t.ctx();
    ctx.check_point(a)?;
    ctx.check_point(b)?;
    if a == b {
        return Err(ExteriorError::EqualIndices(a));
    }
    let (i, j, xi) = (t.row(), t.col(), t.arg());
    let col_side = j.contains(a) && !j.contains(b);
    let row_side = i.contains(b) && !i.contains(a);
    let xz = xi * zeta;
    let sgn = |x: RingElem, s: i8| if s > 0 { x } else { -&x };
    let make = |r, c, arg| ExtTransvection::new(ctx, r, c, arg);
    match (row_side, col_side) {
        (false, false) => Ok(CommutatorClass::Identity),
        (false, true) => {
            let l = j.without(a);
            let s1 = factor_sign(l.elems(), a, b)?;
            Ok(CommutatorClass::Single(make(
                i.clone(),
                l.with(b),
                sgn(xz, s1),
            )?))
        }
        (true, false) => {
            let l = i.without(b);
            let s2 = factor_sign(l.elems(), a, b)?;
            Ok(CommutatorClass::Single(make(
                l.with(a),
                j.clone(),
                sgn(xz, -s2),
            )?))
        }
        (true, true) => {
            let lj = j.without(a);
            let li = i.without(b);
            let s1 = factor_sign(lj.elems(), a, b)?;
            if li == lj {
                let g = ExtTransvection::new(ctx, j.clone(), i.clone(), sgn(zeta.clone(), s1))?;
                let word = Word::comm(tword(t), tword(&g));
                let matrix = word_evaluate(&word)?;
                return Ok(CommutatorClass::Irreducible { word, matrix });
            }
            let s2 = factor_sign(li.elems(), a, b)?;
            let (it, jt) = (li.with(a), lj.with(b));
            let xzz = &xz * zeta;
            Ok(CommutatorClass::Triple([
                make(it.clone(), j.clone(), sgn(xz.clone(), -s2))?,
                make(i.clone(), jt.clone(), sgn(xz, s1))?,
                make(it, jt, sgn(xzz, s1 * s2))?,
            ]))
        }
    }
}

/// The literal commutator word `[t_{I,J}(ξ), ∧^m t_{a,b}(ζ)]`.
pub fn commutator_word(
    t: &ExtTransvection,
    a: usize,
    b: usize,
    zeta: &RingElem,
) -> Word<ExtLetter> {
    Word::comm(tword(t), pword(t.ctx(), a, b, zeta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Ring;

    fn setup(n: usize, m: usize) -> (ExteriorContext, RingElem, RingElem) {
        let p = "poly:xi,zeta@z".parse::<Ring>().unwrap();
        (
            ExteriorContext::new(n, m).unwrap(),
            p.var("xi").unwrap(),
            p.var("zeta").unwrap(),
        )
    }

    fn labels(c: &CommutatorClass) -> Vec<String> {
        let mut v: Vec<String> = c.factors().unwrap().iter().map(|t| t.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn three_types_for_t135_124() {
        let (ctx, xi, zeta) = setup(7, 3);
        let t = ExtTransvection::new(&ctx, "1,3,5".parse().unwrap(), "1,2,4".parse().unwrap(), xi)
            .unwrap();
        assert_eq!(
            classify_commutator(&t, 7, 6, &zeta).unwrap(),
            CommutatorClass::Identity
        );
        assert_eq!(
            labels(&classify_commutator(&t, 4, 6, &zeta).unwrap()),
            ["t_{135,126}(xi*zeta)"]
        );
        let c = classify_commutator(&t, 4, 3, &zeta).unwrap();
        assert_eq!(
            labels(&c),
            [
                "t_{135,123}(xi*zeta)",
                "t_{145,123}(xi*zeta^2)",
                "t_{145,124}(-xi*zeta)"
            ]
        );
        assert_eq!(
            word_evaluate(&c.word()).unwrap(),
            word_evaluate(&commutator_word(&t, 4, 3, &zeta)).unwrap()
        );
    }

    #[test]
    fn triple_in_second_power() {
        let (ctx, xi, zeta) = setup(4, 2);
        let t =
            ExtTransvection::new(&ctx, "1,3".parse().unwrap(), "2,4".parse().unwrap(), xi).unwrap();
        let c = classify_commutator(&t, 2, 3, &zeta).unwrap();
        assert_eq!(
            labels(&c),
            [
                "t_{12,24}(-xi*zeta)",
                "t_{12,34}(xi*zeta^2)",
                "t_{13,34}(xi*zeta)"
            ]
        );
    }

    #[test]
    fn irreducible_case() {
        let (ctx, xi, zeta) = setup(4, 2);
        let t =
            ExtTransvection::new(&ctx, "1,2".parse().unwrap(), "1,3".parse().unwrap(), xi).unwrap();
        let c = classify_commutator(&t, 3, 2, &zeta).unwrap();
        assert_eq!(c.kind(), "irreducible");
        assert_eq!(
            word_evaluate(&c.word()).unwrap(),
            word_evaluate(&commutator_word(&t, 3, 2, &zeta)).unwrap()
        );
    }
}
