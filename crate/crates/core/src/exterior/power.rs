use std::fmt;

use serde_json::{json, Value as Json};

use super::{subsets, ExteriorContext, ExteriorError, WeightIndex};
use crate::linalg::{minor, word_evaluate_in, Letter, Matrix, Word};
use crate::rings::{Ring, RingElem};

/// Sign of the permutation that sorts `(L, i, j)` ascending.
pub fn weight_sign(l: &[usize], i: usize, j: usize) -> Result<i8, ExteriorError> {
    if i == j {
        return Err(ExteriorError::EqualIndices(i));
    }
    if l.contains(&i) || l.contains(&j) {
        return Err(ExteriorError::Overlap(i, j));
    }
    let seq: Vec<usize> = l.iter().copied().chain([i, j]).collect();
    let inversions = (0..seq.len())
        .flat_map(|a| (a + 1..seq.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| seq[a] > seq[b])
        .count();
    Ok(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Sign of the factor `t_{L∪i, L∪j}` in `∧^m t_{i,j}`: the minor of
/// `e + ξ e_{ij}` on rows `L∪i`, columns `L∪j` is this sign times ξ. It is
/// `(−1)^{#L strictly between i and j}` for either order of i and j.
pub fn factor_sign(l: &[usize], i: usize, j: usize) -> Result<i8, ExteriorError> {
    weight_sign(l, i.min(j), i.max(j))
}

pub fn height(a: &WeightIndex, b: &WeightIndex) -> usize {
    a.intersection_len(b)
}

fn signed(x: &RingElem, s: i8) -> RingElem {
    if s > 0 {
        x.clone()
    } else {
        -x
    }
}

/// The Binet–Cauchy image: entry `(I, J)` is the minor on rows I, columns J.
pub fn exterior_power(ctx: &ExteriorContext, a: &Matrix) -> Result<Matrix, ExteriorError> {
    if a.rows() != ctx.n() || a.cols() != ctx.n() {
        return Err(ExteriorError::SizeMismatch(ctx.n(), a.rows(), a.cols()));
    }
    let big = ctx.big_n();
    let mut out = Matrix::zeros(a.ring(), big, big);
    for (r, row) in ctx.indices().iter().enumerate() {
        for (c, col) in ctx.indices().iter().enumerate() {
            out.set(r, c, minor(a, row.elems(), col.elems())?);
        }
    }
    Ok(out)
}

/// The transvection `t_{I,J}(ξ)` of `GL_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtTransvection {
    ctx: ExteriorContext,
    row: WeightIndex,
    col: WeightIndex,
    arg: RingElem,
}

impl ExtTransvection {
    pub fn new(
        ctx: &ExteriorContext,
        row: WeightIndex,
        col: WeightIndex,
        arg: RingElem,
    ) -> Result<Self, ExteriorError> {
        ctx.check(&row)?;
        ctx.check(&col)?;
        if row == col {
            return Err(ExteriorError::DiagonalTransvection(row.to_string()));
        }
        Ok(ExtTransvection {
            ctx: ctx.clone(),
            row,
            col,
            arg,
        })
    }

    pub fn ctx(&self) -> &ExteriorContext {
        &self.ctx
    }

    pub fn row(&self) -> &WeightIndex {
        &self.row
    }

    pub fn col(&self) -> &WeightIndex {
        &self.col
    }

    pub fn arg(&self) -> &RingElem {
        &self.arg
    }

    pub fn height(&self) -> usize {
        height(&self.row, &self.col)
    }

    pub fn with_arg(&self, arg: RingElem) -> Self {
        ExtTransvection {
            arg,
            ..self.clone()
        }
    }

    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::identity(self.arg.ring(), self.ctx.big_n());
        let r = self.ctx.rank(&self.row).expect("checked index");
        let c = self.ctx.rank(&self.col).expect("checked index");
        m.set(r, c, self.arg.clone());
        m
    }

    pub fn to_json(&self) -> Json {
        json!({"I": self.row.to_string(), "J": self.col.to_string(), "arg": self.arg.to_json()})
    }
}

impl fmt::Display for ExtTransvection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t_{{{},{}}}({})",
            self.row.label(),
            self.col.label(),
            self.arg
        )
    }
}

/// The factors of `∧^m t_{i,j}(ξ)`: one `t_{L∪i, L∪j}(±ξ)` per
/// (m−1)-subset L of `[n]∖{i,j}`, in lexicographic order of L. They commute
/// pairwise.
pub fn ext_transvection_factors(
    ctx: &ExteriorContext,
    i: usize,
    j: usize,
    xi: &RingElem,
) -> Result<Vec<ExtTransvection>, ExteriorError> {
    ctx.check_point(i)?;
    ctx.check_point(j)?;
    if i == j {
        return Err(ExteriorError::EqualIndices(i));
    }
    let rest: Vec<usize> = (1..=ctx.n()).filter(|&x| x != i && x != j).collect();
    subsets(&rest, ctx.m() - 1)
        .into_iter()
        .map(|l| {
            let s = factor_sign(&l, i, j)?;
            let lw = WeightIndex::new(l)?;
            Ok(ExtTransvection {
                ctx: ctx.clone(),
                row: lw.with(i),
                col: lw.with(j),
                arg: signed(xi, s),
            })
        })
        .collect()
}

pub fn ext_transvection_decomposition(
    ctx: &ExteriorContext,
    i: usize,
    j: usize,
    xi: &RingElem,
) -> Result<Word<ExtLetter>, ExteriorError> {
    let factors = ext_transvection_factors(ctx, i, j, xi)?;
    Ok(Word::prod(
        factors
            .into_iter()
            .map(|t| Word::gen(ExtLetter::T(t)))
            .collect(),
    ))
}

/// Letters of words in `GL_N`: a transvection `t_{I,J}(ξ)` or the image
/// `∧^m t_{i,j}(ζ)` of an elementary generator of `GL_n`.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtLetter {
    T(ExtTransvection),
    Power {
        ctx: ExteriorContext,
        i: usize,
        j: usize,
        arg: RingElem,
    },
}

impl ExtLetter {
    pub fn power(
        ctx: &ExteriorContext,
        i: usize,
        j: usize,
        arg: RingElem,
    ) -> Result<Self, ExteriorError> {
        ctx.check_point(i)?;
        ctx.check_point(j)?;
        if i == j {
            return Err(ExteriorError::EqualIndices(i));
        }
        Ok(ExtLetter::Power {
            ctx: ctx.clone(),
            i,
            j,
            arg,
        })
    }

    pub fn is_power(&self) -> bool {
        matches!(self, ExtLetter::Power { .. })
    }
}

/// Evaluates a word in `GL_N(R)`; unlike `word_evaluate`, the empty word is
/// allowed.
pub fn ext_evaluate(
    ctx: &ExteriorContext,
    ring: &Ring,
    w: &Word<ExtLetter>,
) -> Result<Matrix, ExteriorError> {
    Ok(word_evaluate_in(w, ring, ctx.big_n())?)
}

pub fn tword(t: &ExtTransvection) -> Word<ExtLetter> {
    Word::gen(ExtLetter::T(t.clone()))
}

/// Word for `∧^m t_{i,j}(ζ)`; panics on invalid indices.
pub fn pword(ctx: &ExteriorContext, i: usize, j: usize, arg: &RingElem) -> Word<ExtLetter> {
    Word::gen(ExtLetter::power(ctx, i, j, arg.clone()).expect("valid generator indices"))
}

impl fmt::Display for ExtLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtLetter::T(t) => t.fmt(f),
            ExtLetter::Power { i, j, arg, .. } => write!(f, "∧t_{{{i},{j}}}({arg})"),
        }
    }
}

impl Letter for ExtLetter {
    fn dim(&self) -> usize {
        match self {
            ExtLetter::T(t) => t.ctx.big_n(),
            ExtLetter::Power { ctx, .. } => ctx.big_n(),
        }
    }

    fn ring(&self) -> &Ring {
        match self {
            ExtLetter::T(t) => t.arg.ring(),
            ExtLetter::Power { arg, .. } => arg.ring(),
        }
    }

    fn inverse(&self) -> Self {
        match self {
            ExtLetter::T(t) => ExtLetter::T(t.with_arg(-&t.arg)),
            ExtLetter::Power { ctx, i, j, arg } => ExtLetter::Power {
                ctx: ctx.clone(),
                i: *i,
                j: *j,
                arg: -arg,
            },
        }
    }

    fn act_left(&self, m: &mut Matrix) {
        match self {
            ExtLetter::T(t) => {
                let r = t.ctx.rank(&t.row).expect("checked index");
                let c = t.ctx.rank(&t.col).expect("checked index");
                m.add_row_multiple(r, c, &t.arg);
            }
            ExtLetter::Power { ctx, i, j, arg } => {
                // factors commute, so any order works
                for t in ext_transvection_factors(ctx, *i, *j, arg).expect("checked indices") {
                    ExtLetter::T(t).act_left(m);
                }
            }
        }
    }

    fn to_json(&self) -> Json {
        match self {
            ExtLetter::T(t) => json!({"ext": t.to_json()}),
            ExtLetter::Power { i, j, arg, .. } => {
                json!({"power": {"i": i, "j": j, "arg": arg.to_json()}})
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{word_evaluate, Transvection};

    #[test]
    fn weight_sign_examples() {
        assert_eq!(weight_sign(&[], 1, 2).unwrap(), 1);
        assert_eq!(weight_sign(&[2], 1, 3).unwrap(), -1);
        assert_eq!(weight_sign(&[3, 5], 1, 2).unwrap(), 1);
        assert!(weight_sign(&[2], 2, 3).is_err());
        assert!(weight_sign(&[], 2, 2).is_err());
    }

    #[test]
    fn factor_sign_ignores_orientation() {
        for (l, i, j) in [(vec![2], 1, 3), (vec![3, 5], 1, 4), (vec![2, 4], 5, 1)] {
            let between = l.iter().filter(|&&x| x > i.min(j) && x < i.max(j)).count();
            let expected = if between % 2 == 0 { 1 } else { -1 };
            assert_eq!(factor_sign(&l, i, j).unwrap(), expected);
            assert_eq!(factor_sign(&l, j, i).unwrap(), expected);
        }
    }

    #[test]
    fn image_of_t12_in_second_power() {
        let p = "poly:xi@z".parse::<Ring>().unwrap();
        let xi = p.var("xi").unwrap();
        let ctx = ExteriorContext::new(4, 2).unwrap();
        let a = Transvection::new(4, 1, 2, xi.clone()).unwrap().matrix();
        let image = exterior_power(&ctx, &a).unwrap();
        let t = |i: &[usize], j: &[usize]| {
            ExtTransvection::new(&ctx, i.into(), j.into(), xi.clone())
                .unwrap()
                .matrix()
        };
        assert_eq!(image, &t(&[1, 3], &[2, 3]) * &t(&[1, 4], &[2, 4]));
        let labels: Vec<String> = ext_transvection_factors(&ctx, 1, 3, &xi)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(labels, ["t_{12,23}(-xi)", "t_{14,34}(xi)"]);
    }

    #[test]
    fn top_power_is_determinant() {
        let p = "poly:a,b,c,d@z".parse::<Ring>().unwrap();
        let v = |s: &str| p.var(s).unwrap();
        let a = Matrix::from_rows(&p, vec![vec![v("a"), v("b")], vec![v("c"), v("d")]]).unwrap();
        let ctx = ExteriorContext::new(2, 2).unwrap();
        let image = exterior_power(&ctx, &a).unwrap();
        assert_eq!(
            image.get(0, 0),
            &(&(&v("a") * &v("d")) - &(&v("b") * &v("c")))
        );
    }

    #[test]
    fn power_letter_matches_image() {
        let f = Ring::fp(7).unwrap();
        let ctx = ExteriorContext::new(5, 2).unwrap();
        for (i, j) in [(1, 4), (4, 1), (3, 2)] {
            let w = pword(&ctx, i, j, &f.int(3));
            let a = Transvection::new(5, i, j, f.int(3)).unwrap().matrix();
            assert_eq!(
                word_evaluate(&w).unwrap(),
                exterior_power(&ctx, &a).unwrap()
            );
        }
    }
}
