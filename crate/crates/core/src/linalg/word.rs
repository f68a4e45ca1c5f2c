use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value as Json};

use super::{mat_inverse, LinalgError, Matrix};
use crate::rings::{Ring, RingElem};

/// A generator that can act on matrices from the left.
pub trait Letter: Clone + fmt::Debug + fmt::Display {
    fn dim(&self) -> usize;
    fn ring(&self) -> &Ring;
    fn inverse(&self) -> Self;
    /// Replaces `m` with `self · m`.
    fn act_left(&self, m: &mut Matrix);
    fn to_json(&self) -> Json;
}

/// Formal group word. `Comm(x, y)` is the left-normed `[x,y] = x y x⁻¹ y⁻¹`
/// and `Conj(x, y)` is the left conjugate `ˣy = x y x⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub enum Word<L> {
    Gen(L),
    Inv(Box<Word<L>>),
    Prod(Vec<Word<L>>),
    Comm(Box<Word<L>>, Box<Word<L>>),
    Conj(Box<Word<L>>, Box<Word<L>>),
}

impl<L: Letter> Word<L> {
    pub fn gen(l: L) -> Self {
        Word::Gen(l)
    }

    pub fn inv(w: Word<L>) -> Self {
        Word::Inv(Box::new(w))
    }

    pub fn prod(ws: Vec<Word<L>>) -> Self {
        Word::Prod(ws)
    }

    pub fn comm(x: Word<L>, y: Word<L>) -> Self {
        Word::Comm(Box::new(x), Box::new(y))
    }

    /// Left conjugate `ˣy = x y x⁻¹`.
    pub fn conj(x: Word<L>, y: Word<L>) -> Self {
        Word::Conj(Box::new(x), Box::new(y))
    }

    /// Right conjugate `yˣ = x⁻¹ y x`.
    pub fn rconj(y: Word<L>, x: Word<L>) -> Self {
        Word::conj(Word::inv(x), y)
    }

    /// Some letter of the word, used to recover dimension and ring.
    pub fn first_letter(&self) -> Option<&L> {
        match self {
            Word::Gen(l) => Some(l),
            Word::Inv(w) => w.first_letter(),
            Word::Prod(ws) => ws.iter().find_map(Word::first_letter),
            Word::Comm(x, y) | Word::Conj(x, y) => x.first_letter().or_else(|| y.first_letter()),
        }
    }

    pub fn letters(&self) -> Vec<&L> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters<'a>(&'a self, out: &mut Vec<&'a L>) {
        match self {
            Word::Gen(l) => out.push(l),
            Word::Inv(w) => w.collect_letters(out),
            Word::Prod(ws) => ws.iter().for_each(|w| w.collect_letters(out)),
            Word::Comm(x, y) | Word::Conj(x, y) => {
                x.collect_letters(out);
                y.collect_letters(out);
            }
        }
    }

    pub fn map_letters<M: Letter>(&self, f: &impl Fn(&L) -> M) -> Word<M> {
        match self {
            Word::Gen(l) => Word::Gen(f(l)),
            Word::Inv(w) => Word::inv(w.map_letters(f)),
            Word::Prod(ws) => Word::Prod(ws.iter().map(|w| w.map_letters(f)).collect()),
            Word::Comm(x, y) => Word::comm(x.map_letters(f), y.map_letters(f)),
            Word::Conj(x, y) => Word::conj(x.map_letters(f), y.map_letters(f)),
        }
    }

    /// Left-multiplies `m` by the word (or by its inverse).
    pub fn apply(&self, m: &mut Matrix, inverted: bool) {
        match self {
            Word::Gen(l) => {
                if inverted {
                    l.inverse().act_left(m)
                } else {
                    l.act_left(m)
                }
            }
            Word::Inv(w) => w.apply(m, !inverted),
            Word::Prod(ws) => {
                if inverted {
                    ws.iter().for_each(|w| w.apply(m, true));
                } else {
                    ws.iter().rev().for_each(|w| w.apply(m, false));
                }
            }
            Word::Comm(x, y) => {
                if inverted {
                    // y x y⁻¹ x⁻¹
                    x.apply(m, true);
                    y.apply(m, true);
                    x.apply(m, false);
                    y.apply(m, false);
                } else {
                    y.apply(m, true);
                    x.apply(m, true);
                    y.apply(m, false);
                    x.apply(m, false);
                }
            }
            Word::Conj(x, y) => {
                x.apply(m, true);
                y.apply(m, inverted);
                x.apply(m, false);
            }
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            Word::Gen(l) => json!({"op": "gen", "letter": l.to_json()}),
            Word::Inv(w) => json!({"op": "inv", "of": w.to_json()}),
            Word::Prod(ws) => {
                json!({"op": "prod", "factors": ws.iter().map(Word::to_json).collect::<Vec<_>>()})
            }
            Word::Comm(x, y) => json!({"op": "comm", "x": x.to_json(), "y": y.to_json()}),
            Word::Conj(x, y) => json!({"op": "conj", "by": x.to_json(), "of": y.to_json()}),
        }
    }
}

impl<L: Letter> fmt::Display for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Gen(l) => write!(f, "{l}"),
            Word::Inv(w) => write!(f, "({w})^-1"),
            Word::Prod(ws) if ws.is_empty() => write!(f, "e"),
            Word::Prod(ws) => {
                let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                write!(f, "{}", parts.join("·"))
            }
            Word::Comm(x, y) => write!(f, "[{x}, {y}]"),
            Word::Conj(x, y) => write!(f, "^({x})({y})"),
        }
    }
}

/// Evaluates `w` as a matrix. An empty word needs `dim` and `ring`, which
/// are otherwise taken from its letters.
pub fn word_evaluate<L: Letter>(w: &Word<L>) -> Result<Matrix, LinalgError> {
    let first = w.first_letter().ok_or(LinalgError::EmptyWord)?;
    word_evaluate_in(w, first.ring(), first.dim())
}

pub fn word_evaluate_in<L: Letter>(
    w: &Word<L>,
    ring: &Ring,
    dim: usize,
) -> Result<Matrix, LinalgError> {
    for l in w.letters() {
        if l.dim() != dim {
            return Err(LinalgError::Shape(format!(
                "letter {l} has size {} but the word has size {dim}",
                l.dim()
            )));
        }
        if l.ring() != ring {
            return Err(LinalgError::Ring(crate::rings::RingError::MixedRings(
                ring.to_string(),
                l.ring().to_string(),
            )));
        }
    }
    let mut m = Matrix::identity(ring, dim);
    w.apply(&mut m, false);
    Ok(m)
}

/// The elementary transvection `t_{i,j}(ξ) = e + ξ e_{ij}` of size n, with
/// 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transvection {
    n: usize,
    i: usize,
    j: usize,
    arg: RingElem,
}

impl Transvection {
    pub fn new(n: usize, i: usize, j: usize, arg: RingElem) -> Result<Self, LinalgError> {
        if i == j {
            return Err(LinalgError::DiagonalTransvection(i));
        }
        for x in [i, j] {
            if x == 0 || x > n {
                return Err(LinalgError::IndexOutOfRange(x, n));
            }
        }
        Ok(Transvection { n, i, j, arg })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn arg(&self) -> &RingElem {
        &self.arg
    }

    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::identity(self.arg.ring(), self.n);
        m.set(self.i - 1, self.j - 1, self.arg.clone());
        m
    }
}

impl fmt::Display for Transvection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t_{{{},{}}}({})", self.i, self.j, self.arg)
    }
}

impl Letter for Transvection {
    fn dim(&self) -> usize {
        self.n
    }

    fn ring(&self) -> &Ring {
        self.arg.ring()
    }

    fn inverse(&self) -> Self {
        Transvection {
            arg: -&self.arg,
            ..self.clone()
        }
    }

    fn act_left(&self, m: &mut Matrix) {
        m.add_row_multiple(self.i - 1, self.j - 1, &self.arg);
    }

    fn to_json(&self) -> Json {
        json!({"n": self.n, "i": self.i, "j": self.j, "arg": self.arg.to_json()})
    }
}

/// An explicit invertible matrix together with its inverse.
#[derive(Clone, Debug)]
pub struct MatrixLetter {
    pair: Arc<(Matrix, Matrix)>,
}

impl MatrixLetter {
    pub fn new(m: Matrix) -> Result<Self, LinalgError> {
        let inv = mat_inverse(&m)?;
        Ok(MatrixLetter {
            pair: Arc::new((m, inv)),
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.pair.0
    }
}

impl PartialEq for MatrixLetter {
    fn eq(&self, other: &Self) -> bool {
        self.pair.0 == other.pair.0
    }
}

impl fmt::Display for MatrixLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}", self.pair.0.rows())
    }
}

impl Letter for MatrixLetter {
    fn dim(&self) -> usize {
        self.pair.0.rows()
    }

    fn ring(&self) -> &Ring {
        self.pair.0.ring()
    }

    fn inverse(&self) -> Self {
        MatrixLetter {
            pair: Arc::new((self.pair.1.clone(), self.pair.0.clone())),
        }
    }

    fn act_left(&self, m: &mut Matrix) {
        *m = &self.pair.0 * m;
    }

    fn to_json(&self) -> Json {
        self.pair.0.to_json()
    }
}

/// Letters of words over GL_n: transvections or explicit matrices.
#[derive(Clone, Debug, PartialEq)]
pub enum LinLetter {
    T(Transvection),
    M(MatrixLetter),
}

impl fmt::Display for LinLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinLetter::T(t) => t.fmt(f),
            LinLetter::M(m) => m.fmt(f),
        }
    }
}

impl Letter for LinLetter {
    fn dim(&self) -> usize {
        match self {
            LinLetter::T(t) => t.dim(),
            LinLetter::M(m) => m.dim(),
        }
    }

    fn ring(&self) -> &Ring {
        match self {
            LinLetter::T(t) => t.ring(),
            LinLetter::M(m) => m.ring(),
        }
    }

    fn inverse(&self) -> Self {
        match self {
            LinLetter::T(t) => LinLetter::T(t.inverse()),
            LinLetter::M(m) => LinLetter::M(m.inverse()),
        }
    }

    fn act_left(&self, m: &mut Matrix) {
        match self {
            LinLetter::T(t) => t.act_left(m),
            LinLetter::M(x) => x.act_left(m),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            LinLetter::T(t) => json!({"transvection": t.to_json()}),
            LinLetter::M(m) => json!({"matrix": m.to_json()}),
        }
    }
}

pub fn tw(t: &Transvection) -> Word<LinLetter> {
    Word::gen(LinLetter::T(t.clone()))
}

/// Outcome of the Chevalley commutator formula for `[t_{i,j}(ξ), t_{h,k}(ζ)]`.
#[derive(Clone, Debug, PartialEq)]
pub enum ChevalleyResult {
    Identity,
    Transvection(Transvection),
    /// `j = h` and `i = k`: no single-transvection form; the matrix is
    /// computed by multiplication.
    Irreducible(Matrix),
}

pub fn chevalley_commutator(
    a: &Transvection,
    b: &Transvection,
) -> Result<ChevalleyResult, LinalgError> {
    if a.n != b.n {
        return Err(LinalgError::Shape(format!("sizes {} and {}", a.n, b.n)));
    }
    let (xi, zeta) = (&a.arg, &b.arg);
    Ok(match (a.j == b.i, a.i == b.j) {
        (false, false) => ChevalleyResult::Identity,
        (true, false) => {
            ChevalleyResult::Transvection(Transvection::new(a.n, a.i, b.j, xi * zeta)?)
        }
        (false, true) => {
            ChevalleyResult::Transvection(Transvection::new(a.n, b.i, a.j, -&(zeta * xi))?)
        }
        (true, true) => ChevalleyResult::Irreducible(word_evaluate(&Word::comm(tw(a), tw(b)))?),
    })
}

/// Checks `[x,y⁻¹,z⁻¹]ˣ · [z,x⁻¹,y⁻¹]ᶻ · [y,z⁻¹,x⁻¹]ʸ = e`.
pub fn hall_witt_check(x: &Matrix, y: &Matrix, z: &Matrix) -> Result<bool, LinalgError> {
    let g = |m: &Matrix| -> Result<Word<LinLetter>, LinalgError> {
        Ok(Word::gen(LinLetter::M(MatrixLetter::new(m.clone())?)))
    };
    let (x, y, z) = (g(x)?, g(y)?, g(z)?);
    let term = |a: &Word<LinLetter>, b: &Word<LinLetter>, c: &Word<LinLetter>| {
        let inner = Word::comm(
            Word::comm(a.clone(), Word::inv(b.clone())),
            Word::inv(c.clone()),
        );
        Word::rconj(inner, a.clone())
    };
    let w = Word::prod(vec![term(&x, &y, &z), term(&z, &x, &y), term(&y, &z, &x)]);
    Ok(word_evaluate(&w)?.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> (Ring, RingElem, RingElem) {
        let p = "poly:xi,zeta@z".parse::<Ring>().unwrap();
        let xi = p.var("xi").unwrap();
        let zeta = p.var("zeta").unwrap();
        (p, xi, zeta)
    }

    #[test]
    fn chevalley_examples() {
        let (_, xi, zeta) = sym();
        let t = |i, j, a: &RingElem| Transvection::new(4, i, j, a.clone()).unwrap();
        assert_eq!(
            chevalley_commutator(&t(1, 2, &xi), &t(2, 3, &zeta)).unwrap(),
            ChevalleyResult::Transvection(t(1, 3, &(&xi * &zeta)))
        );
        assert_eq!(
            chevalley_commutator(&t(1, 2, &xi), &t(3, 1, &zeta)).unwrap(),
            ChevalleyResult::Transvection(t(3, 2, &-&(&zeta * &xi)))
        );
        assert_eq!(
            chevalley_commutator(&t(1, 2, &xi), &t(3, 4, &zeta)).unwrap(),
            ChevalleyResult::Identity
        );
        let ChevalleyResult::Irreducible(m) =
            chevalley_commutator(&t(1, 2, &xi), &t(2, 1, &zeta)).unwrap()
        else {
            panic!("expected irreducible case");
        };
        let direct = &(&(&t(1, 2, &xi).matrix() * &t(2, 1, &zeta).matrix())
            * &t(1, 2, &-&xi).matrix())
            * &t(2, 1, &-&zeta).matrix();
        assert_eq!(m, direct);
    }

    #[test]
    fn word_evaluation_matches_products() {
        let (p, xi, zeta) = sym();
        let a = Transvection::new(3, 1, 2, xi.clone()).unwrap();
        let b = Transvection::new(3, 1, 2, zeta.clone()).unwrap();
        let sum = word_evaluate(&Word::prod(vec![tw(&a), tw(&b)])).unwrap();
        assert_eq!(
            sum,
            Transvection::new(3, 1, 2, &xi + &zeta).unwrap().matrix()
        );
        let c = Transvection::new(3, 2, 3, zeta.clone()).unwrap();
        let w = Word::conj(tw(&c), Word::inv(tw(&a)));
        let direct = &(&c.matrix() * &a.inverse().matrix()) * &c.inverse().matrix();
        assert_eq!(word_evaluate(&w).unwrap(), direct);
        let ww = Word::prod(vec![w.clone(), Word::inv(w)]);
        assert_eq!(word_evaluate(&ww).unwrap(), Matrix::identity(&p, 3));
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let (_, xi, _) = sym();
        let a = Transvection::new(3, 1, 2, xi.clone()).unwrap();
        let b = Transvection::new(4, 1, 2, xi).unwrap();
        assert!(matches!(
            word_evaluate(&Word::prod(vec![tw(&a), tw(&b)])),
            Err(LinalgError::Shape(_))
        ));
    }

    #[test]
    fn hall_witt_trivial_and_transvections() {
        let f = Ring::fp(7).unwrap();
        let e = Matrix::identity(&f, 3);
        assert!(hall_witt_check(&e, &e, &e).unwrap());
        let x = Transvection::new(3, 1, 2, f.int(3)).unwrap().matrix();
        let y = Transvection::new(3, 2, 3, f.int(5)).unwrap().matrix();
        let z = Transvection::new(3, 3, 1, f.int(2)).unwrap().matrix();
        assert!(hall_witt_check(&x, &y, &z).unwrap());
    }
}
