use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value as Json};

use super::InvariantsError;
use crate::exterior::ExteriorContext;
use crate::linalg::Matrix;
use crate::rings::{Ring, RingElem};

/// Polynomial in the weight variables `x_I`, `I` ranging over the weight
/// indices of `ctx`. A monomial is the non-decreasing list of variable
/// ranks. In alternating mode the variables anticommute: monomials are
/// strictly increasing and reordering contributes a sign.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightPoly {
    ctx: ExteriorContext,
    ring: Ring,
    alternating: bool,
    terms: BTreeMap<Vec<usize>, RingElem>,
}

/// Sorts `v` in place and returns the parity of the permutation used.
fn sort_with_sign(v: &mut [usize]) -> i8 {
    let mut sign = 1;
    for k in 1..v.len() {
        let mut p = k;
        while p > 0 && v[p - 1] > v[p] {
            v.swap(p - 1, p);
            sign = -sign;
            p -= 1;
        }
    }
    sign
}

impl WeightPoly {
    pub fn zero(ctx: &ExteriorContext, ring: &Ring, alternating: bool) -> Self {
        WeightPoly {
            ctx: ctx.clone(),
            ring: ring.clone(),
            alternating,
            terms: BTreeMap::new(),
        }
    }

    /// `c · x_{r_1}···x_{r_k}` for variable ranks `r`, in the given order.
    pub fn monomial(
        ctx: &ExteriorContext,
        ring: &Ring,
        alternating: bool,
        ranks: &[usize],
        c: RingElem,
    ) -> Self {
        let mut p = Self::zero(ctx, ring, alternating);
        p.add_term(ranks.to_vec(), c);
        p
    }

    pub fn ctx(&self) -> &ExteriorContext {
        &self.ctx
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, RingElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all monomials; `None` if they differ or the
    /// polynomial is zero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(Vec::len);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn coeff(&self, mono: &[usize]) -> RingElem {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Adds `c·x_{ranks}` with `ranks` in any order.
    pub fn add_term(&mut self, mut ranks: Vec<usize>, c: RingElem) {
        let sign = sort_with_sign(&mut ranks);
        if self.alternating && ranks.windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        let c = if self.alternating && sign < 0 { -&c } else { c };
        let entry = self.terms.entry(ranks);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    pub fn add(&self, other: &WeightPoly) -> WeightPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> WeightPoly {
        self.scale(&-&self.ring.one())
    }

    pub fn scale(&self, c: &RingElem) -> WeightPoly {
        let mut out = Self::zero(&self.ctx, &self.ring, self.alternating);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &WeightPoly) -> WeightPoly {
        let mut out = Self::zero(&self.ctx, &self.ring, self.alternating);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term([m1.as_slice(), m2.as_slice()].concat(), c1 * c2);
            }
        }
        out
    }

    /// Value at a point given by its coordinates in rank order; commutative
    /// polynomials only.
    pub fn evaluate(&self, point: &[RingElem]) -> Result<RingElem, InvariantsError> {
        if self.alternating {
            return Err(InvariantsError::Unsupported(
                "evaluation of an alternating form".into(),
            ));
        }
        if point.len() != self.ctx.big_n() {
            return Err(InvariantsError::SizeMismatch(point.len(), self.ctx.big_n()));
        }
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &r in m {
                t = &t * &self.ring.coerce(&point[r])?;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Json {
        let ctx = &self.ctx;
        let terms: Vec<Json> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut mono: Vec<Json> = Vec::new();
                let mut k = 0;
                while k < m.len() {
                    let e = m[k..].iter().take_while(|&&r| r == m[k]).count();
                    mono.push(json!([ctx.unrank(m[k]).to_string(), e]));
                    k += e;
                }
                json!({"monomial": mono, "coeff": c.to_json()})
            })
            .collect();
        json!({
            "n": ctx.n(),
            "m": ctx.m(),
            "ring": self.ring.to_string(),
            "alternating": self.alternating,
            "terms": terms,
        })
    }
}

impl fmt::Display for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sep = if self.alternating { "∧" } else { "*" };
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut cs = c.to_string();
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .iter()
                .map(|&r| format!("x{}", self.ctx.unrank(r).label()))
                .collect();
            let body = vars.join(sep);
            if cs == "1" {
                write!(f, "{body}")?;
            } else if cs.contains(' ') {
                write!(f, "({cs})*{body}")?;
            } else {
                write!(f, "{cs}*{body}")?;
            }
        }
        Ok(())
    }
}

/// `p(g∘x)` with `(g∘x)_J = Σ_K g_{JK} x_K`.
pub fn substitute_linear(p: &WeightPoly, g: &Matrix) -> Result<WeightPoly, InvariantsError> {
    let big = p.ctx.big_n();
    if !g.is_square() || g.rows() != big {
        return Err(InvariantsError::SizeMismatch(g.rows(), big));
    }
    let ring = &p.ring;
    let g = if g.ring() == ring {
        g.clone()
    } else {
        g.map_ring(ring)?
    };
    let rows: Vec<Vec<(usize, RingElem)>> = (0..big)
        .map(|j| {
            g.row(j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect()
        })
        .collect();
    let mut out = WeightPoly::zero(&p.ctx, ring, p.alternating);
    for (mono, c) in &p.terms {
        // expand the product of the substituted variables one factor at a time
        let mut partial: BTreeMap<Vec<usize>, RingElem> = BTreeMap::new();
        partial.insert(Vec::new(), c.clone());
        for &j in mono {
            let mut next = WeightPoly::zero(&p.ctx, ring, p.alternating);
            for (m, a) in &partial {
                for (k, b) in &rows[j] {
                    let mut mm = m.clone();
                    mm.push(*k);
                    next.add_term(mm, a * b);
                }
            }
            partial = next.terms;
        }
        for (m, a) in partial {
            out.add_term(m, a);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_products_anticommute() {
        let ctx = ExteriorContext::new(2, 1).unwrap();
        let r = Ring::integers();
        let x = WeightPoly::monomial(&ctx, &r, true, &[0], r.one());
        let y = WeightPoly::monomial(&ctx, &r, true, &[1], r.one());
        assert_eq!(x.mul(&y), y.mul(&x).neg());
        assert!(x.mul(&x).is_zero());
        let c = WeightPoly::monomial(&ctx, &r, false, &[1, 0], r.int(3));
        assert_eq!(c.to_string(), "3*x1*x2");
    }

    #[test]
    fn identity_substitution_is_trivial() {
        let ctx = ExteriorContext::new(4, 2).unwrap();
        let r = Ring::fp(7).unwrap();
        let p = WeightPoly::monomial(&ctx, &r, false, &[0, 5], r.one()).add(&WeightPoly::monomial(
            &ctx,
            &r,
            false,
            &[1, 4],
            r.int(-1),
        ));
        assert_eq!(substitute_linear(&p, &Matrix::identity(&r, 6)).unwrap(), p);
        assert!(substitute_linear(&p, &Matrix::identity(&r, 5)).is_err());
    }
}
