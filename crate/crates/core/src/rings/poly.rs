use std::collections::BTreeMap;

use super::{Integer, Ring};

/// Sparse multivariate polynomial. Exponent vectors are dense over the
/// declared variables; coefficients are canonical scalars of the base ring
/// and never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Vec<u32>, Integer>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    /// Single term; the coefficient must already be canonical.
    pub(crate) fn monomial(exps: Vec<u32>, coeff: Integer) -> Poly {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Poly { terms }
    }

    pub(crate) fn from_terms(ring: &Ring, terms: Vec<(Vec<u32>, Integer)>) -> Poly {
        let mut out: BTreeMap<Vec<u32>, Integer> = BTreeMap::new();
        for (e, c) in terms {
            accumulate(&mut out, ring, e, &c);
        }
        Poly { terms: out }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Integer> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn constant(&self) -> Option<Integer> {
        match self.terms.len() {
            0 => Some(Integer::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub(crate) fn add(&self, other: &Poly, ring: &Ring) -> Poly {
        let mut out = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out, ring, e.clone(), c);
        }
        Poly { terms: out }
    }

    pub(crate) fn neg(&self, ring: &Ring) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), ring.reduce_scalar(-c)))
            .collect();
        Poly { terms }
    }

    pub(crate) fn mul(&self, other: &Poly, ring: &Ring) -> Poly {
        let mut out = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                accumulate(&mut out, ring, e, &(c1 * c2));
            }
        }
        Poly { terms: out }
    }

    pub(crate) fn scale(&self, c: &Integer, ring: &Ring) -> Poly {
        let mut out = BTreeMap::new();
        for (e, c1) in &self.terms {
            let v = ring.reduce_scalar(c1 * c);
            if !v.is_zero() {
                out.insert(e.clone(), v);
            }
        }
        Poly { terms: out }
    }

    /// Exact division over ℤ coefficients, `None` if `divisor` does not
    /// divide `self`. Uses lexicographic leading terms.
    pub(crate) fn div_exact_integer(&self, divisor: &Poly, ring: &Ring) -> Option<Poly> {
        debug_assert!(ring.modulus().is_none());
        let (lead_e, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((e, c)) = rem.terms.iter().next_back() {
            if !lead_c.divides(c) || e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c.div_exact(lead_c);
            let step = Poly::monomial(qe.clone(), qc.clone());
            rem = rem.add(&step.mul(divisor, ring).neg(ring), ring);
            quot.insert(qe, qc);
        }
        Some(Poly { terms: quot })
    }
}

fn accumulate(out: &mut BTreeMap<Vec<u32>, Integer>, ring: &Ring, e: Vec<u32>, c: &Integer) {
    match out.entry(e) {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let v = ring.reduce_scalar(o.get() + c);
            if v.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = v;
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            let r = ring.reduce_scalar(c.clone());
            if !r.is_zero() {
                v.insert(r);
            }
        }
    }
}
