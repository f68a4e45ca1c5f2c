use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value as Json};

use super::{Integer, Poly, Ring, RingError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Payload {
    Int(Integer),
    Poly(Poly),
}

/// An element of a [`Ring`] in canonical form: integers as-is, residues in
/// `[0, k)`, polynomials with canonical nonzero coefficients.
#[derive(Clone, Debug)]
pub struct RingElem {
    ring: Ring,
    payload: Payload,
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.payload == other.payload && self.ring == other.ring
    }
}

impl Eq for RingElem {}

impl std::hash::Hash for RingElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.payload.hash(state)
    }
}

impl RingElem {
    pub(crate) fn from_integer(ring: &Ring, v: Integer) -> RingElem {
        let v = ring.reduce_scalar(v);
        let payload = if ring.is_polynomial() {
            Payload::Poly(Poly::monomial(vec![0; ring.num_vars()], v))
        } else {
            Payload::Int(v)
        };
        RingElem {
            ring: ring.clone(),
            payload,
        }
    }

    pub(crate) fn from_poly(ring: &Ring, p: Poly) -> RingElem {
        debug_assert!(ring.is_polynomial());
        RingElem {
            ring: ring.clone(),
            payload: Payload::Poly(p),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Integer payload of a scalar ring element.
    pub fn as_integer(&self) -> Option<&Integer> {
        match &self.payload {
            Payload::Int(v) => Some(v),
            Payload::Poly(_) => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match &self.payload {
            Payload::Int(_) => None,
            Payload::Poly(p) => Some(p),
        }
    }

    /// Scalar value when the element is a constant.
    pub fn constant_lift(&self) -> Option<Integer> {
        match &self.payload {
            Payload::Int(v) => Some(v.clone()),
            Payload::Poly(p) => p.constant(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Int(v) => v.is_zero(),
            Payload::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_lift().is_some_and(|c| c.is_one())
    }

    /// True iff `self` is invertible. Polynomials are units iff they are
    /// constants that are units of the base.
    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    pub fn inverse(&self) -> Option<RingElem> {
        let c = self.constant_lift()?;
        let inv = match self.ring.modulus() {
            None => {
                if c == Integer::one() || c == Integer::from(-1) {
                    c
                } else {
                    return None;
                }
            }
            Some(k) => {
                let k = Integer::from(k as i64);
                let (g, x, _) = c.extended_gcd(&k);
                if !g.is_one() {
                    return None;
                }
                x
            }
        };
        Some(self.ring.from_integer(inv))
    }

    pub fn pow(&self, exp: u32) -> RingElem {
        let mut acc = self.ring.one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient over ℤ or ℤ[x…]; `None` if `d` does not divide `self`
    /// or the ring has a modulus.
    pub(crate) fn div_exact_z(&self, d: &RingElem) -> Option<RingElem> {
        if self.ring.modulus().is_some() {
            return None;
        }
        match (&self.payload, &d.payload) {
            (Payload::Int(a), Payload::Int(b)) => {
                (!b.is_zero() && b.divides(a)).then(|| self.ring.from_integer(a.div_exact(b)))
            }
            (Payload::Poly(a), Payload::Poly(b)) => a
                .div_exact_integer(b, &self.ring)
                .map(|q| RingElem::from_poly(&self.ring, q)),
            _ => None,
        }
    }

    /// Symmetric representative of a scalar residue, for display.
    fn display_scalar(&self, c: &Integer) -> Integer {
        match self.ring.modulus() {
            Some(k) => {
                let k = Integer::from(k as i64);
                let twice = c + c;
                if twice > k {
                    c - &k
                } else {
                    c.clone()
                }
            }
            None => c.clone(),
        }
    }

    fn assert_same_ring(&self, other: &RingElem) {
        assert!(
            self.ring == other.ring,
            "ring mismatch: {} vs {}",
            self.ring,
            other.ring
        );
    }

    /// JSON: scalars as numbers (strings when beyond 64 bits), polynomials
    /// as lists of `{monomial: [exponents], coeff}`.
    pub fn to_json(&self) -> Json {
        fn num(c: &Integer) -> Json {
            match c.to_i64() {
                Some(v) => json!(v),
                None => json!(c.to_string()),
            }
        }
        match &self.payload {
            Payload::Int(v) => num(v),
            Payload::Poly(p) => Json::Array(
                p.terms()
                    .iter()
                    .map(|(e, c)| json!({"monomial": e, "coeff": num(c)}))
                    .collect(),
            ),
        }
    }

    pub fn from_json(ring: &Ring, v: &Json) -> Result<RingElem, RingError> {
        let bad = || RingError::BadElement(v.to_string());
        let scalar = |v: &Json| -> Result<Integer, RingError> {
            if let Some(i) = v.as_i64() {
                return Ok(Integer::from(i));
            }
            if let Some(s) = v.as_str() {
                return s
                    .parse::<num_bigint::BigInt>()
                    .map(Integer::from)
                    .map_err(|_| bad());
            }
            Err(bad())
        };
        match v {
            Json::Array(terms) => {
                if !ring.is_polynomial() {
                    return Err(bad());
                }
                let nv = ring.num_vars();
                let mut out = Vec::with_capacity(terms.len());
                for t in terms {
                    let mono = t.get("monomial").and_then(Json::as_array).ok_or_else(bad)?;
                    if mono.len() != nv {
                        return Err(bad());
                    }
                    let exps = mono
                        .iter()
                        .map(|x| x.as_u64().map(|e| e as u32).ok_or_else(bad))
                        .collect::<Result<Vec<_>, _>>()?;
                    let c = scalar(t.get("coeff").ok_or_else(bad)?)?;
                    out.push((exps, c));
                }
                Ok(RingElem::from_poly(ring, Poly::from_terms(ring, out)))
            }
            Json::String(s) if ring.is_polynomial() => ring.parse_elem(s),
            _ => Ok(ring.from_integer(scalar(v)?)),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Int(v) => write!(f, "{v}"),
            Payload::Poly(p) => {
                if p.is_zero() {
                    return write!(f, "0");
                }
                let names = self.ring.var_names();
                let mut first = true;
                for (e, c) in p.terms().iter().rev() {
                    let c = self.display_scalar(c);
                    let neg = c.is_negative();
                    let mag = c.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { '-' } else { '+' })?;
                    }
                    first = false;
                    let vars: Vec<String> = e
                        .iter()
                        .zip(names)
                        .filter(|(x, _)| **x > 0)
                        .map(|(x, n)| {
                            if *x == 1 {
                                n.clone()
                            } else {
                                format!("{n}^{x}")
                            }
                        })
                        .collect();
                    if vars.is_empty() {
                        write!(f, "{mag}")?;
                    } else {
                        if !mag.is_one() {
                            write!(f, "{mag}*")?;
                        }
                        write!(f, "{}", vars.join("*"))?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        self.assert_same_ring(rhs);
        let payload = match (&self.payload, &rhs.payload) {
            (Payload::Int(a), Payload::Int(b)) => Payload::Int(self.ring.reduce_scalar(a + b)),
            (Payload::Poly(a), Payload::Poly(b)) => Payload::Poly(a.add(b, &self.ring)),
            _ => unreachable!("payload kind follows the ring"),
        };
        RingElem {
            ring: self.ring.clone(),
            payload,
        }
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        let payload = match &self.payload {
            Payload::Int(a) => Payload::Int(self.ring.reduce_scalar(-a)),
            Payload::Poly(a) => Payload::Poly(a.neg(&self.ring)),
        };
        RingElem {
            ring: self.ring.clone(),
            payload,
        }
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self + &(-rhs)
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        self.assert_same_ring(rhs);
        let payload = match (&self.payload, &rhs.payload) {
            (Payload::Int(a), Payload::Int(b)) => Payload::Int(self.ring.reduce_scalar(a * b)),
            (Payload::Poly(a), Payload::Poly(b)) => {
                // constant fast path
                match (a.constant(), b.constant()) {
                    (Some(c), _) => Payload::Poly(b.scale(&c, &self.ring)),
                    (_, Some(c)) => Payload::Poly(a.scale(&c, &self.ring)),
                    _ => Payload::Poly(a.mul(b, &self.ring)),
                }
            }
            _ => unreachable!("payload kind follows the ring"),
        };
        RingElem {
            ring: self.ring.clone(),
            payload,
        }
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, rhs: RingElem) -> RingElem {
        &self + &rhs
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, rhs: RingElem) -> RingElem {
        &self - &rhs
    }
}

impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, rhs: RingElem) -> RingElem {
        &self * &rhs
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_are_canonical() {
        let r = Ring::zmod(9).unwrap();
        assert_eq!(r.int(-1), r.int(8));
        assert_eq!(r.int(10), r.one());
        assert_eq!(r.int(-1).as_integer(), Some(&Integer::from(8)));
    }

    #[test]
    fn units() {
        let z = Ring::integers();
        assert!(!z.int(2).is_unit());
        assert!(z.int(-1).is_unit());
        let z9 = Ring::zmod(9).unwrap();
        assert!(z9.int(2).is_unit());
        assert_eq!(z9.int(2).inverse().unwrap(), z9.int(5));
        assert!(!z9.int(3).is_unit());
        let p = "poly:x@z".parse::<Ring>().unwrap();
        assert!(!p.var("x").unwrap().is_unit());
        assert!(p.int(-1).is_unit());
        let q = "poly:x@fp:5".parse::<Ring>().unwrap();
        assert_eq!(q.int(2).inverse().unwrap(), q.int(3));
    }

    #[test]
    fn polynomial_arithmetic_and_display() {
        let p = "poly:xi,zeta@z".parse::<Ring>().unwrap();
        let xi = p.var("xi").unwrap();
        let zeta = p.var("zeta").unwrap();
        let e = &(&xi * &zeta) - &(&zeta * &xi);
        assert!(e.is_zero());
        let sq = (&xi + &zeta).pow(2);
        assert_eq!(sq.to_string(), "xi^2 + 2*xi*zeta + zeta^2");
        let m = "poly:xi@fp:7".parse::<Ring>().unwrap();
        let neg = -&m.var("xi").unwrap();
        assert_eq!(neg.to_string(), "-xi");
    }

    #[test]
    fn json_round_trip() {
        let p = "poly:x,y@zmod:9".parse::<Ring>().unwrap();
        let e = &(&p.var("x").unwrap() * &p.int(4)) - &p.var("y").unwrap();
        let back = RingElem::from_json(&p, &e.to_json()).unwrap();
        assert_eq!(back, e);
        let z = Ring::integers();
        assert_eq!(RingElem::from_json(&z, &json!(-12)).unwrap(), z.int(-12));
        assert_eq!(
            RingElem::from_json(&p, &json!("-x")).unwrap(),
            -&p.var("x").unwrap()
        );
    }
}
