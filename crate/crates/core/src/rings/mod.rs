//! Exact commutative rings: ℤ, ℤ/k, 𝔽_p and multivariate polynomial rings
//! over them.
//!
//! Every element carries a handle to its ring, so values can be combined
//! without passing a context around. Ring handles are reference counted and
//! immutable.

mod elem;
mod ideal;
mod integer;
mod poly;
mod solve;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

pub use elem::RingElem;
pub use ideal::{ideal_generate, ideal_membership, Ideal};
pub use integer::Integer;
pub use poly::Poly;
pub use solve::{diagonalize, solve_linear, Diagonalization};

/// Residues are multiplied in `i64`; moduli above this bound are rejected.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("modulus {0} exceeds the supported bound {MAX_MODULUS}")]
    ModulusTooLarge(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("polynomial rings must have a non-polynomial base ring")]
    NestedPolynomial,
    #[error("polynomial ring needs at least one variable")]
    NoVariables,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("mixed ring specs: {0} and {1}")]
    MixedRings(String, String),
    #[error("operation not supported over {0}")]
    Unsupported(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("cannot parse ring spec `{0}`")]
    BadSpec(String),
    #[error("cannot parse element `{0}`")]
    BadElement(String),
    #[error("cannot map {0} into {1}")]
    Coercion(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    IntegersMod(u64),
    PrimeField(u64),
    Polynomial {
        base: Box<RingSpec>,
        vars: Vec<String>,
    },
}

impl RingSpec {
    pub fn validate(&self) -> Result<(), RingError> {
        match self {
            RingSpec::Integers => Ok(()),
            RingSpec::IntegersMod(k) => check_modulus(*k),
            RingSpec::PrimeField(p) => {
                check_modulus(*p)?;
                if !is_prime(*p) {
                    return Err(RingError::NotPrime(*p));
                }
                Ok(())
            }
            RingSpec::Polynomial { base, vars } => {
                if matches!(**base, RingSpec::Polynomial { .. }) {
                    return Err(RingError::NestedPolynomial);
                }
                base.validate()?;
                if vars.is_empty() {
                    return Err(RingError::NoVariables);
                }
                for (idx, v) in vars.iter().enumerate() {
                    if vars[..idx].contains(v) {
                        return Err(RingError::DuplicateVariable(v.clone()));
                    }
                }
                Ok(())
            }
        }
    }

    /// The modulus of the scalar ring, `None` for ℤ.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingSpec::Integers => None,
            RingSpec::IntegersMod(k) | RingSpec::PrimeField(k) => Some(*k),
            RingSpec::Polynomial { base, .. } => base.modulus(),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, RingSpec::PrimeField(_))
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self, RingSpec::Polynomial { .. })
    }

    /// True iff 2 is a unit.
    pub fn two_invertible(&self) -> bool {
        match self.modulus() {
            None => false,
            Some(k) => k % 2 == 1,
        }
    }

    /// The scalar ring underneath a polynomial ring, or the ring itself.
    pub fn scalar_spec(&self) -> &RingSpec {
        match self {
            RingSpec::Polynomial { base, .. } => base,
            other => other,
        }
    }
}

fn check_modulus(k: u64) -> Result<(), RingError> {
    if k < 2 {
        Err(RingError::ModulusTooSmall(k))
    } else if k > MAX_MODULUS {
        Err(RingError::ModulusTooLarge(k))
    } else {
        Ok(())
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "z"),
            RingSpec::IntegersMod(k) => write!(f, "zmod:{k}"),
            RingSpec::PrimeField(p) => write!(f, "fp:{p}"),
            RingSpec::Polynomial { base, vars } => write!(f, "poly:{}@{}", vars.join(","), base),
        }
    }
}

/// Default variables for the bare `poly` flag.
pub const DEFAULT_POLY_VARS: [&str; 3] = ["xi", "zeta", "zeta1"];

impl FromStr for RingSpec {
    type Err = RingError;

    /// Flags: `z`, `zmod:k`, `fp:p`, `poly:VAR[,VAR…]@<base>`, and bare `poly`
    /// meaning `poly:xi,zeta,zeta1@z`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RingError::BadSpec(s.to_string());
        let s = s.trim();
        let spec = if s == "z" {
            RingSpec::Integers
        } else if let Some(k) = s.strip_prefix("zmod:") {
            RingSpec::IntegersMod(k.parse().map_err(|_| bad())?)
        } else if let Some(p) = s.strip_prefix("fp:") {
            RingSpec::PrimeField(p.parse().map_err(|_| bad())?)
        } else if s == "poly" {
            RingSpec::Polynomial {
                base: Box::new(RingSpec::Integers),
                vars: DEFAULT_POLY_VARS.iter().map(|v| v.to_string()).collect(),
            }
        } else if let Some(rest) = s.strip_prefix("poly:") {
            let (vars, base) = rest.split_once('@').ok_or_else(bad)?;
            let vars: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).collect();
            if vars
                .iter()
                .any(|v| v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_'))
            {
                return Err(bad());
            }
            RingSpec::Polynomial {
                base: Box::new(base.parse()?),
                vars,
            }
        } else {
            return Err(bad());
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Shared handle to a validated [`RingSpec`].
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingSpec>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl std::ops::Deref for Ring {
    type Target = RingSpec;
    fn deref(&self) -> &RingSpec {
        &self.0
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Ring {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Ring(Arc::new(s.parse()?)))
    }
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring, RingError> {
        spec.validate()?;
        Ok(Ring(Arc::new(spec)))
    }

    pub fn integers() -> Ring {
        Ring(Arc::new(RingSpec::Integers))
    }

    pub fn zmod(k: u64) -> Result<Ring, RingError> {
        Ring::new(RingSpec::IntegersMod(k))
    }

    pub fn fp(p: u64) -> Result<Ring, RingError> {
        Ring::new(RingSpec::PrimeField(p))
    }

    pub fn polynomial(base: &Ring, vars: &[&str]) -> Result<Ring, RingError> {
        Ring::new(RingSpec::Polynomial {
            base: Box::new((*base.0).clone()),
            vars: vars.iter().map(|v| v.to_string()).collect(),
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0
    }

    /// Scalar ring of a polynomial ring (or the ring itself).
    pub fn scalar_ring(&self) -> Ring {
        match &*self.0 {
            RingSpec::Polynomial { base, .. } => Ring(Arc::new((**base).clone())),
            _ => self.clone(),
        }
    }

    pub fn num_vars(&self) -> usize {
        match &*self.0 {
            RingSpec::Polynomial { vars, .. } => vars.len(),
            _ => 0,
        }
    }

    pub fn var_names(&self) -> &[String] {
        match &*self.0 {
            RingSpec::Polynomial { vars, .. } => vars,
            _ => &[],
        }
    }

    /// Canonical scalar representative of `x` in the scalar ring.
    pub(crate) fn reduce_scalar(&self, x: Integer) -> Integer {
        match self.modulus() {
            None => x,
            Some(k) => x.rem_euclid(&Integer::from(k as i64)),
        }
    }

    pub fn zero(&self) -> RingElem {
        RingElem::from_integer(self, Integer::zero())
    }

    pub fn one(&self) -> RingElem {
        RingElem::from_integer(self, Integer::one())
    }

    pub fn int(&self, v: i64) -> RingElem {
        RingElem::from_integer(self, Integer::from(v))
    }

    pub fn from_integer(&self, v: Integer) -> RingElem {
        RingElem::from_integer(self, v)
    }

    pub fn var(&self, name: &str) -> Result<RingElem, RingError> {
        let idx = self
            .var_names()
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| RingError::UnknownVariable(name.to_string()))?;
        Ok(self.var_at(idx))
    }

    /// The `idx`-th variable; panics when out of range.
    pub fn var_at(&self, idx: usize) -> RingElem {
        let n = self.num_vars();
        assert!(idx < n, "variable index {idx} out of range");
        let mut exps = vec![0u32; n];
        exps[idx] = 1;
        RingElem::from_poly(self, Poly::monomial(exps, Integer::one()))
    }

    /// Maps `x` into this ring through its integer (or integer-coefficient)
    /// lift. Polynomial values need a ring with the same variable names.
    pub fn coerce(&self, x: &RingElem) -> Result<RingElem, RingError> {
        if x.ring() == self {
            return Ok(x.clone());
        }
        let fail = || RingError::Coercion(x.ring().to_string(), self.to_string());
        if let Some(v) = x.as_integer() {
            return Ok(self.from_integer(v.clone()));
        }
        if !self.is_polynomial() {
            return x
                .constant_lift()
                .map(|c| self.from_integer(c))
                .ok_or_else(fail);
        }
        if x.ring().var_names() != self.var_names() {
            return Err(fail());
        }
        let p = x.as_poly().ok_or_else(fail)?;
        let terms = p
            .terms()
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Ok(RingElem::from_poly(self, Poly::from_terms(self, terms)))
    }

    /// Parses a scalar literal: an integer, a variable name, or `-name`.
    pub fn parse_elem(&self, s: &str) -> Result<RingElem, RingError> {
        let t = s.trim();
        if let Ok(v) = t.parse::<i64>() {
            return Ok(self.int(v));
        }
        if let Ok(b) = t.parse::<num_bigint::BigInt>() {
            return Ok(self.from_integer(Integer::from(b)));
        }
        let (neg, name) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let v = self
            .var(name)
            .map_err(|_| RingError::BadElement(s.to_string()))?;
        Ok(if neg { -&v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_flags_round_trip() {
        for s in ["z", "zmod:9", "fp:7", "poly:x,y@fp:5", "poly:xi@z"] {
            let spec: RingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "poly".parse::<RingSpec>().unwrap().to_string(),
            "poly:xi,zeta,zeta1@z"
        );
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            "zmod:1".parse::<RingSpec>(),
            Err(RingError::ModulusTooSmall(1))
        );
        assert_eq!("fp:9".parse::<RingSpec>(), Err(RingError::NotPrime(9)));
        assert_eq!(
            "poly:x,x@z".parse::<RingSpec>(),
            Err(RingError::DuplicateVariable("x".into()))
        );
        assert!("poly:x@poly:y@z".parse::<RingSpec>().is_err());
        assert!("q".parse::<RingSpec>().is_err());
    }

    #[test]
    fn two_invertibility() {
        assert!(!Ring::integers().two_invertible());
        assert!(Ring::zmod(9).unwrap().two_invertible());
        assert!(!Ring::zmod(8).unwrap().two_invertible());
        assert!(Ring::fp(7).unwrap().two_invertible());
        assert!("poly:x@fp:5".parse::<Ring>().unwrap().two_invertible());
    }

    #[test]
    fn coercion_between_scalar_rings() {
        let z9 = Ring::zmod(9).unwrap();
        let f7 = Ring::fp(7).unwrap();
        assert_eq!(f7.coerce(&z9.int(8)).unwrap(), f7.int(1));
        let p = "poly:x@z".parse::<Ring>().unwrap();
        let q = "poly:x@fp:3".parse::<Ring>().unwrap();
        let x = p.var("x").unwrap();
        let e = &(&x * &p.int(4)) + &p.one();
        assert_eq!(q.coerce(&e).unwrap(), &q.var("x").unwrap() + &q.one());
        assert!(f7.coerce(&x).is_err());
    }
}
