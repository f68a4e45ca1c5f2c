use std::fmt;

use super::{Integer, Ring, RingElem, RingError, RingSpec};

/// A finitely generated ideal. Over ℤ, ℤ/k and fields the ideal is principal
/// and `normal_form` holds its canonical generator: the non-negative gcd over
/// ℤ, a divisor of k over ℤ/k (k itself standing for the zero ideal), and 0
/// or 1 over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<RingElem>,
    normal_form: Option<Integer>,
}

impl Ideal {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[RingElem] {
        &self.generators
    }

    /// Canonical generator as an integer lift; `None` for polynomial rings.
    pub fn normal_form(&self) -> Option<&Integer> {
        self.normal_form.as_ref()
    }

    /// Canonical generator as an element of the ring.
    pub fn normal_generator(&self) -> Option<RingElem> {
        self.normal_form
            .as_ref()
            .map(|g| self.ring.from_integer(g.clone()))
    }

    pub fn is_zero(&self) -> bool {
        match (&self.normal_form, self.ring.modulus()) {
            (Some(g), None) => g.is_zero(),
            (Some(g), Some(k)) => *g == Integer::from(k as i64),
            (None, _) => self.generators.iter().all(RingElem::is_zero),
        }
    }

    pub fn is_unit(&self) -> bool {
        match &self.normal_form {
            Some(g) => g.is_one(),
            None => self.generators.iter().any(RingElem::is_unit),
        }
    }

    /// The ideal generated by `gens` together with this one.
    pub fn join(&self, gens: &[RingElem]) -> Result<Ideal, RingError> {
        let mut all = self.generators.clone();
        all.extend_from_slice(gens);
        ideal_generate(&self.ring, &all)
    }

    /// Size of R/A when it is finite: the normal-form generator over ℤ
    /// (if nonzero) or over ℤ/k.
    pub fn quotient_modulus(&self) -> Option<u64> {
        let g = self.normal_form.as_ref()?;
        if g.is_zero() {
            return None;
        }
        g.to_i64().map(|v| v as u64)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.normal_form {
            Some(g) => write!(f, "({g})"),
            None => {
                let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
                write!(f, "({})", gens.join(", "))
            }
        }
    }
}

pub fn ideal_generate(ring: &Ring, gens: &[RingElem]) -> Result<Ideal, RingError> {
    if let Some(g) = gens.iter().find(|g| g.ring() != ring) {
        return Err(RingError::MixedRings(
            ring.to_string(),
            g.ring().to_string(),
        ));
    }
    let normal_form = match ring.spec() {
        RingSpec::Polynomial { .. } => None,
        RingSpec::Integers => Some(
            gens.iter()
                .fold(Integer::zero(), |acc, g| acc.gcd(g.as_integer().unwrap())),
        ),
        RingSpec::IntegersMod(k) => {
            let k = Integer::from(*k as i64);
            Some(
                gens.iter()
                    .fold(k, |acc, g| acc.gcd(g.as_integer().unwrap())),
            )
        }
        RingSpec::PrimeField(_) => Some(if gens.iter().all(RingElem::is_zero) {
            Integer::zero()
        } else {
            Integer::one()
        }),
    };
    Ok(Ideal {
        ring: ring.clone(),
        generators: gens.to_vec(),
        normal_form,
    })
}

pub fn ideal_membership(ideal: &Ideal, x: &RingElem) -> Result<bool, RingError> {
    if x.ring() != &ideal.ring {
        return Err(RingError::MixedRings(
            ideal.ring.to_string(),
            x.ring().to_string(),
        ));
    }
    let g = ideal
        .normal_form
        .as_ref()
        .ok_or_else(|| RingError::Unsupported(ideal.ring.to_string()))?;
    let v = x.as_integer().expect("scalar ring");
    Ok(g.divides(v) || (g.is_zero() && v.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_ideals() {
        let z = Ring::integers();
        let a = ideal_generate(&z, &[z.int(4), z.int(6)]).unwrap();
        assert_eq!(a.normal_form(), Some(&Integer::from(2)));
        assert!(ideal_membership(&a, &z.int(10)).unwrap());
        assert!(!ideal_membership(&a, &z.int(7)).unwrap());
        let zero = ideal_generate(&z, &[]).unwrap();
        assert!(zero.is_zero());
        assert!(ideal_membership(&zero, &z.zero()).unwrap());
        assert!(!ideal_membership(&zero, &z.one()).unwrap());
    }

    #[test]
    fn modular_ideal_matches_multiples() {
        let r = Ring::zmod(9).unwrap();
        let a = ideal_generate(&r, &[r.int(6)]).unwrap();
        assert_eq!(a.normal_form(), Some(&Integer::from(3)));
        let multiples: Vec<i64> = (0..9).map(|c| (6 * c) % 9).collect();
        for x in 0..9 {
            assert_eq!(
                ideal_membership(&a, &r.int(x)).unwrap(),
                multiples.contains(&x)
            );
        }
        assert!(ideal_generate(&r, &[]).unwrap().is_zero());
    }

    #[test]
    fn field_and_polynomial_cases() {
        let f = Ring::fp(7).unwrap();
        assert!(ideal_generate(&f, &[f.int(3)]).unwrap().is_unit());
        let p = "poly:x@z".parse::<Ring>().unwrap();
        let a = ideal_generate(&p, &[p.var("x").unwrap()]).unwrap();
        assert!(a.normal_form().is_none());
        assert!(matches!(
            ideal_membership(&a, &p.one()),
            Err(RingError::Unsupported(_))
        ));
        assert!(matches!(
            ideal_generate(&f, &[p.one()]),
            Err(RingError::MixedRings(..))
        ));
    }
}
