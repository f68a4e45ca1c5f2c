//! Arbitrary precision integers with an inline fast path for values that fit
//! in a machine word.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Integer {
    Small(i64),
    Large(BigInt),
}

impl Integer {
    pub fn zero() -> Self {
        Integer::Small(0)
    }

    pub fn one() -> Self {
        Integer::Small(1)
    }

    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Integer::Small(v),
            None => Integer::Large(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Integer::Small(v) => BigInt::from(*v),
            Integer::Large(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(v) => Some(*v),
            Integer::Large(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Integer::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Integer::Small(v) => *v < 0,
            Integer::Large(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Integer::Small(v) => match v.checked_abs() {
                Some(a) => Integer::Small(a),
                None => Integer::from_big(BigInt::from(*v).abs()),
            },
            Integer::Large(b) => Integer::from_big(b.abs()),
        }
    }

    /// Euclidean remainder in `[0, |m|)`.
    pub fn rem_euclid(&self, m: &Integer) -> Integer {
        match (self, m) {
            (Integer::Small(a), Integer::Small(b)) if *b != 0 && *b != -1 => {
                Integer::Small(a.rem_euclid(*b))
            }
            _ => {
                let mb = m.to_big().abs();
                let r = self.to_big().mod_floor(&mb);
                Integer::from_big(r)
            }
        }
    }

    /// Floor division, `self = q*m + r` with `0 <= r < |m|` when `m > 0`.
    pub fn div_floor(&self, m: &Integer) -> Integer {
        match (self, m) {
            (Integer::Small(a), Integer::Small(b)) if *b != 0 && !(*a == i64::MIN && *b == -1) => {
                Integer::Small(a.div_floor(b))
            }
            _ => Integer::from_big(self.to_big().div_floor(&m.to_big())),
        }
    }

    /// Exact division; panics in debug builds when the remainder is nonzero.
    pub fn div_exact(&self, m: &Integer) -> Integer {
        match (self, m) {
            (Integer::Small(a), Integer::Small(b)) if *b != 0 && !(*a == i64::MIN && *b == -1) => {
                debug_assert_eq!(a % b, 0);
                Integer::Small(a / b)
            }
            _ => {
                let (q, r) = self.to_big().div_rem(&m.to_big());
                debug_assert!(r.is_zero());
                Integer::from_big(q)
            }
        }
    }

    pub fn divides(&self, other: &Integer) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem_euclid(self).is_zero()
    }

    pub fn gcd(&self, other: &Integer) -> Integer {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) if *a != i64::MIN && *b != i64::MIN => {
                Integer::Small(a.gcd(b))
            }
            _ => Integer::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    /// Returns `(g, x, y)` with `g = gcd(a, b) = x*a + y*b` and `g >= 0`.
    pub fn extended_gcd(&self, other: &Integer) -> (Integer, Integer, Integer) {
        let e = self.to_big().extended_gcd(&other.to_big());
        let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
        if g.is_negative() {
            g = -g;
            x = -x;
            y = -y;
        }
        (
            Integer::from_big(g),
            Integer::from_big(x),
            Integer::from_big(y),
        )
    }

    pub fn pow(&self, exp: u32) -> Integer {
        let mut acc = Integer::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::Small(v)
    }
}

impl From<BigInt> for Integer {
    fn from(b: BigInt) -> Self {
        Integer::from_big(b)
    }
}

impl PartialEq for Integer {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a == b,
            // canonical: Large never holds a value that fits in i64
            (Integer::Large(a), Integer::Large(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Integer {}

impl std::hash::Hash for Integer {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Integer::Small(v) => v.hash(state),
            Integer::Large(b) => b.hash(state),
        }
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(v) => write!(f, "{v}"),
            Integer::Large(b) => write!(f, "{b}"),
        }
    }
}

impl Add for &Integer {
    type Output = Integer;
    fn add(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_add(*b) {
                return Integer::Small(c);
            }
        }
        Integer::from_big(self.to_big() + rhs.to_big())
    }
}

impl Sub for &Integer {
    type Output = Integer;
    fn sub(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_sub(*b) {
                return Integer::Small(c);
            }
        }
        Integer::from_big(self.to_big() - rhs.to_big())
    }
}

impl Mul for &Integer {
    type Output = Integer;
    fn mul(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_mul(*b) {
                return Integer::Small(c);
            }
        }
        Integer::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match self {
            Integer::Small(v) => match v.checked_neg() {
                Some(n) => Integer::Small(n),
                None => Integer::from_big(-BigInt::from(*v)),
            },
            Integer::Large(b) => Integer::from_big(-b.clone()),
        }
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer::Small(0)
    }
    fn is_zero(&self) -> bool {
        Integer::is_zero(self)
    }
}

impl Add for Integer {
    type Output = Integer;
    fn add(self, rhs: Integer) -> Integer {
        &self + &rhs
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::Small(1)
    }
}

impl Mul for Integer {
    type Output = Integer;
    fn mul(self, rhs: Integer) -> Integer {
        &self * &rhs
    }
}
