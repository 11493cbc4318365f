//! Ground rings: the integers and the residue rings `Z/m`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring mismatch: {0} vs {1}")]
    Mismatch(RingSpec, RingSpec),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("cannot parse ring `{0}` (expected `z` or `zmod:<m>`)")]
    Parse(String),
    #[error("{0} is not a unit in {1}")]
    NotUnit(BigInt, RingSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Modular,
}

/// Which ground ring a computation lives in.
///
/// `Z/m` always has `m >= 2`; the only way to build one is [`RingSpec::modular`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingSpec {
    modulus: Option<u64>,
}

impl RingSpec {
    pub const Z: RingSpec = RingSpec { modulus: None };

    pub fn integers() -> Self {
        Self::Z
    }

    pub fn modular(m: u64) -> Result<Self, RingError> {
        if m < 2 {
            return Err(RingError::BadModulus(m));
        }
        Ok(RingSpec { modulus: Some(m) })
    }

    pub fn kind(&self) -> RingKind {
        match self.modulus {
            None => RingKind::Integers,
            Some(_) => RingKind::Modular,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_integers(&self) -> bool {
        self.modulus.is_none()
    }

    /// `Some(p)` when the ring is the prime field `Z/p`.
    pub fn prime_field(&self) -> Option<u64> {
        self.modulus.filter(|&m| is_prime(m))
    }

    /// `Some((p, r))` when the ring is `Z/p^r`.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        let m = self.modulus?;
        let p = smallest_prime_factor(m);
        let mut rest = m;
        let mut r = 0;
        while rest % p == 0 {
            rest /= p;
            r += 1;
        }
        (rest == 1).then_some((p, r))
    }

    /// Canonical representative: unchanged over `Z`, in `0..m` over `Z/m`.
    pub fn reduce(&self, v: BigInt) -> BigInt {
        match self.modulus {
            None => v,
            Some(m) => v.mod_floor(&BigInt::from(m)),
        }
    }

    pub fn reduce_i64(&self, v: i64) -> BigInt {
        self.reduce(BigInt::from(v))
    }

    pub fn is_unit_value(&self, v: &BigInt) -> bool {
        match self.modulus {
            None => v.abs().is_one(),
            Some(m) => v.gcd(&BigInt::from(m)).is_one(),
        }
    }

    pub fn inverse_value(&self, v: &BigInt) -> Option<BigInt> {
        match self.modulus {
            None => v.abs().is_one().then(|| v.clone()),
            Some(m) => {
                let m = BigInt::from(m);
                let e = v.mod_floor(&m).extended_gcd(&m);
                e.gcd.is_one().then(|| e.x.mod_floor(&m))
            }
        }
    }

    pub fn check_same(&self, other: &RingSpec) -> Result<(), RingError> {
        if self == other {
            Ok(())
        } else {
            Err(RingError::Mismatch(*self, *other))
        }
    }
}

impl Default for RingSpec {
    fn default() -> Self {
        Self::Z
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "z"),
            Some(m) => write!(f, "zmod:{m}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        if t == "z" {
            return Ok(Self::Z);
        }
        let m = t
            .strip_prefix("zmod:")
            .and_then(|m| m.parse::<u64>().ok())
            .ok_or_else(|| RingError::Parse(s.to_string()))?;
        Self::modular(m)
    }
}

pub(crate) fn smallest_prime_factor(m: u64) -> u64 {
    if m.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    m
}

pub(crate) fn is_prime(m: u64) -> bool {
    m >= 2 && smallest_prime_factor(m) == m
}

/// An element of a ground ring together with its ring tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    ring: RingSpec,
    value: BigInt,
}

impl Scalar {
    pub fn new(ring: RingSpec, value: impl Into<BigInt>) -> Self {
        Scalar {
            ring,
            value: ring.reduce(value.into()),
        }
    }

    pub fn zero(ring: RingSpec) -> Self {
        Scalar::new(ring, 0)
    }

    pub fn one(ring: RingSpec) -> Self {
        Scalar::new(ring, 1)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn into_value(self) -> BigInt {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, RingError> {
        self.ring.check_same(&other.ring)?;
        Ok(Scalar::new(self.ring, &self.value + &other.value))
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, RingError> {
        self.ring.check_same(&other.ring)?;
        Ok(Scalar::new(self.ring, &self.value - &other.value))
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, RingError> {
        self.ring.check_same(&other.ring)?;
        Ok(Scalar::new(self.ring, &self.value * &other.value))
    }

    pub fn neg(&self) -> Scalar {
        Scalar::new(self.ring, -&self.value)
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit_value(&self.value)
    }

    pub fn inverse(&self) -> Result<Scalar, RingError> {
        self.ring
            .inverse_value(&self.value)
            .map(|v| Scalar::new(self.ring, v))
            .ok_or_else(|| RingError::NotUnit(self.value.clone(), self.ring))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(v: i64) -> Scalar {
        Scalar::new(RingSpec::Z, v)
    }

    fn zm(m: u64, v: i64) -> Scalar {
        Scalar::new(RingSpec::modular(m).unwrap(), v)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(z(2).add(&z(3)).unwrap(), z(5));
        assert_eq!(zm(4, 3).add(&zm(4, 3)).unwrap(), zm(4, 2));
        assert_eq!(zm(4, 0).add(&zm(4, 3)).unwrap(), zm(4, 3));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(z(2).mul(&z(3)).unwrap(), z(6));
        assert!(zm(9, 3).mul(&zm(9, 3)).unwrap().is_zero());
        assert_eq!(z(1).mul(&z(-17)).unwrap(), z(-17));
        assert_eq!(zm(7, 1).mul(&zm(7, 5)).unwrap(), zm(7, 5));
    }

    #[test]
    fn units() {
        assert!(z(-1).is_unit());
        assert!(!z(2).is_unit());
        assert!(!zm(9, 3).is_unit());
        assert!(zm(9, 2).is_unit());
        assert_eq!(zm(9, 2).inverse().unwrap(), zm(9, 5));
        assert!(zm(9, 3).inverse().is_err());
    }

    #[test]
    fn mismatch_is_an_error() {
        assert!(matches!(z(1).add(&zm(3, 1)), Err(RingError::Mismatch(..))));
        assert!(zm(3, 1).mul(&zm(5, 1)).is_err());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("z".parse::<RingSpec>().unwrap(), RingSpec::Z);
        let r: RingSpec = "zmod:9".parse().unwrap();
        assert_eq!(r.modulus(), Some(9));
        assert_eq!(r.to_string(), "zmod:9");
        assert!("zmod:1".parse::<RingSpec>().is_err());
        assert!("q".parse::<RingSpec>().is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(RingSpec::modular(8).unwrap().prime_power(), Some((2, 3)));
        assert_eq!(RingSpec::modular(9).unwrap().prime_power(), Some((3, 2)));
        assert_eq!(RingSpec::modular(6).unwrap().prime_power(), None);
        assert_eq!(RingSpec::modular(7).unwrap().prime_field(), Some(7));
        assert_eq!(RingSpec::modular(4).unwrap().prime_field(), None);
        assert_eq!(RingSpec::Z.prime_power(), None);
    }

    fn ring_strategy() -> impl Strategy<Value = RingSpec> {
        prop_oneof![
            Just(RingSpec::Z),
            (2u64..40).prop_map(|m| RingSpec::modular(m).unwrap())
        ]
    }

    proptest! {
        #[test]
        fn ring_axioms(r in ring_strategy(), a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000) {
            let (a, b, c) = (Scalar::new(r, a), Scalar::new(r, b), Scalar::new(r, c));
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn modular_values_are_canonical(m in 2u64..1000, v in any::<i64>()) {
            let s = Scalar::new(RingSpec::modular(m).unwrap(), v);
            prop_assert!(*s.value() >= BigInt::zero());
            prop_assert!(*s.value() < BigInt::from(m));
        }
    }
}
