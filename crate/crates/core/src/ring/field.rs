//! Coefficient fields: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default modulus for invariant computations, the Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Smallest modulus for which random coefficient draws are considered
/// reliable stand-ins for generic ones.
pub const SMALL_PRIME_WARNING: u64 = 1 << 16;

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "QQ"),
            FieldKind::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// A field with context-carried arithmetic.
///
/// Elements do not know their field; every operation goes through the field
/// object so that the prime modulus can be chosen at runtime.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// `num / den` as a field element; fails when `den` vanishes in the field.
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem> {
        let d = self.from_bigint(den);
        if self.is_zero(&d) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&self.from_bigint(num), &self.inv(&d)))
    }

    /// A random nonzero element. Over the rationals this is an integer with
    /// absolute value at most `bound`; over a prime field it is uniform.
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Self::Elem;

    /// Canonical text form, parseable by [`Field::parse_elem`].
    fn format(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    /// The element as a signed integer if it is one (prime field elements
    /// are printed in the symmetric range).
    fn to_bigint(&self, a: &Self::Elem) -> Option<BigInt>;

    fn is_negative(&self, a: &Self::Elem) -> bool;
}

/// The prime field GF(p) for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^32")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        n.mod_floor(&m).to_u64().expect("residue fits")
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in GF({})", self.p);
        pow_mod(*a, self.p - 2, self.p)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce_bigint(n)
    }
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, _bound: u64) -> u64 {
        rng.gen_range(1..self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<u64> {
        let n: BigInt = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad GF({}) element '{s}'", self.p)))?;
        Ok(self.reduce_bigint(&n))
    }
    fn to_bigint(&self, a: &u64) -> Option<BigInt> {
        if *a > self.p / 2 {
            Some(BigInt::from(*a) - BigInt::from(self.p))
        } else {
            Some(BigInt::from(*a))
        }
    }
    fn is_negative(&self, a: &u64) -> bool {
        *a > self.p / 2
    }
}

/// The field of rational numbers with arbitrary-precision arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in QQ");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> BigRational {
        let bound = bound.max(1) as i64;
        loop {
            let v = rng.gen_range(-bound..=bound);
            if v != 0 {
                return self.from_i64(v);
            }
        }
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::Parse(format!("bad rational '{s}'"));
        match s.trim().split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
        }
    }
    fn to_bigint(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.numer().clone())
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(5).unwrap();
        for a in 1..5 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.to_bigint(&4), Some(BigInt::from(-1)));
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(DEFAULT_PRIME).is_ok());
    }

    #[test]
    fn rational_text_round_trip() {
        let q = Rationals;
        let x = q.parse_elem("-6/4").unwrap();
        assert_eq!(q.format(&x), "-3/2");
        assert_eq!(q.parse_elem(&q.format(&x)).unwrap(), x);
        assert!(q.parse_elem("1/0").is_err());
    }
}
