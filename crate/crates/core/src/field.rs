//! Exact coefficient fields: ℚ with arbitrary precision and GF(p) for
//! primes below 2³¹.

use alloc::string::{String, ToString};
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A field with an explicit element type.
///
/// Elements are plain values; the field value carries whatever context is
/// needed (the modulus for GF(p)).
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

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
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of `num/den`; fails if `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;
    /// Canonical representative of `a`.
    fn normalize(&self, a: &Self::Elem) -> Self::Elem;
    fn characteristic(&self) -> u64;
    fn format(&self, a: &Self::Elem) -> String;
    fn spec(&self) -> FieldSpec {
        FieldSpec { characteristic: self.characteristic() }
    }
}

/// The characteristic of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub characteristic: u64,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || (characteristic < (1 << 31) && is_prime(characteristic)) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::InvalidCharacteristic(characteristic))
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

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
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::ZeroInversion)
        } else {
            Ok(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn normalize(&self, a: &BigRational) -> BigRational {
        // BigRational::new reduces and fixes the sign of the denominator.
        BigRational::new(a.numer().clone(), a.denom().clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            let mut s = a.numer().to_string();
            s.push('/');
            s.push_str(&a.denom().to_string());
            s
        }
    }
}

/// GF(p) with residues stored in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        match FieldSpec::new(p) {
            Ok(_) if p != 0 => Ok(PrimeField { p: p as u32 }),
            _ => Err(Error::InvalidCharacteristic(p)),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, b: u32, mut e: u32) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64 % p;
        let mut base = b as u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Result<u32> {
        if *a % self.p == 0 {
            return Err(Error::ZeroInversion);
        }
        // Fermat: a^(p-2).
        Ok(self.pow(*a, self.p - 2))
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u32> {
        let p = BigInt::from(self.p);
        let reduce = |x: &BigInt| -> u32 {
            let r = x.mod_floor(&p);
            r.to_u32().unwrap_or(0)
        };
        let d = reduce(den);
        let n = reduce(num);
        self.div(&n, &d)
    }
    fn normalize(&self, a: &u32) -> u32 {
        a % self.p
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
}

/// Parses an integer or `a/b` rational literal into a field element.
pub fn parse_coefficient<K: Field>(field: &K, text: &str) -> Result<K::Elem> {
    let text = text.trim();
    let bad = || Error::Parse(alloc::format!("bad coefficient `{text}`"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_negative() {
        return field.from_ratio(&-num, &-den);
    }
    field.from_ratio(&num, &den)
}
