//! Exact scalar arithmetic over the rationals and prime fields GF(p).
//!
//! Every scalar in the crate lives in one of these two fields; there is no
//! floating point anywhere. Rational arithmetic is arbitrary precision,
//! GF(p) arithmetic is mod-p on `u64` residues (p < 2^31 so products fit
//! in `u64` after widening through `u128`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::fmt;

use crate::error::{Error, Result};

/// The ground field: the rationals or a prime field GF(p).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum FieldSpec {
    Rational,
    Gf(u64),
}

/// An element of a [`FieldSpec`]. A `Mod` residue is only meaningful
/// together with the field it came from; all containers (matrices,
/// representations) carry the field and enforce consistency.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for d in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == d {
            return true;
        }
        if n % d == 0 {
            return false;
        }
    }
    let mut d = 37u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// GF(p) with a primality and size check (p must fit comfortably in u64 products).
    pub fn gf(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(FieldSpec::Gf(p))
    }

    pub fn characteristic(&self) -> Option<u64> {
        match self {
            FieldSpec::Rational => None,
            FieldSpec::Gf(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rat(BigRational::zero()),
            FieldSpec::Gf(_) => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rat(BigRational::one()),
            FieldSpec::Gf(_) => Scalar::Mod(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Gf(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Mod(r)
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(r) => *r == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldSpec::Gf(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            _ => panic!("scalar/field mismatch in add"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            (FieldSpec::Gf(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + p - y) % p),
            _ => panic!("scalar/field mismatch in sub"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldSpec::Gf(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar/field mismatch in mul"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldSpec::Gf(p), Scalar::Mod(x)) => Scalar::Mod(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar/field mismatch in neg"),
        }
    }

    /// Multiplicative inverse; `None` on zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (FieldSpec::Rational, Scalar::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(x.recip()))
                }
            }
            (FieldSpec::Gf(p), Scalar::Mod(x)) => {
                if *x == 0 {
                    None
                } else {
                    Some(Scalar::Mod(mod_pow(*x, p - 2, *p)))
                }
            }
            _ => panic!("scalar/field mismatch in inv"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// A uniformly random element (rationals draw small integers).
    pub fn random<R: Rng>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldSpec::Rational => self.from_i64(rng.gen_range(-20..=20)),
            FieldSpec::Gf(p) => Scalar::Mod(rng.gen_range(0..*p)),
        }
    }

    /// A random nonzero element.
    pub fn random_nonzero<R: Rng>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !self.is_zero(&s) {
                return s;
            }
        }
    }

    /// Serialized scalar form: "a/b" (or "a") over the rationals, decimal
    /// residue over GF(p).
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(r) => format!("{}", r),
        }
    }

    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            FieldSpec::Rational => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let n: BigInt = num
                    .parse()
                    .map_err(|_| Error::ScalarParse(s.to_string()))?;
                let d: BigInt = den
                    .parse()
                    .map_err(|_| Error::ScalarParse(s.to_string()))?;
                if d.is_zero() {
                    return Err(Error::ScalarParse(s.to_string()));
                }
                Ok(Scalar::Rat(BigRational::new(n, d)))
            }
            FieldSpec::Gf(p) => {
                let n: i128 = s.parse().map_err(|_| Error::ScalarParse(s.to_string()))?;
                Ok(Scalar::Mod(n.rem_euclid(*p as i128) as u64))
            }
        }
    }

    /// Exact conversion of a field scalar known to be a (small) integer.
    /// Used for composition multiplicities and dimensions.
    pub fn to_integer(&self, a: &Scalar) -> Option<i64> {
        match a {
            Scalar::Rat(r) => {
                if r.denom().is_one() && r.numer().abs() <= BigInt::from(i64::MAX) {
                    r.numer().try_into().ok()
                } else {
                    None
                }
            }
            Scalar::Mod(r) => {
                // interpret residues near p as small negatives
                let p = self.characteristic().unwrap();
                if *r <= p / 2 {
                    Some(*r as i64)
                } else {
                    Some(*r as i64 - p as i64)
                }
            }
        }
    }
}

pub fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Gf(p) => write!(f, "GF({})", p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf_inverse() {
        let f = FieldSpec::gf(7).unwrap();
        for r in 1..7u64 {
            let inv = f.inv(&Scalar::Mod(r)).unwrap();
            assert_eq!(f.mul(&Scalar::Mod(r), &inv), f.one());
        }
        assert!(f.inv(&Scalar::Mod(0)).is_none());
    }

    #[test]
    fn rational_roundtrip() {
        let f = FieldSpec::Rational;
        let s = f.parse("-3/6").unwrap();
        assert_eq!(f.format(&s), "-1/2");
        assert_eq!(f.add(&s, &s), f.from_i64(-1));
    }

    #[test]
    fn primality() {
        assert!(FieldSpec::gf(10007).is_ok());
        assert!(FieldSpec::gf(10006).is_err());
        assert!(FieldSpec::gf(1).is_err());
        assert!(FieldSpec::gf(2).is_ok());
    }
}
