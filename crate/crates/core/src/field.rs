//! Field abstractions: exact rationals and prime fields.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Shorthand for exact rationals.
pub type Q = BigRational;

/// A field given as a context object; elements are plain values.
pub trait Field: Clone + Debug + PartialEq + Eq + Hash + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// A random element; over ℚ a small integer, over GF(p) uniform.
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Canonical representative of the projective point of `v`.
    fn normalize_projective(&self, v: &[Self::Elem]) -> Vec<Self::Elem>;

    fn format(&self, a: &Self::Elem) -> String;

    /// Parse an element from "num/den" or "num" text.
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// Image of `a` in GF(p), for fields that support modular fast paths.
    fn modular_image(&self, _a: &Self::Elem, _p: u64) -> Option<u64> {
        None
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

/// The field ℚ with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn from_i64(&self, n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }
    // Integer fast paths skip the gcd reductions of the generic operators.
    fn add(&self, a: &Q, b: &Q) -> Q {
        if a.is_zero() {
            b.clone()
        } else if b.is_zero() {
            a.clone()
        } else if a.is_integer() && b.is_integer() {
            Q::from_integer(a.numer() + b.numer())
        } else {
            a + b
        }
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        if b.is_zero() {
            a.clone()
        } else if a.is_integer() && b.is_integer() {
            Q::from_integer(a.numer() - b.numer())
        } else {
            a - b
        }
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        if a.is_zero() || b.is_zero() {
            Q::zero()
        } else if a.is_integer() && b.is_integer() {
            Q::from_integer(a.numer() * b.numer())
        } else {
            a * b
        }
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn inv(&self, a: &Q) -> Option<Q> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Q) -> bool {
        a.is_one()
    }

    fn modular_image(&self, a: &Q, p: u64) -> Option<u64> {
        if let (Some(n), Some(d)) = (a.numer().to_i64(), a.denom().to_i64()) {
            let n = (n as i128).rem_euclid(p as i128) as u64;
            if d == 1 {
                return Some(n);
            }
            let di = modinv_u64((d as i128).rem_euclid(p as i128) as u64, p)?;
            return Some(((n as u128 * di as u128) % p as u128) as u64);
        }
        let m = BigInt::from(p);
        let n = a.numer().mod_floor(&m);
        let d = a.denom().mod_floor(&m);
        let n: u64 = n.try_into().ok()?;
        let d: u64 = d.try_into().ok()?;
        let di = modinv_u64(d, p)?;
        Some(((n as u128 * di as u128) % p as u128) as u64)
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Q {
        self.from_i64(rng.gen_range(-12..=12))
    }

    fn normalize_projective(&self, v: &[Q]) -> Vec<Q> {
        let Some(first) = v.iter().find(|x| !x.is_zero()) else {
            return v.to_vec();
        };
        let lcm = v
            .iter()
            .filter(|x| !x.is_zero())
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if first.is_negative() {
            g = -g;
        }
        ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
    }

    fn format(&self, a: &Q) -> String {
        format_rational(a)
    }

    fn parse(&self, s: &str) -> Result<Q> {
        parse_rational(s)
    }
}

/// Inverse modulo a prime `p < 2^63`.
pub(crate) fn modinv_u64(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let (mut base, mut e, mut acc) = (a as u128 % p as u128, p - 2, 1u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    Some(acc as u64)
}

/// Rational reconstruction: n/d ≡ a (mod p) with |n|, d ≤ √(p/2).
pub(crate) fn rational_reconstruct(a: u64, p: u64) -> Option<(i64, i64)> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some((n as i64, d as i64))
}

/// Format a rational as "num/den", omitting the denominator when it is 1.
pub fn format_rational(a: &Q) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Parse "num/den" or "num" into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

/// The prime field GF(p), p < 2^31, elements stored in [0, p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1u64 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Reduce a rational; fails when p divides the denominator.
    pub fn reduce(&self, q: &Q) -> Result<u32> {
        let p = BigInt::from(self.p);
        let n = q.numer().mod_floor(&p);
        let d = q.denom().mod_floor(&p);
        if d.is_zero() {
            return Err(Error::BadReduction(self.p));
        }
        let n = u32::try_from(n).expect("residue fits");
        let d = u32::try_from(d).expect("residue fits");
        Ok(self.mul(&n, &self.inv(&d).expect("nonzero")))
    }

    /// Elements 0, 1, ..., p-1 in order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2).
        let (mut base, mut e, mut acc) = (*a as u64, self.p as u64 - 2, 1u64);
        let m = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Some(acc as u32)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }

    fn normalize_projective(&self, v: &[u32]) -> Vec<u32> {
        match v.iter().find(|x| **x != 0) {
            None => v.to_vec(),
            Some(first) => {
                let s = self.inv(first).expect("nonzero");
                v.iter().map(|x| self.mul(x, &s)).collect()
            }
        }
    }

    fn format(&self, a: &u32) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<u32> {
        self.reduce(&parse_rational(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(parse_rational("6/-4").unwrap(), q(-3, 2));
        assert_eq!(format_rational(&q(-3, 2)), "-3/2");
        assert_eq!(format_rational(&q(8, 4)), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn primitive_integer_scaling() {
        let v = vec![q(0, 1), q(-2, 3), q(4, 9), q(0, 1)];
        assert_eq!(Rationals.normalize_projective(&v), vec![q(0, 1), q(1, 1), q(-2, 3), q(0, 1)]
            .iter()
            .map(|x| x * q(3, 1))
            .collect::<Vec<_>>());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.reduce(&q(1, 2)).unwrap(), 4);
        assert_eq!(f.reduce(&q(1, 7)), Err(Error::BadReduction(7)));
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
    }

    #[test]
    fn prime_field_projective() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.normalize_projective(&[0, 3, 1]), vec![0, 1, 2]);
    }
}
