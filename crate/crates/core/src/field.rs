//! Prime-field scalars.
//!
//! Coefficients are stored as plain `u32` residues; the modulus lives in the
//! owning [`crate::poly::Ring`] and is fixed for a whole computation. This
//! module holds the handful of operations on residues that everything else
//! goes through.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted by the library.
pub const MAX_PRIME: u32 = 97;

/// A validated prime modulus `2 <= p <= 97`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::PrimeOutOfRange(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u32) -> bool {
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

/// An element of F_p together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    pub fn new(value: i64, p: Prime) -> Self {
        FieldElement { value: reduce_signed(value, p.get()), p: p.get() }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(FieldElement { value: inv(self.value, self.p), p: self.p })
        }
    }

    pub fn pow(self, e: u64) -> Self {
        FieldElement { value: pow(self.value, e, self.p), p: self.p }
    }
}

impl std::ops::Add for FieldElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FieldElement { value: add(self.value, o.value, self.p), p: self.p }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FieldElement { value: sub(self.value, o.value, self.p), p: self.p }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FieldElement { value: mul(self.value, o.value, self.p), p: self.p }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElement { value: neg(self.value, self.p), p: self.p }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(mut base: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
#[inline]
pub fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "inverse of zero");
    pow(a, (p - 2) as u64, p)
}

#[inline]
pub fn reduce_signed(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// Binomial coefficient `C(n, k) mod p` by Lucas' theorem.
pub fn binomial(mut n: u64, mut k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let pp = p as u64;
    let mut acc = 1u32;
    while n > 0 || k > 0 {
        let (ni, ki) = ((n % pp) as u32, (k % pp) as u32);
        if ki > ni {
            return 0;
        }
        acc = mul(acc, small_binomial(ni, ki, p), p);
        n /= pp;
        k /= pp;
    }
    acc
}

fn small_binomial(n: u32, k: u32, p: u32) -> u32 {
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = mul(num, (n - i) % p, p);
        den = mul(den, (i + 1) % p, p);
    }
    mul(num, inv(den, p), p)
}

/// Falling factorial `n (n-1) ... (n-k+1) mod p`.
pub fn falling_factorial(n: u64, k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let mut acc = 1u32;
    for i in 0..k {
        acc = mul(acc, ((n - i) % p as u64) as u32, p);
        if acc == 0 {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_validated() {
        assert!(Prime::new(3).is_ok());
        assert!(matches!(Prime::new(4), Err(Error::NotPrime(4))));
        assert!(matches!(Prime::new(1), Err(Error::NotPrime(1))));
        assert!(matches!(Prime::new(101), Err(Error::PrimeOutOfRange(101))));
    }

    #[test]
    fn inverse_and_powers() {
        for p in [2u32, 3, 5, 7, 97] {
            for a in 1..p {
                assert_eq!(mul(a, inv(a, p), p), 1);
                assert_eq!(pow(a, p as u64, p), a);
            }
        }
    }

    #[test]
    fn lucas_binomials_match_integer_ones() {
        let p = 5;
        let mut row = vec![1u64];
        for n in 0..30u64 {
            for (k, c) in row.iter().enumerate() {
                assert_eq!(binomial(n, k as u64, p), *c as u32, "C({n},{k})");
            }
            let mut next = vec![1u64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = (row[k - 1] + row[k]) % p as u64;
            }
            row = next;
        }
    }

    #[test]
    fn field_element_ops() {
        let p = Prime::new(3).unwrap();
        let a = FieldElement::new(-1, p);
        assert_eq!(a.value(), 2);
        assert_eq!((a * a).value(), 1);
        assert_eq!((a + FieldElement::new(1, p)).value(), 0);
        assert_eq!(a.inv().unwrap().value(), 2);
        assert!(FieldElement::new(3, p).inv().is_none());
    }
}
