//! Integer helpers shared by the sum engine and the theorem scans.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

/// Inverse of `a` modulo `m`, as the representative in `[1, m - 1]`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if *m < BigInt::from(2) {
        return Err(Error::InverseModulus(m.clone()));
    }
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(Error::NotCoprime {
            a: a.clone(),
            b: m.clone(),
        });
    }
    Ok(e.x.mod_floor(m))
}

pub fn is_coprime(a: &BigInt, b: &BigInt) -> bool {
    a.gcd(b).is_one()
}

/// Number of distinct primes dividing `b`, by trial division. Zero for `b <= 1`.
pub fn distinct_prime_factor_count(mut b: u64) -> u32 {
    let mut count = 0;
    let mut p = 2u64;
    while p.saturating_mul(p) <= b {
        if b.is_multiple_of(p) {
            count += 1;
            while b.is_multiple_of(p) {
                b /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if b > 1 {
        count += 1;
    }
    count
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Residues in `[1, b - 1]` coprime to `b`, ascending. Empty for `b = 1`.
pub fn units(b: u64) -> Vec<u64> {
    (1..b).filter(|&a| a.gcd(&b) == 1).collect()
}

pub(crate) fn require_positive(b: &BigInt) -> Result<()> {
    if b.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveModulus(b.clone()))
    }
}

pub(crate) fn require_coprime(a: &BigInt, b: &BigInt) -> Result<()> {
    if is_coprime(a, b) {
        Ok(())
    } else {
        Err(Error::NotCoprime {
            a: a.clone(),
            b: b.clone(),
        })
    }
}
