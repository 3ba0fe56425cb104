//! Dedekind sums `s(a, b)` and Dedekind-Rademacher sums `r_n(a, b)`.
//!
//! Two evaluators exist for `s`: [`dedekind_naive`] walks the defining sum in
//! `O(b)` steps, and [`dedekind_fast`] runs a Euclidean recursion driven by
//! the reciprocity law in `O(log b)` steps. `r_n` only has the defining-sum
//! evaluator; its reciprocity law is exposed as a checker
//! ([`rademacher_reciprocity_rhs`]) and never used to evaluate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{mod_inverse, require_coprime, require_positive};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Validated arguments of `s(a, b)`: `b >= 1` and `gcd(a, b) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumArgs {
    a: BigInt,
    b: BigInt,
}

impl SumArgs {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        require_positive(&b)?;
        require_coprime(&a, &b)?;
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }
}

/// Validated arguments of `r_n(a, b)`: `n >= 0`, `b >= 1`, `gcd(a, b) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadArgs {
    n: BigInt,
    a: BigInt,
    b: BigInt,
}

impl RadArgs {
    pub fn new(n: impl Into<BigInt>, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (n, a, b) = (n.into(), a.into(), b.into());
        if n.is_negative() {
            return Err(Error::NegativeShift(n));
        }
        require_positive(&b)?;
        require_coprime(&a, &b)?;
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }
}

/// The sawtooth `((x))`: `{x} - 1/2` off the integers, `0` on them.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::zero();
    }
    let half = Rational::reduce(BigInt::one(), BigInt::from(2));
    x.fract() - half
}

/// Indicator of `a | n`.
pub fn chi(a: &BigInt, n: &BigInt) -> Result<u8> {
    if !a.is_positive() {
        return Err(Error::NonPositiveArgument(a.clone()));
    }
    Ok(u8::from(n.mod_floor(a).is_zero()))
}

/// `s(a, b)` by the defining sum.
pub fn dedekind_naive(args: &SumArgs) -> Result<Rational> {
    let b = modulus_u64(&args.b)?;
    let a = args
        .a
        .mod_floor(&args.b)
        .to_u64()
        .expect("residue below modulus");
    Ok(defining_sum(a, 0, b))
}

/// `r_n(a, b)` by the defining sum.
pub fn rademacher_naive(args: &RadArgs) -> Result<Rational> {
    let b = modulus_u64(&args.b)?;
    let a = args
        .a
        .mod_floor(&args.b)
        .to_u64()
        .expect("residue below modulus");
    let n = args
        .n
        .mod_floor(&args.b)
        .to_u64()
        .expect("residue below modulus");
    Ok(defining_sum(a, n, b))
}

fn modulus_u64(b: &BigInt) -> Result<u64> {
    b.to_u64()
        .filter(|&b| b < (1 << 62))
        .ok_or_else(|| Error::ModulusTooLarge(b.clone()))
}

/// `sum_{k=0}^{b-1} (((k a + n) / b)) ((k / b))` for residues `a, n < b`.
///
/// The `k = 0` term vanishes. For `1 <= k < b` the second factor is
/// `(2k - b) / 2b`, and the first is `(2r - b) / 2b` with `r = (k a + n) mod b`
/// unless `r = 0`, where it vanishes. The numerators are accumulated over the
/// common denominator `4 b^2`.
pub(crate) fn defining_sum(a: u64, n: u64, b: u64) -> Rational {
    debug_assert!(a < b.max(1) && n < b.max(1));
    let bi = i128::from(b);
    let mut acc: i128 = 0;
    let mut spill = BigInt::zero();
    let mut r = n;
    for k in 1..b {
        r += a;
        if r >= b {
            r -= b;
        }
        if r == 0 {
            continue;
        }
        let term = (2 * i128::from(r) - bi) * (2 * i128::from(k) - bi);
        acc = match acc.checked_add(term) {
            Some(v) => v,
            None => {
                spill += acc;
                term
            }
        };
    }
    spill += acc;
    let den = BigInt::from(4) * BigInt::from(b) * BigInt::from(b);
    Rational::reduce(spill, den)
}

/// `s(a, b)` by the reciprocity recursion.
///
/// With `a` reduced into `[0, b)`, a zero residue forces `b = 1` and the sum
/// is empty. Otherwise `s(a, b) = R(a, b) - s(b mod a, a)` where `R` is the
/// reciprocity right-hand side, and the recursion follows the Euclidean
/// algorithm on `(a, b)`.
pub fn dedekind_fast(args: &SumArgs) -> Result<Rational> {
    let mut b = args.b.clone();
    let mut a = args.a.mod_floor(&b);
    // Signed sum of R(a_i, b_i) over the Euclidean chain, kept over a common
    // denominator and reduced once at the end.
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    let mut negate = false;
    while !a.is_zero() {
        // R(a, b) = (a^2 + b^2 + 1 - 3ab) / 12ab
        let rn = &a * &a + &b * &b + 1u32 - BigInt::from(3) * &a * &b;
        let rd = BigInt::from(12) * &a * &b;
        let rn = if negate { -rn } else { rn };
        let g = den.gcd(&rd);
        let lcm = &den / &g * &rd;
        num = num * (&rd / &g) + rn * (&den / &g);
        den = lcm;
        negate = !negate;
        let next = b.mod_floor(&a);
        b = std::mem::replace(&mut a, next);
    }
    debug_assert!(b.is_one());
    Ok(Rational::reduce(num, den))
}

/// `-1/4 + (a/b + 1/(ab) + b/a) / 12`, the closed form of `s(a, b) + s(b, a)`.
pub fn dedekind_reciprocity_rhs(a: &BigInt, b: &BigInt) -> Result<Rational> {
    for x in [a, b] {
        if !x.is_positive() {
            return Err(Error::NonPositiveArgument(x.clone()));
        }
    }
    require_coprime(a, b)?;
    let q = |p: BigInt, r: BigInt| Rational::reduce(p, r);
    let ab = a * b;
    let bracket = q(a.clone(), b.clone()) + q(BigInt::one(), ab) + q(b.clone(), a.clone());
    Ok(q(BigInt::one(), BigInt::from(12)) * bracket - q(BigInt::one(), BigInt::from(4)))
}

/// Closed form of `r_n(a, b) + r_n(b, a)` for `1 <= n <= a + b`:
///
/// ```text
/// n^2/(2ab) - (n/2)(1/a + 1/b + 1/(ab)) + (b/a + a/b + 1/(ab))/12
///   + (((a' n / b)) + ((b' n / a)) + ((n / a)) + ((n / b)))/2
///   + (1 + chi_a(n) + chi_b(n))/4
/// ```
///
/// where `a' = a^{-1} mod b` and `b' = b^{-1} mod a`. An inverse modulo 1 is
/// taken as 0; its sawtooth term vanishes either way.
pub fn rademacher_reciprocity_rhs(n: &BigInt, a: &BigInt, b: &BigInt) -> Result<Rational> {
    for x in [a, b] {
        if !x.is_positive() {
            return Err(Error::NonPositiveArgument(x.clone()));
        }
    }
    require_coprime(a, b)?;
    let max = a + b;
    if *n < BigInt::one() || *n > max {
        return Err(Error::ShiftOutOfRange { n: n.clone(), max });
    }

    let q = |p: &BigInt, r: &BigInt| Rational::reduce(p.clone(), r.clone());
    let one = BigInt::one();
    let two = BigInt::from(2);
    let ab = a * b;
    let inv = |x: &BigInt, m: &BigInt| -> Result<BigInt> {
        if m.is_one() {
            Ok(BigInt::zero())
        } else {
            mod_inverse(x, m)
        }
    };
    let a_inv = inv(a, b)?;
    let b_inv = inv(b, a)?;

    let quadratic = q(&(n * n), &(&two * &ab));
    let linear = q(n, &two) * (q(&one, a) + q(&one, b) + q(&one, &ab));
    let constant = q(&one, &BigInt::from(12)) * (q(b, a) + q(a, b) + q(&one, &ab));
    let saws = sawtooth(&q(&(&a_inv * n), b))
        + sawtooth(&q(&(&b_inv * n), a))
        + sawtooth(&q(n, a))
        + sawtooth(&q(n, b));
    let indicators = 1 + u32::from(chi(a, n)?) + u32::from(chi(b, n)?);

    Ok(quadratic - linear
        + constant
        + q(&one, &two) * saws
        + q(&BigInt::from(indicators), &BigInt::from(4)))
}
