//! Exact rational numbers over arbitrary-precision integers.
//!
//! Every value is kept in canonical form: the denominator is positive and
//! shares no factor with the numerator, and zero is `0/1`. Structural
//! equality and hashing therefore coincide with numeric equality, which is
//! what level-set grouping relies on.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A fraction `num/den` in lowest terms with `den >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    /// Builds the canonical form of `num/den`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let num = num.into();
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// Caller guarantees `den != 0`.
    pub(crate) fn reduce(mut num: BigInt, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        let r = Self { num, den };
        r.debug_check();
        r
    }

    #[inline]
    fn debug_check(&self) {
        debug_assert!(self.den.is_positive());
        debug_assert!(self.num.gcd(&self.den).is_one());
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Greatest integer not exceeding `self`, rounding toward negative infinity.
    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&self.den)
    }

    /// `self - floor(self)`, always in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        Rational {
            num: self.num.mod_floor(&self.den),
            den: self.den.clone(),
        }
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Multiplies by an integer.
    pub fn scale(&self, k: &BigInt) -> Rational {
        Self::reduce(&self.num * k, self.den.clone())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q` with optional surrounding whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            None => t
                .parse::<BigInt>()
                .map(Self::from_integer)
                .map_err(|_| bad()),
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Self::new(p, q)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn add(self, rhs: &'a Rational) -> Rational {
        if self.den == rhs.den {
            return Rational::reduce(&self.num + &rhs.num, self.den.clone());
        }
        Rational::reduce(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn sub(self, rhs: &'a Rational) -> Rational {
        if self.den == rhs.den {
            return Rational::reduce(&self.num - &rhs.num, self.den.clone());
        }
        Rational::reduce(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn mul(self, rhs: &'a Rational) -> Rational {
        Rational::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, r: i64) -> Rational {
        Rational::new(p, r).unwrap()
    }

    #[test]
    fn make_reduces_and_normalizes_sign() {
        assert_eq!(q(6, 4).to_string(), "3/2");
        let z = q(0, 7);
        assert_eq!((z.numer().clone(), z.denom().clone()), (0.into(), 1.into()));
        assert_eq!(q(-13, -16).to_string(), "13/16");
        assert_eq!(q(3, -9).to_string(), "-1/3");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(Rational::new(1, 0), Err(Error::ZeroDenominator));
        assert_eq!(q(1, 2).checked_div(&q(0, 5)), Err(Error::DivisionByZero));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(q(1, 3) + q(1, 6), q(1, 2));
        assert_eq!(q(-13, 16) * q(0, 1), Rational::zero());
        assert_eq!(q(-13, 16) - q(-5, 16), q(-1, 2));
        assert_eq!(q(3, 4).checked_div(&q(-3, 8)).unwrap(), q(-2, 1));
    }

    #[test]
    fn floor_rounds_toward_negative_infinity() {
        assert_eq!(q(7, 2).floor(), 3.into());
        assert_eq!(q(-1, 4).floor(), (-1).into());
        assert_eq!(q(5, 1).floor(), 5.into());
        assert_eq!(q(-1, 4).fract(), q(3, 4));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(q(10, 5).to_string(), "2");
        assert_eq!("-13/16".parse::<Rational>().unwrap(), q(-13, 16));
        assert_eq!(" 4/-6 ".parse::<Rational>().unwrap(), q(-2, 3));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering() {
        assert!(q(-13, 16) < q(-5, 16));
        assert!(q(1, 3) > q(1, 4));
        assert_eq!(q(2, 4).cmp(&q(1, 2)), Ordering::Equal);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(p, r)| q(p, r))
    }

    fn is_canonical(x: &Rational) -> bool {
        x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_rational(), y in arb_rational(), z in arb_rational()) {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!((&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!((&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert!((&x + &(-&x)).is_zero());
            for r in [&x + &y, &x - &y, &x * &y] {
                prop_assert!(is_canonical(&r));
            }
            if !y.is_zero() {
                let d = x.checked_div(&y).unwrap();
                prop_assert!(is_canonical(&d));
                prop_assert_eq!(&d * &y, x.clone());
            }
        }

        #[test]
        fn floor_brackets_value(x in arb_rational()) {
            let f = Rational::from_integer(x.floor());
            prop_assert!(f <= x);
            prop_assert!(x < &f + &Rational::one());
            let fr = x.fract();
            prop_assert!(fr >= Rational::zero() && fr < Rational::one());
        }

        #[test]
        fn display_round_trips(x in arb_rational()) {
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
    }
}
