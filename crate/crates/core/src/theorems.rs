//! Instance checks of the divisibility conditions forced by equal sums, the
//! prime-modulus corollaries, the two known converse counterexamples, and
//! level-set enumeration of `x -> s(x, b)` over the units mod `b`.
//!
//! All scans evaluate with the defining sums. The reciprocity-based fast
//! evaluator only enters through [`level_sets_with`] as a cross-check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    distinct_prime_factor_count, is_prime, require_coprime, require_positive, units,
};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sums::{
    dedekind_fast, dedekind_naive, defining_sum, rademacher_naive, RadArgs, SumArgs,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Violation,
}

/// Outcome for one unordered unit pair `a1 < a2` modulo `b`.
///
/// `n` is `None` for the classical sum and `Some(n)` for `r_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub b: u64,
    pub n: Option<u64>,
    pub a1: u64,
    pub a2: u64,
    pub s1: Rational,
    pub s2: Rational,
    pub sums_equal: bool,
    pub divisibility_holds: bool,
    pub verdict: Verdict,
}

impl TheoremReport {
    fn new(
        b: u64,
        n: Option<u64>,
        (a1, a2): (u64, u64),
        (s1, s2): (Rational, Rational),
        divisible: bool,
    ) -> Self {
        let sums_equal = s1 == s2;
        let verdict = if sums_equal && !divisible {
            Verdict::Violation
        } else {
            Verdict::Consistent
        };
        Self {
            b,
            n,
            a1,
            a2,
            s1,
            s2,
            sums_equal,
            divisibility_holds: divisible,
            verdict,
        }
    }

    pub fn is_violation(&self) -> bool {
        self.verdict == Verdict::Violation
    }
}

pub fn violations(reports: &[TheoremReport]) -> Vec<&TheoremReport> {
    reports.iter().filter(|r| r.is_violation()).collect()
}

fn check_pair(a1: &BigInt, a2: &BigInt, b: &BigInt) -> Result<()> {
    require_positive(b)?;
    require_coprime(a1, b)?;
    require_coprime(a2, b)
}

/// Whether `b | (1 - a1 a2)(a1 - a2)`.
pub fn thm1_divisibility(a1: &BigInt, a2: &BigInt, b: &BigInt) -> Result<bool> {
    check_pair(a1, a2, b)?;
    let product: BigInt = (1 - a1 * a2) * (a1 - a2);
    Ok(product.mod_floor(b).is_zero())
}

/// Whether `b | (6 n^2 + 1 - a1 a2)(a2 - a1)`.
pub fn thm3_divisibility(n: &BigInt, a1: &BigInt, a2: &BigInt, b: &BigInt) -> Result<bool> {
    if n.is_negative() {
        return Err(Error::NegativeShift(n.clone()));
    }
    check_pair(a1, a2, b)?;
    let product: BigInt = (6 * n * n + 1 - a1 * a2) * (a2 - a1);
    Ok(product.mod_floor(b).is_zero())
}

/// Groups the units mod `b` by value. Keys ascend; members ascend.
fn group_units(b: u64, value: impl Fn(u64) -> Rational) -> BTreeMap<Rational, Vec<u64>> {
    let mut classes: BTreeMap<Rational, Vec<u64>> = BTreeMap::new();
    for a in units(b) {
        classes.entry(value(a)).or_default().push(a);
    }
    classes
}

fn pair_reports(
    b: u64,
    n: Option<u64>,
    classes: &BTreeMap<Rational, Vec<u64>>,
    divisible: impl Fn(u64, u64) -> bool,
) -> Vec<TheoremReport> {
    let mut reports = Vec::new();
    for (value, members) in classes {
        for (i, &a1) in members.iter().enumerate() {
            for &a2 in &members[i + 1..] {
                let sums = (value.clone(), value.clone());
                reports.push(TheoremReport::new(b, n, (a1, a2), sums, divisible(a1, a2)));
            }
        }
    }
    reports.sort_by_key(|r| (r.a1, r.a2));
    reports
}

/// Reports every unit pair `a1 < a2` mod `b` with `s(a1, b) = s(a2, b)`.
pub fn scan_theorem1(b: u64) -> Vec<TheoremReport> {
    let classes = group_units(b, |a| defining_sum(a, 0, b));
    let bb = BigInt::from(b);
    pair_reports(b, None, &classes, |a1, a2| {
        thm1_divisibility(&a1.into(), &a2.into(), &bb).expect("units are coprime to b")
    })
}

/// Reports every unit pair `a1 < a2` mod `b` with `r_n(a1, b) = r_n(a2, b)`.
pub fn scan_theorem3(n: u64, b: u64) -> Vec<TheoremReport> {
    let shift = if b == 0 { 0 } else { n % b };
    let classes = group_units(b, |a| defining_sum(a, shift, b));
    let (nn, bb) = (BigInt::from(n), BigInt::from(b));
    pair_reports(b, Some(n), &classes, |a1, a2| {
        thm3_divisibility(&nn, &a1.into(), &a2.into(), &bb).expect("units are coprime to b")
    })
}

/// Checks both directions of the prime-modulus criterion: for units
/// `a1, a2` mod `p`, `s(a1, p) = s(a2, p)` exactly when `a1 = a2` or
/// `a1 a2 = 1 (mod p)`.
pub fn verify_corollary1(p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let values: Vec<Rational> = (1..p).map(|a| defining_sum(a, 0, p)).collect();
    let ok = (1..p).all(|a1| {
        (a1..p).all(|a2| {
            let equal = values[(a1 - 1) as usize] == values[(a2 - 1) as usize];
            let predicted = a1 == a2 || (a1 as u128 * a2 as u128) % p as u128 == 1;
            equal == predicted
        })
    });
    Ok(ok)
}

/// Necessary direction of the prime-modulus criterion for `r_n`: equal sums
/// imply `a1 = a2` or `a1 a2 = 1 + 6 n^2 (mod p)`. The converse is not checked.
pub fn verify_corollary2(n: u64, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = (1 + 6 * (n as u128 % p as u128).pow(2)) % p as u128;
    let classes = group_units(p, |a| defining_sum(a, n % p, p));
    Ok(classes.values().all(|members| {
        members.iter().enumerate().all(|(i, &a1)| {
            members[i + 1..]
                .iter()
                .all(|&a2| (a1 as u128 * a2 as u128) % p as u128 == target)
        })
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fixture {
    pub description: String,
    pub holds: bool,
}

/// Re-derives the two known failures of the converse: the divisibility
/// condition holds but the sums differ.
pub fn counterexample_fixtures() -> Vec<Fixture> {
    let q = |p: i64, r: i64| Rational::new(p, r).expect("nonzero denominator");
    let b = |x: i64| BigInt::from(x);

    let dedekind = || -> Result<bool> {
        let divisible = thm1_divisibility(&b(37), &b(33), &b(40))?;
        let s1 = dedekind_naive(&SumArgs::new(37, 40)?)?;
        let s2 = dedekind_naive(&SumArgs::new(33, 40)?)?;
        Ok(divisible && s1 == q(-13, 16) && s2 == q(-5, 16) && s1 != s2)
    };
    let rademacher = || -> Result<bool> {
        let divisible = thm3_divisibility(&b(6), &b(3), &b(11), &b(23))?;
        let r1 = rademacher_naive(&RadArgs::new(6, 3, 23)?)?;
        let r2 = rademacher_naive(&RadArgs::new(6, 11, 23)?)?;
        Ok(divisible && r1 == q(-3, 92) && r2 == q(43, 92) && r1 != r2)
    };

    vec![
        Fixture {
            description: "b=40 a1=37 a2=33: 40 | (1-a1a2)(a1-a2) but s(37,40)=-13/16 != -5/16=s(33,40)".into(),
            holds: dedekind().unwrap_or(false),
        },
        Fixture {
            description: "n=6 b=23 a1=3 a2=11: 23 | (6n^2+1-a1a2)(a2-a1) but r_6(3,23)=-3/92 != 43/92=r_6(11,23)".into(),
            holds: rademacher().unwrap_or(false),
        },
    ]
}

/// Which evaluator computes the sums behind a level-set table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluator {
    Naive,
    Fast,
}

/// Partition of the units mod `b` by the value of `s(x, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSetTable {
    pub b: u64,
    pub entries: BTreeMap<Rational, Vec<u64>>,
}

impl LevelSetTable {
    pub fn unit_count(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn class_of(&self, x: u64) -> Option<&Rational> {
        self.entries
            .iter()
            .find(|(_, members)| members.binary_search(&x).is_ok())
            .map(|(value, _)| value)
    }

    pub fn solutions(&self, c: &Rational) -> &[u64] {
        self.entries.get(c).map_or(&[], Vec::as_slice)
    }
}

pub fn level_sets(b: u64) -> LevelSetTable {
    level_sets_with(b, Evaluator::Naive)
}

pub fn level_sets_with(b: u64, evaluator: Evaluator) -> LevelSetTable {
    let entries = match evaluator {
        Evaluator::Naive => group_units(b, |a| defining_sum(a, 0, b)),
        Evaluator::Fast => group_units(b, |a| {
            dedekind_fast(&SumArgs::new(a, b).expect("unit")).expect("fast path is total")
        }),
    };
    LevelSetTable { b, entries }
}

/// Number of units `x` mod `b` with `s(x, b) = c`.
pub fn count_solutions(b: u64, c: &Rational) -> usize {
    level_sets(b).solutions(c).len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub b: u64,
    pub r: u32,
    pub unit_count: usize,
    pub num_classes: usize,
    pub min_class_size: usize,
    pub max_class_size: usize,
}

impl CensusRow {
    pub fn from_table(table: &LevelSetTable) -> Self {
        let sizes = table.entries.values().map(Vec::len);
        Self {
            b: table.b,
            r: distinct_prime_factor_count(table.b),
            unit_count: table.unit_count(),
            num_classes: table.entries.len(),
            min_class_size: sizes.clone().min().unwrap_or(0),
            max_class_size: sizes.max().unwrap_or(0),
        }
    }
}

/// One row per modulus in `[b_min, b_max]`, ascending. Moduli are
/// evaluated in parallel; the output order does not depend on scheduling.
pub fn census(b_min: u64, b_max: u64) -> Result<Vec<CensusRow>> {
    if b_min == 0 || b_min > b_max {
        return Err(Error::InvalidRange {
            min: b_min,
            max: b_max,
        });
    }
    Ok((b_min..=b_max)
        .into_par_iter()
        .map(|b| CensusRow::from_table(&level_sets(b)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn q(p: i64, r: i64) -> Rational {
        Rational::new(p, r).unwrap()
    }

    #[test]
    fn thm1_divisibility_examples() {
        assert!(thm1_divisibility(&big(37), &big(33), &big(40)).unwrap());
        assert!(thm1_divisibility(&big(9), &big(9), &big(40)).unwrap());
        assert!(thm1_divisibility(&big(3), &big(5), &big(7)).unwrap());
        assert!(!thm1_divisibility(&big(1), &big(3), &big(7)).unwrap());
        assert!(matches!(
            thm1_divisibility(&big(2), &big(3), &big(4)),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn thm3_divisibility_examples() {
        assert!(thm3_divisibility(&big(6), &big(3), &big(11), &big(23)).unwrap());
        assert!(thm3_divisibility(&big(4), &big(5), &big(5), &big(9)).unwrap());
        assert!(thm3_divisibility(&big(0), &big(37), &big(33), &big(40)).unwrap());
        assert!(thm3_divisibility(&big(-1), &big(1), &big(1), &big(2)).is_err());
        assert!(thm3_divisibility(&big(1), &big(1), &big(4), &big(6)).is_err());
    }

    #[test]
    fn scan_theorem1_examples() {
        assert!(violations(&scan_theorem1(40)).is_empty());
        assert!(scan_theorem1(1).is_empty());
        // s-values of the four units mod 12 are pairwise distinct
        assert!(scan_theorem1(12).is_empty());
        let r40 = scan_theorem1(40);
        assert!(r40.iter().all(|r| r.sums_equal && r.a1 < r.a2));
        assert!(r40
            .windows(2)
            .all(|w| (w[0].a1, w[0].a2) < (w[1].a1, w[1].a2)));
    }

    #[test]
    fn scan_theorem3_examples() {
        assert!(violations(&scan_theorem3(6, 23)).is_empty());
        assert!(scan_theorem3(3, 1).is_empty());
        for b in 1..60 {
            let s = scan_theorem1(b);
            let r = scan_theorem3(0, b);
            assert_eq!(s.len(), r.len());
            for (x, y) in s.iter().zip(&r) {
                assert_eq!(
                    (x.a1, x.a2, &x.s1, x.verdict),
                    (y.a1, y.a2, &y.s1, y.verdict)
                );
            }
        }
    }

    #[test]
    fn report_verdict_invariant() {
        let r = TheoremReport::new(7, None, (1, 2), (q(1, 2), q(1, 2)), false);
        assert!(r.is_violation());
        let r = TheoremReport::new(7, None, (1, 2), (q(1, 2), q(1, 3)), false);
        assert_eq!(r.verdict, Verdict::Consistent);
        let r = TheoremReport::new(7, None, (1, 2), (q(1, 2), q(1, 2)), true);
        assert_eq!(r.verdict, Verdict::Consistent);
    }

    #[test]
    fn corollary1_examples() {
        assert!(verify_corollary1(23).unwrap());
        assert!(verify_corollary1(2).unwrap());
        assert!(verify_corollary1(5).unwrap());
        assert_eq!(verify_corollary1(15), Err(Error::NotPrime(15)));
        assert_eq!(verify_corollary1(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn corollary2_examples() {
        assert!(verify_corollary2(6, 23).unwrap());
        assert!(verify_corollary2(0, 2).unwrap());
        assert!(verify_corollary2(1, 9).is_err());
    }

    #[test]
    fn fixtures_hold() {
        let f = counterexample_fixtures();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|x| x.holds), "{f:?}");
    }

    #[test]
    fn level_set_examples() {
        let t5 = level_sets(5);
        let classes: Vec<&Vec<u64>> = t5.entries.values().collect();
        assert_eq!(classes, [&vec![4], &vec![2, 3], &vec![1]]);
        assert_eq!(
            t5.entries.keys().cloned().collect::<Vec<_>>(),
            [q(-1, 5), q(0, 1), q(1, 5)]
        );

        assert!(level_sets(1).entries.is_empty());

        let t40 = level_sets(40);
        assert_eq!(t40.class_of(37), Some(&q(-13, 16)));
        assert_eq!(t40.class_of(33), Some(&q(-5, 16)));
        assert_eq!(t40.unit_count(), 16);
    }

    #[test]
    fn count_examples() {
        assert!(count_solutions(40, &q(-13, 16)) >= 1);
        assert!(level_sets(40).solutions(&q(-13, 16)).contains(&37));
        // s(2,5) = s(3,5) = 0
        assert_eq!(count_solutions(5, &Rational::zero()), 2);
        assert_eq!(count_solutions(5, &q(7, 3)), 0);
    }

    #[test]
    fn census_examples() {
        let row = &census(40, 40).unwrap()[0];
        assert_eq!((row.r, row.unit_count), (2, 16));

        let row = &census(1, 1).unwrap()[0];
        assert_eq!(
            (
                row.unit_count,
                row.num_classes,
                row.min_class_size,
                row.max_class_size
            ),
            (0, 0, 0, 0)
        );

        let row = &census(23, 23).unwrap()[0];
        assert_eq!((row.r, row.num_classes), (1, 12));
        assert_eq!((row.min_class_size, row.max_class_size), (1, 2));

        assert!(census(0, 3).is_err());
        assert!(census(5, 3).is_err());
    }
}
