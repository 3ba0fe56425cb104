//! Timing of the defining-sum evaluator against the reciprocity recursion.
//!
//! Inputs come from `ChaCha8Rng::seed_from_u64(seed)`: for each trial, `b` is
//! drawn uniformly from `[2^(bits-1), 2^bits)` and `a` uniformly from
//! `[1, b)`, redrawing `a` until `gcd(a, b) = 1`. The same seed therefore
//! yields the same batch on every machine, and so the same checksums.
//!
//! The checksum of a batch is the integer `sum of 6 b s(a, b)` over its pairs.

use std::time::{Duration, Instant};

use dedekind_core::{dedekind_fast, dedekind_naive, SumArgs};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::CliError;

/// Largest bit size for which the defining sum is timed by default.
pub const DEFAULT_NAIVE_MAX_BITS: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ran,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub method: Method,
    pub b_bits: u32,
    pub trials: usize,
    pub status: Status,
    /// Mean wall time per evaluation; `None` when skipped.
    pub mean_ns: Option<u128>,
    /// `None` when skipped.
    #[serde(serialize_with = "as_decimal")]
    pub checksum: Option<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub bits: u32,
    pub trials: usize,
    pub seed: u64,
    pub naive_max_bits: u32,
}

pub fn random_batch(bits: u32, trials: usize, seed: u64) -> Vec<(u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = 1u64 << (bits - 1);
    let hi = if bits == 64 { u64::MAX } else { 1u64 << bits };
    (0..trials)
        .map(|_| {
            let b = rng.gen_range(lo..hi);
            loop {
                let a = rng.gen_range(1..b);
                if a.gcd(&b) == 1 {
                    break (a, b);
                }
            }
        })
        .collect()
}

fn as_decimal<S: serde::Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// Evaluates every pair once, returning the total time and the checksum.
pub fn time_batch(pairs: &[(u64, u64)], method: Method) -> (Duration, BigInt) {
    let args: Vec<SumArgs> = pairs
        .iter()
        .map(|&(a, b)| SumArgs::new(a, b).expect("batch pairs are coprime"))
        .collect();
    let mut values = Vec::with_capacity(args.len());
    let start = Instant::now();
    for arg in &args {
        let value = match method {
            Method::Naive => dedekind_naive(arg),
            Method::Fast => dedekind_fast(arg),
        };
        values.push(value.expect("validated arguments"));
    }
    let elapsed = start.elapsed();
    let checksum = values
        .iter()
        .zip(pairs)
        .map(|(v, &(_, b))| {
            let scaled = v.scale(&BigInt::from(6 * u128::from(b)));
            debug_assert!(scaled.is_integer());
            scaled.numer().clone()
        })
        .sum();
    (elapsed, checksum)
}

pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>, CliError> {
    if config.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if !(2..=62).contains(&config.bits) {
        return Err(CliError::Usage("--bits must lie in [2, 62]".into()));
    }
    let pairs = random_batch(config.bits, config.trials, config.seed);
    let record = |method| {
        let (elapsed, checksum) = time_batch(&pairs, method);
        BenchRecord {
            method,
            b_bits: config.bits,
            trials: config.trials,
            status: Status::Ran,
            mean_ns: Some(elapsed.as_nanos() / config.trials as u128),
            checksum: Some(checksum),
        }
    };
    let naive = if config.bits <= config.naive_max_bits {
        record(Method::Naive)
    } else {
        BenchRecord {
            method: Method::Naive,
            b_bits: config.bits,
            trials: config.trials,
            status: Status::Skipped,
            mean_ns: None,
            checksum: None,
        }
    };
    Ok(vec![naive, record(Method::Fast)])
}
