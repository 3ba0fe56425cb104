//! Command-line harness: evaluation, reciprocity checks, level sets, theorem
//! scans, census runs and benchmarks.

pub mod bench;
pub mod output;

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use dedekind_core::theorems::{
    self, census, counterexample_fixtures, level_sets, scan_theorem1, scan_theorem3,
    verify_corollary1, verify_corollary2, TheoremReport, Verdict,
};
use dedekind_core::{
    arith, dedekind_fast, dedekind_naive, dedekind_reciprocity_rhs, rademacher_naive,
    rademacher_reciprocity_rhs, RadArgs, Rational, SumArgs,
};

use crate::bench::{run_bench, BenchConfig, DEFAULT_NAIVE_MAX_BITS};
use crate::output::{emit, Format};

pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VIOLATION: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Domain {
        context: String,
        source: dedekind_core::Error,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain { .. } | CliError::Io(_) => EXIT_DOMAIN,
        }
    }
}

trait Context<T> {
    fn context(self, f: impl FnOnce() -> String) -> Result<T, CliError>;
}

impl<T> Context<T> for dedekind_core::Result<T> {
    fn context(self, f: impl FnOnce() -> String) -> Result<T, CliError> {
        self.map_err(|source| CliError::Domain {
            context: f(),
            source,
        })
    }
}

/// Whether every check performed by a command came out as expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failed,
}

impl Outcome {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Outcome::Success
        } else {
            Outcome::Failed
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dedekind",
    version,
    about = "Exact Dedekind and Dedekind-Rademacher sums"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate s(a, b).
    #[command(name = "eval-s", allow_negative_numbers = true)]
    EvalS {
        a: BigInt,
        b: BigInt,
        /// Use the O(b) defining sum instead of the reciprocity recursion.
        #[arg(long)]
        naive: bool,
    },

    /// Evaluate r_n(a, b).
    #[command(name = "eval-r", allow_negative_numbers = true)]
    EvalR { n: BigInt, a: BigInt, b: BigInt },

    /// Compare s(a, b) + s(b, a) with its closed form.
    #[command(name = "recip-check", allow_negative_numbers = true)]
    RecipCheck { a: BigInt, b: BigInt },

    /// Compare r_n(a, b) + r_n(b, a) with its closed form.
    #[command(name = "recip-check-r", allow_negative_numbers = true)]
    RecipCheckR { n: BigInt, a: BigInt, b: BigInt },

    /// Level sets of x -> s(x, b) over the units mod b.
    Classes { b: u64 },

    /// Number of units x mod b with s(x, b) = c.
    Count {
        b: u64,
        /// Target value as `p/q` or `p`.
        #[arg(allow_hyphen_values = true)]
        c: Rational,
    },

    /// Run a verification scan.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },

    /// Per-modulus level-set statistics.
    Census(RangeArgs),

    /// Time the defining sum against the reciprocity recursion.
    Bench {
        #[arg(long)]
        bits: u32,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest bit size at which the defining sum is still timed.
        #[arg(long, default_value_t = DEFAULT_NAIVE_MAX_BITS)]
        naive_max_bits: u32,
    },
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long, default_value_t = 1)]
    pub b_min: u64,
    #[arg(long)]
    pub b_max: u64,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Equal s-values force b | (1 - a1 a2)(a1 - a2).
    Thm1(RangeArgs),
    /// Equal r_n-values force b | (6n^2 + 1 - a1 a2)(a2 - a1).
    Thm3 {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long)]
        n_max: u64,
    },
    /// Prime-modulus criterion for s, both directions.
    Cor1 {
        #[arg(long)]
        p_max: u64,
    },
    /// Prime-modulus criterion for r_n, necessary direction.
    Cor2 {
        #[arg(long)]
        p_max: u64,
        #[arg(long)]
        n_max: u64,
    },
    /// The two converse counterexamples.
    Fixtures,
}

#[derive(Serialize)]
struct EvalRow {
    a: String,
    b: String,
    value: Rational,
}

#[derive(Serialize)]
struct EvalRRow {
    n: String,
    a: String,
    b: String,
    value: Rational,
}

#[derive(Serialize)]
struct RecipRow {
    a: String,
    b: String,
    lhs: Rational,
    rhs: Rational,
    equal: bool,
}

#[derive(Serialize)]
struct RecipRRow {
    n: String,
    a: String,
    b: String,
    lhs: Rational,
    rhs: Rational,
    equal: bool,
}

#[derive(Serialize)]
struct ClassRow {
    value: Rational,
    size: usize,
    members: String,
}

#[derive(Serialize)]
struct CountRow {
    b: u64,
    c: Rational,
    count: usize,
    solutions: String,
}

#[derive(Serialize)]
struct Thm1Row {
    b: u64,
    a1: u64,
    a2: u64,
    s1: Rational,
    s2: Rational,
    sums_equal: bool,
    divisible: bool,
    verdict: Verdict,
}

#[derive(Serialize)]
struct Thm3Row {
    n: u64,
    b: u64,
    a1: u64,
    a2: u64,
    s1: Rational,
    s2: Rational,
    sums_equal: bool,
    divisible: bool,
    verdict: Verdict,
}

#[derive(Serialize)]
struct PrimeRow {
    p: u64,
    holds: bool,
}

#[derive(Serialize)]
struct PrimeShiftRow {
    p: u64,
    n: u64,
    holds: bool,
}

/// Census row with the external column names.
#[derive(Serialize)]
pub struct CensusCsvRow {
    pub b: u64,
    pub r: u32,
    pub phi: usize,
    pub num_classes: usize,
    pub min_class: usize,
    pub max_class: usize,
}

impl From<theorems::CensusRow> for CensusCsvRow {
    fn from(row: theorems::CensusRow) -> Self {
        Self {
            b: row.b,
            r: row.r,
            phi: row.unit_count,
            num_classes: row.num_classes,
            min_class: row.min_class_size,
            max_class: row.max_class_size,
        }
    }
}

impl From<&TheoremReport> for Thm1Row {
    fn from(r: &TheoremReport) -> Self {
        Self {
            b: r.b,
            a1: r.a1,
            a2: r.a2,
            s1: r.s1.clone(),
            s2: r.s2.clone(),
            sums_equal: r.sums_equal,
            divisible: r.divisibility_holds,
            verdict: r.verdict,
        }
    }
}

impl From<&TheoremReport> for Thm3Row {
    fn from(r: &TheoremReport) -> Self {
        Self {
            n: r.n.unwrap_or(0),
            b: r.b,
            a1: r.a1,
            a2: r.a2,
            s1: r.s1.clone(),
            s2: r.s2.clone(),
            sums_equal: r.sums_equal,
            divisible: r.divisibility_holds,
            verdict: r.verdict,
        }
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn check_range(range: &RangeArgs) -> Result<(), CliError> {
    if range.b_min == 0 || range.b_min > range.b_max {
        return Err(CliError::Usage(format!(
            "need 1 <= --b-min <= --b-max, got [{}, {}]",
            range.b_min, range.b_max
        )));
    }
    Ok(())
}

/// Runs one parsed command, writing its report to `out` and progress
/// summaries to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::EvalS { a, b, naive } => {
            let ctx = || format!("eval-s {a} {b}");
            let args = SumArgs::new(a.clone(), b.clone()).context(ctx)?;
            let value = if *naive {
                dedekind_naive(&args)
            } else {
                dedekind_fast(&args)
            }
            .context(ctx)?;
            if format == Format::Table {
                writeln!(out, "{value}")?;
            } else {
                let row = EvalRow {
                    a: a.to_string(),
                    b: b.to_string(),
                    value,
                };
                emit(&[row], format, out)?;
            }
            Ok(Outcome::Success)
        }
        Command::EvalR { n, a, b } => {
            let ctx = || format!("eval-r {n} {a} {b}");
            let args = RadArgs::new(n.clone(), a.clone(), b.clone()).context(ctx)?;
            let value = rademacher_naive(&args).context(ctx)?;
            if format == Format::Table {
                writeln!(out, "{value}")?;
            } else {
                let row = EvalRRow {
                    n: n.to_string(),
                    a: a.to_string(),
                    b: b.to_string(),
                    value,
                };
                emit(&[row], format, out)?;
            }
            Ok(Outcome::Success)
        }
        Command::RecipCheck { a, b } => {
            let ctx = || format!("recip-check {a} {b}");
            let rhs = dedekind_reciprocity_rhs(a, b).context(ctx)?;
            let lhs = dedekind_naive(&SumArgs::new(a.clone(), b.clone()).context(ctx)?)
                .context(ctx)?
                + dedekind_naive(&SumArgs::new(b.clone(), a.clone()).context(ctx)?).context(ctx)?;
            let equal = lhs == rhs;
            let row = RecipRow {
                a: a.to_string(),
                b: b.to_string(),
                lhs,
                rhs,
                equal,
            };
            emit(&[row], format, out)?;
            Ok(Outcome::from_ok(equal))
        }
        Command::RecipCheckR { n, a, b } => {
            let ctx = || format!("recip-check-r {n} {a} {b}");
            let rhs = rademacher_reciprocity_rhs(n, a, b).context(ctx)?;
            let lhs =
                rademacher_naive(&RadArgs::new(n.clone(), a.clone(), b.clone()).context(ctx)?)
                    .context(ctx)?
                    + rademacher_naive(
                        &RadArgs::new(n.clone(), b.clone(), a.clone()).context(ctx)?,
                    )
                    .context(ctx)?;
            let equal = lhs == rhs;
            let row = RecipRRow {
                n: n.to_string(),
                a: a.to_string(),
                b: b.to_string(),
                lhs,
                rhs,
                equal,
            };
            emit(&[row], format, out)?;
            Ok(Outcome::from_ok(equal))
        }
        Command::Classes { b } => {
            if *b == 0 {
                return Err(CliError::Usage("modulus must be positive".into()));
            }
            let table = level_sets(*b);
            let rows: Vec<ClassRow> = table
                .entries
                .iter()
                .map(|(value, members)| ClassRow {
                    value: value.clone(),
                    size: members.len(),
                    members: join(members),
                })
                .collect();
            emit(&rows, format, out)?;
            Ok(Outcome::Success)
        }
        Command::Count { b, c } => {
            if *b == 0 {
                return Err(CliError::Usage("modulus must be positive".into()));
            }
            let table = level_sets(*b);
            let solutions = table.solutions(c);
            if format == Format::Table {
                writeln!(out, "{}", solutions.len())?;
            } else {
                let row = CountRow {
                    b: *b,
                    c: c.clone(),
                    count: solutions.len(),
                    solutions: join(solutions),
                };
                emit(&[row], format, out)?;
            }
            Ok(Outcome::Success)
        }
        Command::Verify { check } => run_verify(check, format, out, err),
        Command::Census(range) => {
            check_range(range)?;
            let rows: Vec<CensusCsvRow> = census(range.b_min, range.b_max)
                .context(|| format!("census [{}, {}]", range.b_min, range.b_max))?
                .into_iter()
                .map(CensusCsvRow::from)
                .collect();
            emit(&rows, format, out)?;
            let partitioned = rows.iter().all(|r| r.min_class <= r.max_class);
            Ok(Outcome::from_ok(partitioned))
        }
        Command::Bench {
            bits,
            trials,
            seed,
            naive_max_bits,
        } => {
            let records = run_bench(&BenchConfig {
                bits: *bits,
                trials: *trials,
                seed: *seed,
                naive_max_bits: *naive_max_bits,
            })?;
            emit(&records, format, out)?;
            let checksums: Vec<_> = records.iter().filter_map(|r| r.checksum.as_ref()).collect();
            Ok(Outcome::from_ok(checksums.windows(2).all(|w| w[0] == w[1])))
        }
    }
}

fn run_verify(
    check: &VerifyCommand,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Outcome, CliError> {
    match check {
        VerifyCommand::Thm1(range) => {
            check_range(range)?;
            let reports: Vec<TheoremReport> = (range.b_min..=range.b_max)
                .into_par_iter()
                .flat_map_iter(scan_theorem1)
                .collect();
            let rows: Vec<Thm1Row> = reports.iter().map(Thm1Row::from).collect();
            emit(&rows, format, out)?;
            summarize(err, "thm1", range, &reports)
        }
        VerifyCommand::Thm3 { range, n_max } => {
            check_range(range)?;
            let cases: Vec<(u64, u64)> = (0..=*n_max)
                .flat_map(|n| (range.b_min..=range.b_max).map(move |b| (n, b)))
                .collect();
            let reports: Vec<TheoremReport> = cases
                .into_par_iter()
                .flat_map_iter(|(n, b)| scan_theorem3(n, b))
                .collect();
            let rows: Vec<Thm3Row> = reports.iter().map(Thm3Row::from).collect();
            emit(&rows, format, out)?;
            summarize(err, "thm3", range, &reports)
        }
        VerifyCommand::Cor1 { p_max } => {
            let rows: Vec<PrimeRow> = (2..=*p_max)
                .filter(|&p| arith::is_prime(p))
                .map(|p| {
                    let holds = verify_corollary1(p).context(|| format!("verify cor1 p={p}"))?;
                    Ok(PrimeRow { p, holds })
                })
                .collect::<Result<_, CliError>>()?;
            emit(&rows, format, out)?;
            let failed = rows.iter().filter(|r| !r.holds).count();
            writeln!(
                err,
                "cor1: {} primes checked, {failed} failures",
                rows.len()
            )?;
            Ok(Outcome::from_ok(failed == 0))
        }
        VerifyCommand::Cor2 { p_max, n_max } => {
            let mut rows = Vec::new();
            for p in (2..=*p_max).filter(|&p| arith::is_prime(p)) {
                for n in 0..=*n_max {
                    let holds =
                        verify_corollary2(n, p).context(|| format!("verify cor2 p={p} n={n}"))?;
                    rows.push(PrimeShiftRow { p, n, holds });
                }
            }
            emit(&rows, format, out)?;
            let failed = rows.iter().filter(|r| !r.holds).count();
            writeln!(
                err,
                "cor2: {} (p, n) cases checked, {failed} failures",
                rows.len()
            )?;
            Ok(Outcome::from_ok(failed == 0))
        }
        VerifyCommand::Fixtures => {
            let fixtures = counterexample_fixtures();
            emit(&fixtures, format, out)?;
            Ok(Outcome::from_ok(fixtures.iter().all(|f| f.holds)))
        }
    }
}

fn summarize(
    err: &mut dyn Write,
    name: &str,
    range: &RangeArgs,
    reports: &[TheoremReport],
) -> Result<Outcome, CliError> {
    let bad = theorems::violations(reports);
    writeln!(
        err,
        "{name}: b in [{}, {}]: {} equal-sum pairs, {} violations",
        range.b_min,
        range.b_max,
        reports.len(),
        bad.len()
    )?;
    for v in &bad {
        writeln!(
            err,
            "violation: n={:?} b={} a1={} a2={}",
            v.n, v.b, v.a1, v.a2
        )?;
    }
    Ok(Outcome::from_ok(bad.is_empty()))
}
