//! Exact evaluation of Dedekind sums and Dedekind-Rademacher sums, with
//! checkers for their reciprocity laws and for the divisibility conditions
//! that equal sums impose on their arguments.

pub mod arith;
pub mod error;
pub mod rational;
pub mod sums;
pub mod theorems;

pub use error::{Error, Result};
pub use rational::Rational;
pub use sums::{
    chi, dedekind_fast, dedekind_naive, dedekind_reciprocity_rhs, rademacher_naive,
    rademacher_reciprocity_rhs, sawtooth, RadArgs, SumArgs,
};
