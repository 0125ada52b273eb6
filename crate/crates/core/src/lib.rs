//! Degree, dependency-length and crossing statistics of trees placed on a line.
//!
//! A dependency tree is an undirected labeled tree whose vertices are the
//! words of a sentence; a [`LinearArrangement`] assigns every vertex a
//! position `1..=n`. This crate computes
//!
//! * degree moments (hubiness) of a [`Tree`],
//! * edge lengths, their moments and the number of crossing edge pairs under
//!   an arrangement,
//! * closed-form lower and upper bounds relating these quantities,
//! * the exact distribution of edge length under uniformly random
//!   arrangements plus a seeded Monte Carlo estimator,
//! * constructive extremal arrangements and exhaustive oracles used to
//!   certify the bounds on small instances.
//!
//! Every moment and bound is an exact [`Rational`]; floating point is only
//! used for Monte Carlo summaries.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arrangement;
pub mod baseline;
pub mod bounds;
pub mod oracles;
mod permutations;
pub mod tree;
pub mod verify;

pub use arrangement::{
    compose_reverse, crossing_count, length_stats, ArrangementError, CrossingStats, LengthStats,
    LinearArrangement,
};
pub use baseline::{analytic_baseline, MonteCarloReport, RandomBaseline};
pub use bounds::{bounds_report, BoundsError, BoundsReport};
pub use oracles::{ExhaustiveOracle, OracleError, OracleResult};
pub use permutations::Permutations;
pub use tree::{degree_stats, DegreeStats, Tree, TreeError};

/// Exact rational number used for every moment and bound.
pub type Rational = num_rational::Ratio<i64>;

/// `n(n-1)/2`: number of unordered pairs out of `n`, and the largest total
/// length a non-crossing arrangement of `n` vertices can reach.
pub const fn pairs(n: u64) -> u64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

pub(crate) fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

pub(crate) fn int(value: i64) -> Rational {
    Rational::from_integer(value)
}
