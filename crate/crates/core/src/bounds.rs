//! Closed-form bounds tying hubiness, mean edge length and crossings
//! together.
//!
//! Length bounds:
//!
//! * [`dmin_lower_star_ensemble`]: every vertex and its neighbours form a
//!   star; each star arranged optimally on its own gives a lower bound on the
//!   minimum mean length.
//! * [`dmin_lower_hubiness`]: a relaxation of the previous one that only
//!   needs the second degree moment.
//! * [`star_dmin_exact`]: the true minimum for star trees.
//! * [`dmax_noncrossing`]: the maximum mean length among non-crossing
//!   arrangements.
//!
//! Crossing bounds, all upper bounds on the number of crossing pairs:
//!
//! * [`cmax_simple`]: all pairs of edges,
//! * [`cmax_from_uncrossable`]: pairs of edges that are not of length `1` or
//!   `n - 1`,
//! * [`cmax_from_length_moments`]: half the sum over edges of
//!   [`arc_crossing_capacity`],
//! * [`cpairs_from_degrees`]: pairs of edges not sharing a vertex.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arrangement::{
    crossing_count, length_stats, ArrangementError, CrossingStats, LengthStats, LinearArrangement,
};
use crate::baseline::analytic_baseline;
use crate::tree::{degree_stats, DegreeStats, Tree};
use crate::{int, pairs, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("degree sequence sums to {sum}, a tree on {n} vertices needs {expected}")]
    InvalidDegreeSequence { n: usize, sum: u64, expected: u64 },
    #[error("bounds need at least two vertices, got {0}")]
    TooSmall(usize),
    #[error("{name} = {value} is outside {min}..={max}")]
    OutOfRange {
        name: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

fn require_n(n: usize) -> Result<(), BoundsError> {
    if n < 2 {
        return Err(BoundsError::TooSmall(n));
    }
    Ok(())
}

/// Lower bound on the minimum mean edge length from the star ensemble:
///
/// `1/(2(n-1)) * sum_i [ floor(k_i/2)(floor(k_i/2) + 1) + ((k_i + 1)/2)(k_i mod 2) ]`
pub fn dmin_lower_star_ensemble(degrees: &[u32]) -> Result<Rational, BoundsError> {
    let n = degrees.len();
    require_n(n)?;
    let sum: u64 = degrees.iter().map(|&k| k as u64).sum();
    let expected = 2 * (n as u64 - 1);
    if sum != expected {
        return Err(BoundsError::InvalidDegreeSequence { n, sum, expected });
    }
    let total: u64 = degrees.iter().map(|&k| min_star_cost(k as u64)).sum();
    Ok(rat(total as i64, expected as i64))
}

/// Smallest total length of the `k` edges of a star whose hub has degree `k`.
pub fn min_star_cost(k: u64) -> u64 {
    let half = k / 2;
    half * (half + 1) + k.div_ceil(2) * (k % 2)
}

/// `n <k^2> / (8(n-1)) + 1/2`.
pub fn dmin_lower_hubiness(n: usize, mean_k2: Rational) -> Rational {
    let n = n as i64;
    mean_k2 * rat(n, 8 * (n - 1)) + rat(1, 2)
}

/// Minimum mean length of a star tree: `n^2/(4(n-1))` for even `n`,
/// `(n+1)/4` for odd `n`.
pub fn star_dmin_exact(n: usize) -> Rational {
    assert!(n >= 2, "star_dmin_exact needs n >= 2");
    let n = n as i64;
    if n % 2 == 0 {
        rat(n * n, 4 * (n - 1))
    } else {
        rat(n + 1, 4)
    }
}

/// `n/2`, the largest mean length of a non-crossing arrangement.
pub fn dmax_noncrossing(n: usize) -> Rational {
    assert!(n >= 2, "dmax_noncrossing needs n >= 2");
    rat(n as i64, 2)
}

/// `n/2 - 1`, the same maximum when adjacent words are at distance zero.
pub fn dmax0_noncrossing(n: usize) -> Rational {
    dmax_noncrossing(n) - int(1)
}

/// `(n-1)(n-2)/2`.
pub fn cmax_simple(n: usize) -> u64 {
    pairs(n.saturating_sub(1) as u64)
}

/// `binom(n - 1 - M, 2)` where `M` counts uncrossable edges.
pub fn cmax_from_uncrossable(n: usize, uncrossable: usize) -> Result<u64, BoundsError> {
    let edges = n.saturating_sub(1);
    if uncrossable > edges {
        return Err(BoundsError::OutOfRange {
            name: "M",
            value: uncrossable,
            min: 0,
            max: edges,
        });
    }
    Ok(pairs((edges - uncrossable) as u64))
}

/// True when at most one edge could take part in a crossing.
pub fn crossings_impossible(n: usize, uncrossable: usize) -> bool {
    n.saturating_sub(1).saturating_sub(uncrossable) <= 1
}

/// `((n-1)/2)(n<d> - <d^2> - n + 1)`.
pub fn cmax_from_length_moments(n: usize, mean_d: Rational, mean_d2: Rational) -> Rational {
    let n = n as i64;
    rat(n - 1, 2) * (mean_d * n - mean_d2 - int(n) + int(1))
}

/// `c(d) = (d-1)(n-d-1)`, an upper bound on the crossings one edge of length
/// `d` can take part in. It may exceed `n - 2`.
pub fn arc_crossing_capacity(n: usize, d: usize) -> Result<u64, BoundsError> {
    if n < 2 || d < 1 || d > n - 1 {
        return Err(BoundsError::OutOfRange {
            name: "d",
            value: d,
            min: 1,
            max: n.saturating_sub(1),
        });
    }
    Ok(((d - 1) * (n - d - 1)) as u64)
}

/// `(n/2)(n - 1 - <k^2>)`, the number of edge pairs that share no vertex.
pub fn cpairs_from_degrees(n: usize, mean_k2: Rational) -> Rational {
    let n = n as i64;
    rat(n, 2) * (int(n - 1) - mean_k2)
}

/// Every bound for one tree under one arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: usize,
    pub dmin_star_ensemble: Rational,
    pub dmin_hubiness: Rational,
    pub dmax_noncrossing: Rational,
    pub cmax_simple: u64,
    pub cmax_uncrossable: u64,
    pub cmax_length: Rational,
    pub cpairs_degree: Rational,
    pub crossings_impossible: bool,
    /// Expected edge length under a uniformly random arrangement.
    pub expected_d: Rational,
    pub variance_d: Rational,
}

impl BoundsReport {
    /// Assembles the report from precomputed statistics.
    pub fn from_stats(
        degrees: &DegreeStats,
        lengths: &LengthStats,
        crossings: &CrossingStats,
    ) -> Result<BoundsReport, BoundsError> {
        let n = degrees.degrees.len();
        require_n(n)?;
        let (mean_d, mean_d2) = match (lengths.mean_d, lengths.mean_d2) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(BoundsError::TooSmall(n)),
        };
        if n <= 3 {
            assert_eq!(
                crossings.crossings, 0,
                "trees with n <= 3 cannot have crossings"
            );
        }
        let baseline = analytic_baseline(n);
        Ok(BoundsReport {
            n,
            dmin_star_ensemble: dmin_lower_star_ensemble(&degrees.degrees)?,
            dmin_hubiness: dmin_lower_hubiness(n, degrees.mean_k2),
            dmax_noncrossing: dmax_noncrossing(n),
            cmax_simple: cmax_simple(n),
            cmax_uncrossable: cmax_from_uncrossable(n, crossings.uncrossable)?,
            cmax_length: cmax_from_length_moments(n, mean_d, mean_d2),
            cpairs_degree: cpairs_from_degrees(n, degrees.mean_k2),
            crossings_impossible: crossings_impossible(n, crossings.uncrossable),
            expected_d: baseline.expected_d,
            variance_d: baseline.variance_d,
        })
    }

    /// Tightest integer upper bound on the crossing count.
    pub fn crossing_ceiling(&self) -> u64 {
        let mut ceiling = self.cmax_simple.min(self.cmax_uncrossable);
        for bound in [self.cmax_length, self.cpairs_degree] {
            let floor = bound.floor().to_integer().max(0) as u64;
            ceiling = ceiling.min(floor);
        }
        if self.crossings_impossible {
            ceiling = 0;
        }
        ceiling
    }

    /// Checks every relation the bounds promise against the observed
    /// statistics of the same tree and arrangement.
    pub fn violations(&self, lengths: &LengthStats, crossings: &CrossingStats) -> Vec<Violation> {
        let mut out = Vec::new();
        let c = crossings.crossings;
        let c_rat = int(c as i64);
        let mut check = |relation: &'static str, holds: bool, detail: String| {
            if !holds {
                out.push(Violation { relation, detail });
            }
        };
        check(
            "C <= cmax_simple",
            c <= self.cmax_simple,
            format!("C={c} cmax_simple={}", self.cmax_simple),
        );
        check(
            "C <= cmax_uncrossable",
            c <= self.cmax_uncrossable,
            format!("C={c} cmax_uncrossable={}", self.cmax_uncrossable),
        );
        check(
            "C <= cmax_length",
            c_rat <= self.cmax_length && c_rat <= self.cmax_length.floor(),
            format!("C={c} cmax_length={}", self.cmax_length),
        );
        check(
            "C <= cpairs_degree",
            c_rat <= self.cpairs_degree && c_rat <= self.cpairs_degree.floor(),
            format!("C={c} cpairs_degree={}", self.cpairs_degree),
        );
        check(
            "crossings_impossible => C = 0",
            !self.crossings_impossible || c == 0,
            format!("C={c}"),
        );
        check(
            "n <= 3 => C = 0",
            self.n > 3 || c == 0,
            format!("n={} C={c}", self.n),
        );
        check(
            "cpairs_degree >= 0",
            !self.cpairs_degree.is_negative_value(),
            format!("cpairs_degree={}", self.cpairs_degree),
        );
        check(
            "cmax_length >= 0",
            !self.cmax_length.is_negative_value(),
            format!("cmax_length={}", self.cmax_length),
        );
        check(
            "dmin_hubiness <= dmin_star_ensemble",
            self.dmin_hubiness <= self.dmin_star_ensemble,
            format!("{} > {}", self.dmin_hubiness, self.dmin_star_ensemble),
        );
        if let Some(mean_d) = lengths.mean_d {
            check(
                "dmin_star_ensemble <= <d>",
                self.dmin_star_ensemble <= mean_d,
                format!(
                    "dmin_star_ensemble={} <d>={mean_d}",
                    self.dmin_star_ensemble
                ),
            );
            check(
                "C = 0 => <d> <= dmax_noncrossing",
                c != 0 || mean_d <= self.dmax_noncrossing,
                format!("<d>={mean_d} dmax_noncrossing={}", self.dmax_noncrossing),
            );
        }
        out
    }
}

trait NegativeValue {
    fn is_negative_value(&self) -> bool;
}

impl NegativeValue for Rational {
    fn is_negative_value(&self) -> bool {
        *self < Rational::zero()
    }
}

/// A bound relation that failed on real data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: &'static str,
    pub detail: String,
}

/// Computes every bound for `tree` under `arr`.
pub fn bounds_report(tree: &Tree, arr: &LinearArrangement) -> Result<BoundsReport, BoundsError> {
    require_n(tree.n())?;
    let degrees = degree_stats(tree);
    let lengths = length_stats(tree, arr)?;
    let crossings = crossing_count(tree, arr)?;
    BoundsReport::from_stats(&degrees, &lengths, &crossings)
}
