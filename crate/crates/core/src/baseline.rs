//! Edge lengths under uniformly random arrangements.
//!
//! The analytic side gives the exact distribution and moments of the length
//! of a single edge. The Monte Carlo side samples whole arrangements and
//! measures the mean length and crossing count of a concrete tree.
//!
//! Sampling uses ChaCha8 (`rand_chacha`). Trial `t` draws from stream `t` of
//! the generator seeded by `seed_from_u64(seed)` and applies a Fisher-Yates
//! shuffle (`rand::seq::SliceRandom::shuffle`) to the identity arrangement.
//! Each trial therefore depends only on `(seed, t)`, and the accumulators are
//! exact integers, so any partition of the trials gives identical results.

use alloc::vec::Vec;
use core::ops::Range;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::Profile;
use crate::tree::Tree;
use crate::{int, rat, Rational};

/// Exact moments of one edge's length under a uniformly random arrangement
/// of `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomBaseline {
    pub n: usize,
    /// `E[d] = (n+1)/3`.
    pub expected_d: Rational,
    /// `E[d^2] = n(n+1)/6`.
    pub expected_d2: Rational,
    /// `V[d] = (n+1)(n-2)/18`.
    pub variance_d: Rational,
    /// `E[d0] = (n-2)/3`.
    pub expected_d0: Rational,
    /// `E[d0^2] = E[d^2] - 2E[d] + 1 = (n-1)(n-2)/6`.
    pub expected_d0_sq: Rational,
    pub variance_d0: Rational,
}

/// `p(d) = 2(n-d)/(n(n-1))` for `1 <= d <= n-1`, zero elsewhere.
pub fn length_pmf(n: usize, d: usize) -> Rational {
    assert!(n >= 2, "length_pmf needs n >= 2");
    if d < 1 || d > n - 1 {
        return int(0);
    }
    let n = n as i64;
    rat(2 * (n - d as i64), n * (n - 1))
}

pub fn analytic_baseline(n: usize) -> RandomBaseline {
    assert!(n >= 2, "analytic_baseline needs n >= 2");
    let m = n as i64;
    let expected_d = rat(m + 1, 3);
    let expected_d2 = rat(m * (m + 1), 6);
    let variance_d = expected_d2 - expected_d * expected_d;
    debug_assert_eq!(variance_d, rat((m + 1) * (m - 2), 18));
    let expected_d0 = expected_d - int(1);
    let expected_d0_sq = expected_d2 - expected_d * 2 + int(1);
    let variance_d0 = expected_d0_sq - expected_d0 * expected_d0;
    RandomBaseline {
        n,
        expected_d,
        expected_d2,
        variance_d,
        expected_d0,
        expected_d0_sq,
        variance_d0,
    }
}

/// Average of `|i - j|` over all pairs of distinct positions in `1..=n`.
pub fn exact_pair_average(n: usize) -> Rational {
    assert!(n >= 2, "exact_pair_average needs n >= 2");
    let mut total = 0i64;
    let mut count = 0i64;
    for i in 1..=n as i64 {
        for j in i + 1..=n as i64 {
            total += j - i;
            count += 1;
        }
    }
    rat(total, count)
}

/// Integer sums over a set of Monte Carlo trials. Merging is exact, so
/// shards can be combined in any order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MonteCarloSums {
    pub trials: u64,
    /// Sum over trials of the total edge length `D`.
    pub total_len: u128,
    pub total_len_sq: u128,
    pub crossings: u128,
    pub crossings_sq: u128,
    pub max_crossings: u64,
}

impl MonteCarloSums {
    pub fn merge(&mut self, other: &MonteCarloSums) {
        self.trials += other.trials;
        self.total_len += other.total_len;
        self.total_len_sq += other.total_len_sq;
        self.crossings += other.crossings;
        self.crossings_sq += other.crossings_sq;
        self.max_crossings = self.max_crossings.max(other.max_crossings);
    }
}

/// Runs trials `range` for `tree` with the given seed.
pub fn monte_carlo_shard(tree: &Tree, seed: u64, range: Range<u64>) -> MonteCarloSums {
    let n = tree.n();
    let mut sums = MonteCarloSums::default();
    let mut positions: Vec<u32> = Vec::with_capacity(n);
    for trial in range {
        positions.clear();
        positions.extend(1..=n as u32);
        positions.shuffle(&mut trial_rng(seed, trial));
        let profile = Profile::compute(n, tree.edges(), &positions);
        let d = profile.total as u128;
        let c = profile.crossings as u128;
        sums.trials += 1;
        sums.total_len += d;
        sums.total_len_sq += d * d;
        sums.crossings += c;
        sums.crossings_sq += c * c;
        sums.max_crossings = sums.max_crossings.max(profile.crossings);
    }
    sums
}

/// Generator for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Empirical summary of a Monte Carlo run.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloReport {
    pub n: usize,
    pub seed: u64,
    pub sums: MonteCarloSums,
}

impl MonteCarloReport {
    pub fn from_sums(n: usize, seed: u64, sums: MonteCarloSums) -> Self {
        MonteCarloReport { n, seed, sums }
    }

    pub fn trials(&self) -> u64 {
        self.sums.trials
    }

    fn edges(&self) -> f64 {
        (self.n - 1) as f64
    }

    /// Empirical mean of `<d>` over trials.
    pub fn mean_d(&self) -> f64 {
        self.sums.total_len as f64 / self.sums.trials as f64 / self.edges()
    }

    /// Sample variance of `<d>` across trials.
    pub fn variance_mean_d(&self) -> f64 {
        sample_variance(
            self.sums.trials,
            self.sums.total_len,
            self.sums.total_len_sq,
        ) / (self.edges() * self.edges())
    }

    pub fn mean_d_std_error(&self) -> f64 {
        libm::sqrt(self.variance_mean_d() / self.sums.trials as f64)
    }

    pub fn mean_crossings(&self) -> f64 {
        self.sums.crossings as f64 / self.sums.trials as f64
    }

    pub fn crossings_std_error(&self) -> f64 {
        libm::sqrt(
            sample_variance(
                self.sums.trials,
                self.sums.crossings,
                self.sums.crossings_sq,
            ) / self.sums.trials as f64,
        )
    }
}

fn sample_variance(trials: u64, sum: u128, sum_sq: u128) -> f64 {
    if trials < 2 {
        return 0.0;
    }
    let t = trials as u128;
    // t * sum_sq - sum^2 is exact and non-negative
    let numer = t * sum_sq - sum * sum;
    numer as f64 / (t * (t - 1)) as f64
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimulationError {
    #[error("simulation needs a tree with at least two vertices, got {0}")]
    TooSmall(usize),
    #[error("simulation needs at least one trial")]
    NoTrials,
}

/// Samples `trials` uniformly random arrangements of `tree`.
pub fn monte_carlo_baseline(
    tree: &Tree,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloReport, SimulationError> {
    if tree.n() < 2 {
        return Err(SimulationError::TooSmall(tree.n()));
    }
    if trials == 0 {
        return Err(SimulationError::NoTrials);
    }
    let sums = monte_carlo_shard(tree, seed, 0..trials);
    Ok(MonteCarloReport::from_sums(tree.n(), seed, sums))
}
