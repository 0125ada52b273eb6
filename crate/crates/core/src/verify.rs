//! Exhaustive certification of the bounds on small trees.
//!
//! For every tree (all labeled trees up to a size cap, random samples above
//! it) and every arrangement of it, each [`Invariant`] is checked and
//! tallied. The first failure of each invariant keeps a [`Witness`].
//!
//! The bound formulas are taken from a [`BoundSuite`] so that a deliberately
//! wrong suite can be plugged in to exercise the failure path.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{LinearArrangement, Profile};
use crate::bounds;
use crate::oracles::{self, ExhaustiveOracle};
use crate::permutations::Permutations;
use crate::tree::{degree_stats, enumerate_trees, Tree};
use crate::{int, rat, Rational};

/// The bound formulas under test.
#[derive(Clone, Copy)]
pub struct BoundSuite {
    pub cmax_simple: fn(usize) -> u64,
    pub cmax_from_uncrossable: fn(usize, usize) -> u64,
    pub cmax_from_length_moments: fn(usize, Rational, Rational) -> Rational,
    pub cpairs_from_degrees: fn(usize, Rational) -> Rational,
    pub dmin_lower_hubiness: fn(usize, Rational) -> Rational,
    pub dmin_lower_star_ensemble: fn(&[u32]) -> Rational,
    pub star_dmin_exact: fn(usize) -> Rational,
    pub max_noncrossing_total: fn(usize) -> u64,
}

impl Default for BoundSuite {
    fn default() -> Self {
        BoundSuite {
            cmax_simple: bounds::cmax_simple,
            cmax_from_uncrossable: |n, m| bounds::cmax_from_uncrossable(n, m).expect("M <= n - 1"),
            cmax_from_length_moments: bounds::cmax_from_length_moments,
            cpairs_from_degrees: bounds::cpairs_from_degrees,
            dmin_lower_hubiness: bounds::dmin_lower_hubiness,
            dmin_lower_star_ensemble: |k| {
                bounds::dmin_lower_star_ensemble(k).expect("degree sequence of a tree")
            },
            star_dmin_exact: bounds::star_dmin_exact,
            max_noncrossing_total: oracles::max_noncrossing_total,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Invariant {
    DegreeSum,
    K2Lower,
    K2Upper,
    SmallNPlanar,
    CrossingSimple,
    CrossingUncrossable,
    CrossingLength,
    CrossingDegree,
    MirrorInvariance,
    NoncrossingMax,
    DminChain,
    StarDmin,
    NoncrossingAttained,
    OracleCrossingBounds,
}

impl Invariant {
    pub const ALL: [Invariant; 14] = [
        Invariant::DegreeSum,
        Invariant::K2Lower,
        Invariant::K2Upper,
        Invariant::SmallNPlanar,
        Invariant::CrossingSimple,
        Invariant::CrossingUncrossable,
        Invariant::CrossingLength,
        Invariant::CrossingDegree,
        Invariant::MirrorInvariance,
        Invariant::NoncrossingMax,
        Invariant::DminChain,
        Invariant::StarDmin,
        Invariant::NoncrossingAttained,
        Invariant::OracleCrossingBounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::DegreeSum => "degree-sum",
            Invariant::K2Lower => "k2-lower",
            Invariant::K2Upper => "k2-upper",
            Invariant::SmallNPlanar => "small-n-planar",
            Invariant::CrossingSimple => "crossing-simple",
            Invariant::CrossingUncrossable => "crossing-uncrossable",
            Invariant::CrossingLength => "crossing-length",
            Invariant::CrossingDegree => "crossing-degree",
            Invariant::MirrorInvariance => "mirror-invariance",
            Invariant::NoncrossingMax => "noncrossing-max",
            Invariant::DminChain => "dmin-chain",
            Invariant::StarDmin => "star-dmin",
            Invariant::NoncrossingAttained => "noncrossing-attained",
            Invariant::OracleCrossingBounds => "oracle-crossing-bounds",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Invariant::DegreeSum => "sum of degrees = 2(n-1) and <k> = 2 - 2/n",
            Invariant::K2Lower => "K2 >= 4n - 6, equality iff path",
            Invariant::K2Upper => "<k^2> <= n - 1, equality iff star",
            Invariant::SmallNPlanar => "C = 0 when n <= 3",
            Invariant::CrossingSimple => "C <= (n-1)(n-2)/2",
            Invariant::CrossingUncrossable => "C <= binom(n-1-M, 2)",
            Invariant::CrossingLength => "C <= floor((n-1)/2 (n<d> - <d^2> - n + 1))",
            Invariant::CrossingDegree => "C <= floor((n/2)(n - 1 - <k^2>))",
            Invariant::MirrorInvariance => "reversing an arrangement keeps lengths and C",
            Invariant::NoncrossingMax => "non-crossing arrangements have D <= n(n-1)/2",
            Invariant::DminChain => "hubiness bound <= star-ensemble bound <= minimum <d>",
            Invariant::StarDmin => "minimum <d> of a star matches the parity formula",
            Invariant::NoncrossingAttained => "stars and paths reach non-crossing D = n(n-1)/2",
            Invariant::OracleCrossingBounds => {
                "maximum C over arrangements <= every crossing bound"
            }
        }
    }
}

/// A concrete counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub tree: Tree,
    pub arrangement: Option<LinearArrangement>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub checks: u64,
    pub failures: u64,
    pub witness: Option<Witness>,
}

impl Tally {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn merge(&mut self, other: &Tally) {
        self.checks += other.checks;
        self.failures += other.failures;
        if self.witness.is_none() {
            self.witness.clone_from(&other.witness);
        }
    }
}

/// Facts recorded by the sweep without asserting them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SizeObservation {
    pub n: usize,
    pub trees: u64,
    pub arrangements: u64,
    /// Trees whose best non-crossing arrangement reaches `n(n-1)/2`.
    pub noncrossing_max_attained: u64,
    /// Largest crossing count seen on a path, next to the degree bound.
    pub path_max_crossings: Option<u64>,
    pub path_cpairs: Option<Rational>,
}

impl SizeObservation {
    fn merge(&mut self, other: &SizeObservation) {
        self.trees += other.trees;
        self.arrangements += other.arrangements;
        self.noncrossing_max_attained += other.noncrossing_max_attained;
        self.path_max_crossings = match (self.path_max_crossings, other.path_max_crossings) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        if self.path_cpairs.is_none() {
            self.path_cpairs = other.path_cpairs;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub tallies: Vec<(Invariant, Tally)>,
    pub sizes: Vec<SizeObservation>,
}

impl Default for SweepReport {
    fn default() -> Self {
        SweepReport {
            tallies: Invariant::ALL
                .iter()
                .map(|&i| (i, Tally::default()))
                .collect(),
            sizes: Vec::new(),
        }
    }
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.tallies.iter().all(|(_, t)| t.passed())
    }

    pub fn tally(&self, invariant: Invariant) -> &Tally {
        &self
            .tallies
            .iter()
            .find(|(i, _)| *i == invariant)
            .expect("all invariants tracked")
            .1
    }

    fn tally_mut(&mut self, invariant: Invariant) -> &mut Tally {
        &mut self
            .tallies
            .iter_mut()
            .find(|(i, _)| *i == invariant)
            .expect("all invariants tracked")
            .1
    }

    /// Adds `other`'s counts. Merge in tree order to keep witnesses stable.
    pub fn merge(&mut self, other: &SweepReport) {
        for (invariant, tally) in &other.tallies {
            self.tally_mut(*invariant).merge(tally);
        }
        for size in &other.sizes {
            match self.sizes.iter_mut().find(|s| s.n == size.n) {
                Some(existing) => existing.merge(size),
                None => {
                    self.sizes.push(size.clone());
                    self.sizes.sort_by_key(|s| s.n);
                }
            }
        }
    }

    fn record(
        &mut self,
        invariant: Invariant,
        holds: bool,
        tree: &Tree,
        arrangement: Option<&[u32]>,
        detail: impl FnOnce() -> String,
    ) {
        let tally = self.tally_mut(invariant);
        tally.checks += 1;
        if !holds {
            tally.failures += 1;
            if tally.witness.is_none() {
                tally.witness = Some(Witness {
                    tree: tree.clone(),
                    arrangement: arrangement.map(|p| {
                        LinearArrangement::from_positions(p.to_vec()).expect("a permutation")
                    }),
                    detail: detail(),
                });
            }
        }
    }
}

/// Which trees to sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    /// Largest tree size.
    pub max_n: usize,
    /// Sizes up to this one use every labeled tree; larger sizes are sampled.
    pub exhaustive_max_n: usize,
    /// Random trees per size above `exhaustive_max_n`.
    pub samples: usize,
    pub seed: u64,
    pub oracle: ExhaustiveOracle,
}

impl SweepConfig {
    pub fn exhaustive(max_n: usize) -> Self {
        SweepConfig {
            max_n,
            exhaustive_max_n: 6,
            samples: 25,
            seed: 0,
            oracle: ExhaustiveOracle::default(),
        }
    }

    /// Trees of size `n` in sweep order.
    pub fn trees(&self, n: usize) -> Vec<Tree> {
        if n <= self.exhaustive_max_n {
            enumerate_trees(n)
                .expect("exhaustive sizes are enumerable")
                .collect()
        } else {
            sample_trees(n, self.samples, self.seed)
        }
    }
}

/// `count` uniformly random labeled trees on `n` vertices from random Prüfer
/// codes; size `n` uses stream `n` of the seeded generator.
pub fn sample_trees(n: usize, count: usize, seed: u64) -> Vec<Tree> {
    assert!(n >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    (0..count)
        .map(|_| {
            let code: Vec<u32> = (0..n - 2).map(|_| rng.random_range(1..=n as u32)).collect();
            Tree::from_prufer(n, &code)
        })
        .collect()
}

/// Runs every invariant on one tree and all of its arrangements.
pub fn check_tree(tree: &Tree, suite: &BoundSuite, oracle: &ExhaustiveOracle) -> SweepReport {
    let mut report = SweepReport::default();
    let n = tree.n();
    assert!(n >= 2, "sweep trees need at least two vertices");
    let ni = n as i64;
    let degrees = degree_stats(tree);

    let k_sum: u64 = degrees.degrees.iter().map(|&k| k as u64).sum();
    report.record(
        Invariant::DegreeSum,
        k_sum == 2 * (n as u64 - 1) && degrees.mean_k == int(2) - rat(2, ni),
        tree,
        None,
        || format!("sum k = {k_sum}, <k> = {}", degrees.mean_k),
    );
    let k2_floor = 4 * n as u64 - 6;
    let is_path = tree.is_path();
    let is_star = tree.is_star();
    report.record(
        Invariant::K2Lower,
        degrees.k2_sum >= k2_floor && ((degrees.k2_sum == k2_floor) == is_path),
        tree,
        None,
        || {
            format!(
                "K2 = {}, 4n - 6 = {k2_floor}, path = {is_path}",
                degrees.k2_sum
            )
        },
    );
    let k2_cap = int(ni - 1);
    report.record(
        Invariant::K2Upper,
        degrees.mean_k2 <= k2_cap && ((degrees.mean_k2 == k2_cap) == is_star),
        tree,
        None,
        || format!("<k^2> = {}, star = {is_star}", degrees.mean_k2),
    );

    let edges = tree.edges();
    let m = ni - 1;
    let c_simple = (suite.cmax_simple)(n);
    let cpairs = (suite.cpairs_from_degrees)(n, degrees.mean_k2);
    let cpairs_floor = cpairs.floor();
    let delta = (suite.max_noncrossing_total)(n);
    let mut mirrored = vec![0u32; n];
    let mut arrangements = 0u64;
    let mut best_noncrossing = 0u64;
    let mut max_c = 0u64;
    let mut perms = Permutations::new(n);
    while perms.advance() {
        let p = perms.current();
        arrangements += 1;
        let profile = Profile::compute(n, edges, p);
        let c = profile.crossings;
        let c_rat = int(c as i64);
        max_c = max_c.max(c);
        if n <= 3 {
            report.record(Invariant::SmallNPlanar, c == 0, tree, Some(p), || {
                format!("C = {c}")
            });
        }
        report.record(
            Invariant::CrossingSimple,
            c <= c_simple,
            tree,
            Some(p),
            || format!("C = {c} > {c_simple}"),
        );
        let c_unc = (suite.cmax_from_uncrossable)(n, profile.uncrossable);
        report.record(
            Invariant::CrossingUncrossable,
            c <= c_unc,
            tree,
            Some(p),
            || format!("C = {c} > {c_unc} (M = {})", profile.uncrossable),
        );
        let mean_d = rat(profile.total as i64, m);
        let mean_d2 = rat(profile.sum_sq as i64, m);
        let c_len = (suite.cmax_from_length_moments)(n, mean_d, mean_d2);
        report.record(
            Invariant::CrossingLength,
            c_rat <= c_len.floor(),
            tree,
            Some(p),
            || format!("C = {c} > {c_len} (<d> = {mean_d}, <d^2> = {mean_d2})"),
        );
        report.record(
            Invariant::CrossingDegree,
            c_rat <= cpairs_floor,
            tree,
            Some(p),
            || format!("C = {c} > {cpairs}"),
        );
        for (slot, &pos) in mirrored.iter_mut().zip(p) {
            *slot = n as u32 + 1 - pos;
        }
        let mirror = Profile::compute(n, edges, &mirrored);
        report.record(
            Invariant::MirrorInvariance,
            mirror == profile,
            tree,
            Some(p),
            || format!("{profile:?} vs mirrored {mirror:?}"),
        );
        if c == 0 {
            best_noncrossing = best_noncrossing.max(profile.total);
            report.record(
                Invariant::NoncrossingMax,
                profile.total <= delta,
                tree,
                Some(p),
                || format!("D = {} > {delta}", profile.total),
            );
        }
    }

    let ens = (suite.dmin_lower_star_ensemble)(&degrees.degrees);
    let hub = (suite.dmin_lower_hubiness)(n, degrees.mean_k2);
    match oracle.min_mean_length(tree) {
        Ok(min) => {
            report.record(
                Invariant::DminChain,
                hub <= ens && ens <= min.optimum,
                tree,
                Some(min.witness.positions()),
                || format!("hubiness {hub}, ensemble {ens}, minimum {}", min.optimum),
            );
            if is_star {
                let exact = (suite.star_dmin_exact)(n);
                report.record(
                    Invariant::StarDmin,
                    min.optimum == exact,
                    tree,
                    Some(min.witness.positions()),
                    || format!("minimum {} vs formula {exact}", min.optimum),
                );
            }
        }
        Err(e) => report.record(Invariant::DminChain, false, tree, None, || format!("{e}")),
    }
    let pairs_n = oracles::max_noncrossing_total(n);
    let attained = match oracle.max_noncrossing_total(tree) {
        Ok(found) => {
            if is_star || is_path {
                report.record(
                    Invariant::NoncrossingAttained,
                    found.optimum == delta && found.optimum == best_noncrossing,
                    tree,
                    Some(found.witness.positions()),
                    || format!("best non-crossing D = {}, expected {delta}", found.optimum),
                );
            }
            found.optimum == pairs_n
        }
        Err(e) => {
            report.record(Invariant::NoncrossingAttained, false, tree, None, || {
                format!("{e}")
            });
            false
        }
    };
    match oracle.max_crossings(tree) {
        Ok(found) => {
            let p = found.witness.positions();
            let profile = Profile::compute(n, edges, p);
            let c = found.optimum;
            let c_rat = int(c as i64);
            let at_argmax = (suite.cmax_from_length_moments)(
                n,
                rat(profile.total as i64, m),
                rat(profile.sum_sq as i64, m),
            );
            let c_unc = (suite.cmax_from_uncrossable)(n, profile.uncrossable);
            report.record(
                Invariant::OracleCrossingBounds,
                c == max_c && c <= c_simple && c <= c_unc && c_rat <= at_argmax && c_rat <= cpairs,
                tree,
                Some(p),
                || format!("max C = {c}: simple {c_simple}, uncrossable {c_unc}, length {at_argmax}, degree {cpairs}"),
            );
        }
        Err(e) => report.record(Invariant::OracleCrossingBounds, false, tree, None, || {
            format!("{e}")
        }),
    }

    report.sizes.push(SizeObservation {
        n,
        trees: 1,
        arrangements,
        noncrossing_max_attained: attained as u64,
        path_max_crossings: is_path.then_some(max_c),
        path_cpairs: is_path.then_some(cpairs),
    });
    report
}

/// Sequential sweep over every size `2..=config.max_n`.
pub fn sweep(config: &SweepConfig, suite: &BoundSuite) -> SweepReport {
    let mut report = SweepReport::default();
    for n in 2..=config.max_n {
        for tree in config.trees(n) {
            report.merge(&check_tree(&tree, suite, &config.oracle));
        }
    }
    report
}
