//! Extremal arrangements built by construction, and exhaustive searches over
//! all arrangements that serve as ground truth for the bounds.
//!
//! The searches visit permutations in lexicographic order of the position
//! vector and keep only those that put vertex 1 in the left half. Mirroring
//! an arrangement keeps every length and every crossing, and the mirror of
//! an arrangement with vertex 1 in the right half is lexicographically
//! smaller, so the first optimum found is the lexicographically smallest
//! optimum overall.

use crate::arrangement::{LinearArrangement, Profile};
use crate::permutations::Permutations;
use crate::tree::Tree;
use crate::{pairs, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("exhaustive search is capped at n = {cap}, tree has {n} vertices")]
    SizeLimit { n: usize, cap: usize },
    #[error("exhaustive search needs at least two vertices, got {0}")]
    TooSmall(usize),
    #[error("split position v = {v} is outside {min}..={max}")]
    SplitRange { v: usize, min: usize, max: usize },
}

/// Optimum of an exhaustive search with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult<T> {
    pub optimum: T,
    /// Lexicographically smallest arrangement attaining the optimum.
    pub witness: LinearArrangement,
    /// Number of arrangements examined.
    pub explored: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarMode {
    /// Hub first, leaves after it.
    HubEnd,
    /// Hub in the middle, leaves on both sides.
    HubCenter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearMode {
    Identity,
    /// Path vertices alternate between the two ends: positions
    /// `1, n, 2, n-1, ...`.
    Zigzag,
}

/// Arrangement for [`Tree::star`] (hub is vertex 1).
pub fn arrange_star(n: usize, mode: StarMode) -> LinearArrangement {
    assert!(n >= 2, "arrange_star needs n >= 2");
    match mode {
        StarMode::HubEnd => LinearArrangement::identity(n),
        StarMode::HubCenter => {
            let hub = n.div_ceil(2) as u32;
            let mut positions = alloc::vec::Vec::with_capacity(n);
            positions.push(hub);
            positions.extend((1..=n as u32).filter(|&p| p != hub));
            LinearArrangement::from_positions(positions).expect("a permutation")
        }
    }
}

/// Arrangement for [`Tree::linear`].
pub fn arrange_linear(n: usize, mode: LinearMode) -> LinearArrangement {
    assert!(n >= 2, "arrange_linear needs n >= 2");
    match mode {
        LinearMode::Identity => LinearArrangement::identity(n),
        LinearMode::Zigzag => {
            let n32 = n as u32;
            let positions = (0..n32)
                .map(|i| if i % 2 == 0 { i / 2 + 1 } else { n32 - i / 2 })
                .collect();
            LinearArrangement::from_positions(positions).expect("a permutation")
        }
    }
}

/// How a non-crossing arrangement splits into two non-crossing halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decomposition {
    /// Halves share vertex `v`.
    Shared,
    /// Halves are disjoint and joined by an edge from the first vertex to the
    /// last.
    Linked,
}

/// Largest total length reachable by either decomposition when the first
/// half ends at position `v`:
///
/// * shared: `v^2 - (n+1)v + n(n+1)/2`, for `2 <= v <= n-1`;
/// * linked: `v^2 - nv + n(n+1)/2 - 1`, for `1 <= v <= n-1`.
pub fn decomposition_max_total(
    n: usize,
    v: usize,
    kind: Decomposition,
) -> Result<i64, OracleError> {
    let min = match kind {
        Decomposition::Shared => 2,
        Decomposition::Linked => 1,
    };
    if v < min || v + 1 > n {
        return Err(OracleError::SplitRange {
            v,
            min,
            max: n.saturating_sub(1),
        });
    }
    let (n, v) = (n as i64, v as i64);
    Ok(match kind {
        Decomposition::Shared => v * v - (n + 1) * v + n * (n + 1) / 2,
        Decomposition::Linked => v * v - n * v + n * (n + 1) / 2 - 1,
    })
}

pub const DEFAULT_MAX_N: usize = 9;

/// Exhaustive arrangement search with a configurable size cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveOracle {
    pub max_n: usize,
}

impl Default for ExhaustiveOracle {
    fn default() -> Self {
        ExhaustiveOracle {
            max_n: DEFAULT_MAX_N,
        }
    }
}

impl ExhaustiveOracle {
    pub fn new(max_n: usize) -> Self {
        ExhaustiveOracle { max_n }
    }

    fn check(&self, tree: &Tree) -> Result<(), OracleError> {
        if tree.n() > self.max_n {
            return Err(OracleError::SizeLimit {
                n: tree.n(),
                cap: self.max_n,
            });
        }
        if tree.n() < 2 {
            return Err(OracleError::TooSmall(tree.n()));
        }
        Ok(())
    }

    /// Visits every arrangement with vertex 1 in the left half, stopping at
    /// the first one with vertex 1 past the middle.
    fn search<T: Copy + PartialOrd>(
        &self,
        tree: &Tree,
        mut score: impl FnMut(&[u32]) -> Option<T>,
        better: impl Fn(T, T) -> bool,
    ) -> Result<Option<OracleResult<T>>, OracleError> {
        self.check(tree)?;
        let n = tree.n();
        let half = n.div_ceil(2) as u32;
        let mut perms = Permutations::new(n);
        let mut best: Option<(T, alloc::vec::Vec<u32>)> = None;
        let mut explored = 0u64;
        while perms.advance() {
            let positions = perms.current();
            if positions[0] > half {
                break;
            }
            explored += 1;
            if let Some(value) = score(positions) {
                let replace = match &best {
                    None => true,
                    Some((current, _)) => better(value, *current),
                };
                if replace {
                    best = Some((value, positions.to_vec()));
                }
            }
        }
        Ok(best.map(|(optimum, positions)| OracleResult {
            optimum,
            witness: LinearArrangement::from_positions(positions).expect("a permutation"),
            explored,
        }))
    }

    /// Minimum mean edge length over all arrangements.
    pub fn min_mean_length(&self, tree: &Tree) -> Result<OracleResult<Rational>, OracleError> {
        let edges = tree.edges();
        let found = self
            .search(tree, |p| Some(Profile::total_only(edges, p)), |a, b| a < b)?
            .expect("at least one arrangement");
        let m = (tree.n() - 1) as i64;
        Ok(OracleResult {
            optimum: rat(found.optimum as i64, m),
            witness: found.witness,
            explored: found.explored,
        })
    }

    /// Maximum total edge length over non-crossing arrangements.
    pub fn max_noncrossing_total(&self, tree: &Tree) -> Result<OracleResult<u64>, OracleError> {
        let n = tree.n();
        let edges = tree.edges();
        let found = self.search(
            tree,
            |p| {
                let profile = Profile::compute(n, edges, p);
                (profile.crossings == 0).then_some(profile.total)
            },
            |a, b| a > b,
        )?;
        // every tree has a non-crossing arrangement
        Ok(found.expect("a non-crossing arrangement exists"))
    }

    /// Maximum number of crossings over all arrangements.
    pub fn max_crossings(&self, tree: &Tree) -> Result<OracleResult<u64>, OracleError> {
        let n = tree.n();
        let edges = tree.edges();
        let found = self
            .search(
                tree,
                |p| Some(Profile::compute(n, edges, p).crossings),
                |a, b| a > b,
            )?
            .expect("at least one arrangement");
        Ok(found)
    }
}

pub fn brute_min_mean_length(tree: &Tree) -> Result<OracleResult<Rational>, OracleError> {
    ExhaustiveOracle::default().min_mean_length(tree)
}

pub fn brute_max_noncrossing_total(tree: &Tree) -> Result<OracleResult<u64>, OracleError> {
    ExhaustiveOracle::default().max_noncrossing_total(tree)
}

pub fn brute_max_crossings(tree: &Tree) -> Result<OracleResult<u64>, OracleError> {
    ExhaustiveOracle::default().max_crossings(tree)
}

/// `n(n-1)/2` as used by the non-crossing maximum.
pub fn max_noncrossing_total(n: usize) -> u64 {
    pairs(n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{crossing_count, length_stats};
    use crate::bounds::star_dmin_exact;
    use crate::int;

    fn stats(tree: &Tree, arr: &LinearArrangement) -> (Rational, u64) {
        let l = length_stats(tree, arr).unwrap();
        let c = crossing_count(tree, arr).unwrap();
        (l.mean_d.unwrap(), c.crossings)
    }

    #[test]
    fn star_constructions() {
        let star = Tree::star(9);
        assert_eq!(
            stats(&star, &arrange_star(9, StarMode::HubEnd)),
            (rat(9, 2), 0)
        );
        assert_eq!(
            stats(&star, &arrange_star(9, StarMode::HubCenter)).0,
            rat(5, 2)
        );
        let star4 = Tree::star(4);
        let centred = arrange_star(4, StarMode::HubCenter);
        assert_eq!(centred.position(1), 2);
        assert_eq!(length_stats(&star4, &centred).unwrap().total, 4);
        assert_eq!(stats(&star4, &centred).0, rat(4, 3));
    }

    #[test]
    fn linear_constructions() {
        let path = Tree::linear(9);
        assert_eq!(
            stats(&path, &arrange_linear(9, LinearMode::Identity)).0,
            int(1)
        );
        let zig = arrange_linear(9, LinearMode::Zigzag);
        assert_eq!(zig.positions(), &[1, 9, 2, 8, 3, 7, 4, 6, 5]);
        assert_eq!(stats(&path, &zig), (rat(9, 2), 0));
        assert_eq!(length_stats(&path, &zig).unwrap().total, 36);
        for mode in [LinearMode::Identity, LinearMode::Zigzag] {
            assert_eq!(stats(&Tree::linear(2), &arrange_linear(2, mode)).0, int(1));
        }
    }

    #[test]
    fn decomposition_identities() {
        for n in 3..=32usize {
            for v in 2..n {
                let a = decomposition_max_total(n, v, Decomposition::Shared).unwrap();
                let b = decomposition_max_total(n, v, Decomposition::Linked).unwrap();
                assert_eq!(b - a, v as i64 - 1);
                // sum of the halves' own maxima
                let (n64, v64) = (n as u64, v as u64);
                assert_eq!(a as u64, pairs(v64) + pairs(n64 - v64 + 1));
                assert_eq!(b as u64, n64 - 1 + pairs(v64) + pairs(n64 - v64));
            }
            let first = decomposition_max_total(n, 1, Decomposition::Linked).unwrap();
            let last = decomposition_max_total(n, n - 1, Decomposition::Linked).unwrap();
            assert_eq!(first, (n * (n - 1) / 2) as i64);
            assert_eq!(first, last);
        }
        assert_eq!(
            decomposition_max_total(9, 1, Decomposition::Linked).unwrap(),
            36
        );
        assert!(decomposition_max_total(9, 1, Decomposition::Shared).is_err());
        assert!(decomposition_max_total(9, 9, Decomposition::Linked).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let star = brute_min_mean_length(&Tree::star(9)).unwrap();
        assert_eq!(star.optimum, rat(5, 2));
        assert_eq!(
            brute_min_mean_length(&Tree::linear(9)).unwrap().optimum,
            int(1)
        );
        assert_eq!(
            brute_max_noncrossing_total(&Tree::star(6)).unwrap().optimum,
            15
        );
        assert_eq!(
            brute_max_noncrossing_total(&Tree::linear(6))
                .unwrap()
                .optimum,
            15
        );
        assert_eq!(brute_max_crossings(&Tree::linear(4)).unwrap().optimum, 1);
        assert_eq!(brute_max_crossings(&Tree::star(7)).unwrap().optimum, 0);
    }

    #[test]
    fn witnesses_reproduce_optimum() {
        let tree = Tree::new(6, &[(1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]).unwrap();
        let min = brute_min_mean_length(&tree).unwrap();
        assert_eq!(
            length_stats(&tree, &min.witness).unwrap().mean_d.unwrap(),
            min.optimum
        );
        let nc = brute_max_noncrossing_total(&tree).unwrap();
        let l = length_stats(&tree, &nc.witness).unwrap();
        assert_eq!(l.total, nc.optimum);
        assert_eq!(crossing_count(&tree, &nc.witness).unwrap().crossings, 0);
        let cmax = brute_max_crossings(&tree).unwrap();
        assert_eq!(
            crossing_count(&tree, &cmax.witness).unwrap().crossings,
            cmax.optimum
        );
        assert_eq!(min.explored, 360);
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        // full scan over all n! arrangements, no mirror halving
        let tree = Tree::new(5, &[(1, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        let mut perms = Permutations::new(5);
        let mut best: Option<(u64, alloc::vec::Vec<u32>)> = None;
        while perms.advance() {
            let d = Profile::total_only(tree.edges(), perms.current());
            if best.as_ref().is_none_or(|(b, _)| d < *b) {
                best = Some((d, perms.current().to_vec()));
            }
        }
        let (d, positions) = best.unwrap();
        let found = brute_min_mean_length(&tree).unwrap();
        assert_eq!(found.optimum, rat(d as i64, 4));
        assert_eq!(found.witness.positions(), positions.as_slice());
    }

    #[test]
    fn star_minimum_matches_closed_form() {
        for n in 2..=8 {
            assert_eq!(
                brute_min_mean_length(&Tree::star(n)).unwrap().optimum,
                star_dmin_exact(n)
            );
        }
    }

    #[test]
    fn size_cap() {
        assert_eq!(
            brute_min_mean_length(&Tree::linear(10)),
            Err(OracleError::SizeLimit { n: 10, cap: 9 })
        );
        assert!(ExhaustiveOracle::new(4)
            .max_crossings(&Tree::linear(5))
            .is_err());
        assert_eq!(
            brute_max_crossings(&Tree::new(1, &[]).unwrap()),
            Err(OracleError::TooSmall(1))
        );
    }
}
