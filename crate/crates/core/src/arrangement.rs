//! Linear arrangements and the statistics a tree takes under one: edge
//! lengths, their moments, crossings and uncrossable edges.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::tree::{Tree, Vertex};
use crate::{int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("position {position} is outside 1..={n}")]
    OutOfRange { position: u32, n: usize },
    #[error("position {0} is used twice")]
    RepeatedPosition(u32),
    #[error("arrangement covers {arrangement} vertices but the tree has {tree}")]
    DimensionMismatch { tree: usize, arrangement: usize },
}

/// Bijection from vertices `1..=n` to positions `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearArrangement {
    // positions[v - 1] = position of vertex v
    positions: Vec<u32>,
}

impl LinearArrangement {
    pub fn identity(n: usize) -> Self {
        LinearArrangement {
            positions: (1..=n as u32).collect(),
        }
    }

    /// `positions[i]` is the position of vertex `i + 1`.
    pub fn from_positions(positions: Vec<u32>) -> Result<Self, ArrangementError> {
        let n = positions.len();
        let mut used = vec![false; n];
        for &p in &positions {
            if p == 0 || p as usize > n {
                return Err(ArrangementError::OutOfRange { position: p, n });
            }
            if core::mem::replace(&mut used[p as usize - 1], true) {
                return Err(ArrangementError::RepeatedPosition(p));
            }
        }
        Ok(LinearArrangement { positions })
    }

    /// Builds the arrangement that places `order[0]` first, `order[1]`
    /// second and so on.
    pub fn from_order(order: &[Vertex]) -> Result<Self, ArrangementError> {
        let n = order.len();
        let mut positions = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            if v == 0 || v as usize > n {
                return Err(ArrangementError::OutOfRange { position: v, n });
            }
            if positions[v as usize - 1] != 0 {
                return Err(ArrangementError::RepeatedPosition(v));
            }
            positions[v as usize - 1] = i as u32 + 1;
        }
        Ok(LinearArrangement { positions })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position(&self, v: Vertex) -> u32 {
        self.positions[v as usize - 1]
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    /// Mirror image: position `p` becomes `n + 1 - p`.
    pub fn reversed(&self) -> Self {
        let n = self.positions.len() as u32;
        LinearArrangement {
            positions: self.positions.iter().map(|&p| n + 1 - p).collect(),
        }
    }
}

impl fmt::Display for LinearArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.positions.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Mirror image of `arr`.
pub fn compose_reverse(arr: &LinearArrangement) -> LinearArrangement {
    arr.reversed()
}

/// Edge lengths and their moments.
///
/// Means are `None` for a single-vertex tree, which has no edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthStats {
    /// One length per edge, in the tree's edge order.
    pub lengths: Vec<u32>,
    /// Sum of lengths.
    pub total: u64,
    pub sum_sq: u64,
    pub mean_d: Option<Rational>,
    pub mean_d2: Option<Rational>,
    /// Mean length when adjacent words are at distance zero.
    pub mean_d0: Option<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingStats {
    pub crossings: u64,
    /// Edges of length 1 or `n - 1`, which cannot take part in a crossing.
    pub uncrossable: usize,
    pub planar: bool,
}

fn check_dims(tree: &Tree, arr: &LinearArrangement) -> Result<(), ArrangementError> {
    if tree.n() != arr.len() {
        return Err(ArrangementError::DimensionMismatch {
            tree: tree.n(),
            arrangement: arr.len(),
        });
    }
    Ok(())
}

pub fn length_stats(tree: &Tree, arr: &LinearArrangement) -> Result<LengthStats, ArrangementError> {
    check_dims(tree, arr)?;
    let lengths: Vec<u32> = tree
        .edges()
        .iter()
        .map(|&(u, v)| arr.position(u).abs_diff(arr.position(v)))
        .collect();
    let total: u64 = lengths.iter().map(|&d| d as u64).sum();
    let sum_sq: u64 = lengths.iter().map(|&d| (d as u64) * (d as u64)).sum();
    let m = lengths.len() as i64;
    let (mean_d, mean_d2, mean_d0) = if m == 0 {
        (None, None, None)
    } else {
        let mean = rat(total as i64, m);
        (Some(mean), Some(rat(sum_sq as i64, m)), Some(mean - int(1)))
    };
    Ok(LengthStats {
        lengths,
        total,
        sum_sq,
        mean_d,
        mean_d2,
        mean_d0,
    })
}

pub fn crossing_count(
    tree: &Tree,
    arr: &LinearArrangement,
) -> Result<CrossingStats, ArrangementError> {
    check_dims(tree, arr)?;
    let profile = Profile::compute(tree.n(), tree.edges(), arr.positions());
    Ok(CrossingStats {
        crossings: profile.crossings,
        uncrossable: profile.uncrossable,
        planar: profile.crossings == 0,
    })
}

/// Whether two edges, given as position intervals `lo < hi`, strictly
/// interleave.
#[inline]
pub fn interleaved(a: (u32, u32), b: (u32, u32)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

/// Every crossing pair, as indices into the tree's edge list.
pub fn crossing_pairs(
    tree: &Tree,
    arr: &LinearArrangement,
) -> Result<Vec<(usize, usize)>, ArrangementError> {
    check_dims(tree, arr)?;
    let spans = spans(tree.edges(), arr.positions());
    let mut pairs = Vec::new();
    for i in 0..spans.len() {
        for j in i + 1..spans.len() {
            if interleaved(spans[i], spans[j]) {
                pairs.push((i, j));
            }
        }
    }
    Ok(pairs)
}

fn spans(edges: &[(Vertex, Vertex)], positions: &[u32]) -> Vec<(u32, u32)> {
    edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (positions[u as usize - 1], positions[v as usize - 1]);
            (a.min(b), a.max(b))
        })
        .collect()
}

/// All scalar statistics of one arrangement, computed in a single pass over
/// raw position slices. Used by the exhaustive oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub(crate) struct Profile {
    pub total: u64,
    pub sum_sq: u64,
    pub uncrossable: usize,
    pub crossings: u64,
}

impl Profile {
    pub(crate) fn compute(n: usize, edges: &[(Vertex, Vertex)], positions: &[u32]) -> Profile {
        let spans = spans(edges, positions);
        let mut profile = Profile::default();
        for (i, &(lo, hi)) in spans.iter().enumerate() {
            let d = (hi - lo) as u64;
            profile.total += d;
            profile.sum_sq += d * d;
            if d == 1 || d as usize == n - 1 {
                profile.uncrossable += 1;
            }
            for &other in &spans[i + 1..] {
                if interleaved((lo, hi), other) {
                    profile.crossings += 1;
                }
            }
        }
        profile
    }

    pub(crate) fn total_only(edges: &[(Vertex, Vertex)], positions: &[u32]) -> u64 {
        edges
            .iter()
            .map(|&(u, v)| positions[u as usize - 1].abs_diff(positions[v as usize - 1]) as u64)
            .sum()
    }
}
