//! Labeled undirected trees and their degree statistics.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{int, rat, Rational};

/// Vertex identifier, 1-based.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} is outside 1..={n}")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("a tree on {n} vertices has {expected} edges, found {found}")]
    WrongEdgeCount {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge ({0}, {1}) closes a cycle, so the graph is disconnected")]
    CycleOrDisconnected(Vertex, Vertex),
    #[error("n = {0} is outside the supported enumeration range 2..=8")]
    EnumerationRange(usize),
}

/// An undirected labeled tree on vertices `1..=n`.
///
/// Edges are kept as `(u, v)` with `u < v`, sorted, so two trees with the same
/// edge set compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Tree {
    /// Checks that `edges` form a tree on `1..=n`.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v as usize > n {
                    return Err(TreeError::OutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(TreeError::SelfLoop(a));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        let mut sorted = normalized.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(TreeError::DuplicateEdge(w[0].0, w[0].1));
        }
        if normalized.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount {
                n,
                expected: n - 1,
                found: normalized.len(),
            });
        }
        let mut components = DisjointSets::new(n);
        for &(u, v) in &normalized {
            if !components.union(u as usize - 1, v as usize - 1) {
                return Err(TreeError::CycleOrDisconnected(u, v));
            }
        }
        Ok(Tree { n, edges: sorted })
    }

    /// Path `1 - 2 - ... - n`.
    pub fn linear(n: usize) -> Tree {
        assert!(n >= 1, "a tree needs at least one vertex");
        let edges = (1..n as Vertex).map(|i| (i, i + 1)).collect();
        Tree { n, edges }
    }

    /// Star with hub `1` joined to every other vertex.
    pub fn star(n: usize) -> Tree {
        assert!(n >= 1, "a tree needs at least one vertex");
        let edges = (2..=n as Vertex).map(|j| (1, j)).collect();
        Tree { n, edges }
    }

    /// Decodes a Prüfer sequence of length `n - 2` over `1..=n`.
    ///
    /// Panics if an entry is out of range.
    pub fn from_prufer(n: usize, code: &[Vertex]) -> Tree {
        assert!(
            n >= 2 && code.len() == n - 2,
            "Prüfer code must have n - 2 entries"
        );
        let mut degree = vec![1u32; n + 1];
        for &c in code {
            assert!(c >= 1 && c as usize <= n, "Prüfer entry {c} out of range");
            degree[c as usize] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &c in code {
            let leaf = (1..=n)
                .find(|&v| degree[v] == 1)
                .expect("a leaf always exists");
            edges.push(ordered(leaf as Vertex, c));
            degree[leaf] = 0;
            degree[c as usize] -= 1;
        }
        let mut rest = (1..=n).filter(|&v| degree[v] == 1);
        let (u, v) = (rest.next().unwrap(), rest.next().unwrap());
        edges.push(ordered(u as Vertex, v as Vertex));
        edges.sort_unstable();
        Tree { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Degree of each vertex, indexed by `vertex - 1`.
    pub fn degrees(&self) -> Vec<u32> {
        let mut degrees = vec![0u32; self.n];
        for &(u, v) in &self.edges {
            degrees[u as usize - 1] += 1;
            degrees[v as usize - 1] += 1;
        }
        degrees
    }

    /// True when no vertex has degree above two.
    pub fn is_path(&self) -> bool {
        self.degrees().iter().all(|&k| k <= 2)
    }

    /// True when some vertex is adjacent to all others.
    pub fn is_star(&self) -> bool {
        self.n <= 2 || self.degrees().iter().any(|&k| k as usize == self.n - 1)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {{", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({u},{v})")?;
        }
        f.write_str("}")
    }
}

fn ordered(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    (a.min(b), a.max(b))
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Degree moments of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub degrees: Vec<u32>,
    /// Sum of squared degrees.
    pub k2_sum: u64,
    pub mean_k: Rational,
    pub mean_k2: Rational,
    /// Degree variance, `mean_k2 - mean_k^2`.
    pub var_k: Rational,
}

pub fn degree_stats(tree: &Tree) -> DegreeStats {
    let degrees = tree.degrees();
    let n = tree.n() as i64;
    let k_sum: u64 = degrees.iter().map(|&k| k as u64).sum();
    let k2_sum: u64 = degrees.iter().map(|&k| (k as u64) * (k as u64)).sum();
    let mean_k = rat(k_sum as i64, n);
    let mean_k2 = rat(k2_sum as i64, n);
    let var_k = mean_k2 - mean_k * mean_k;
    DegreeStats {
        degrees,
        k2_sum,
        mean_k,
        mean_k2,
        var_k,
    }
}

/// Yields every labeled tree on `n` vertices once, in lexicographic order of
/// Prüfer codes.
pub fn enumerate_trees(n: usize) -> Result<LabeledTrees, TreeError> {
    if !(2..=8).contains(&n) {
        return Err(TreeError::EnumerationRange(n));
    }
    Ok(LabeledTrees::new(n))
}

/// Iterator over all `n^(n-2)` labeled trees on `n` vertices.
#[derive(Debug, Clone)]
pub struct LabeledTrees {
    n: usize,
    code: Vec<Vertex>,
    done: bool,
}

impl LabeledTrees {
    fn new(n: usize) -> Self {
        LabeledTrees {
            n,
            code: vec![1; n.saturating_sub(2)],
            done: n < 2,
        }
    }
}

impl Iterator for LabeledTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.done {
            return None;
        }
        let tree = Tree::from_prufer(self.n, &self.code);
        // odometer increment, last digit fastest
        self.done = true;
        for digit in self.code.iter_mut().rev() {
            if (*digit as usize) < self.n {
                *digit += 1;
                self.done = false;
                break;
            }
            *digit = 1;
        }
        Some(tree)
    }
}

/// `4 - 6/n`, the second degree moment of a path.
pub fn linear_mean_k2(n: usize) -> Rational {
    int(4) - rat(6, n as i64)
}

/// `n - 1`, the second degree moment of a star.
pub fn star_mean_k2(n: usize) -> Rational {
    int(n as i64 - 1)
}

/// `(2/n)(1 - 2/n)`, the degree variance of a path.
pub fn linear_var_k(n: usize) -> Rational {
    let n = n as i64;
    rat(2, n) * (int(1) - rat(2, n))
}

/// `n - 5 + (4/n)(2 - 1/n)`, the degree variance of a star.
pub fn star_var_k(n: usize) -> Rational {
    let n = n as i64;
    int(n - 5) + rat(4, n) * (int(2) - rat(1, n))
}
