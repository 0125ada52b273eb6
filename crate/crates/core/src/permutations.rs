use alloc::vec::Vec;

/// Lexicographic stream of the permutations of `1..=n`.
///
/// Implemented as a lending cursor: call [`Permutations::advance`] and read
/// [`Permutations::current`], so no allocation happens per permutation.
#[derive(Debug, Clone)]
pub struct Permutations {
    current: Vec<u32>,
    started: bool,
    exhausted: bool,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            current: (1..=n as u32).collect(),
            started: false,
            exhausted: false,
        }
    }

    /// Moves to the next permutation; returns false once every permutation
    /// has been visited.
    pub fn advance(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        if next_permutation(&mut self.current) {
            true
        } else {
            self.exhausted = true;
            false
        }
    }

    pub fn current(&self) -> &[u32] {
        &self.current
    }
}

/// Rearranges `items` into the next permutation in lexicographic order.
/// Returns false (leaving `items` untouched) at the last permutation.
pub(crate) fn next_permutation(items: &mut [u32]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let Some(pivot) = (0..items.len() - 1)
        .rev()
        .find(|&i| items[i] < items[i + 1])
    else {
        return false;
    };
    let successor = (pivot + 1..items.len())
        .rev()
        .find(|&j| items[j] > items[pivot])
        .expect("pivot has a larger element to its right");
    items.swap(pivot, successor);
    items[pivot + 1..].reverse();
    true
}
