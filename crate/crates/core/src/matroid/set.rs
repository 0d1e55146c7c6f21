//! Element subsets as bitmasks over a ground set of at most 64 elements.

use itertools::Itertools;

pub type Set = u64;

pub const MAX_GROUND: usize = 64;

/// Iterator over the elements of a set in increasing order.
#[derive(Clone, Copy, Debug)]
pub struct Elements(Set);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

#[inline]
pub fn elements(set: Set) -> Elements {
    Elements(set)
}

#[inline]
pub fn full_set(n: usize) -> Set {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn singleton(i: usize) -> Set {
    1u64 << i
}

#[inline]
pub fn size(set: Set) -> usize {
    set.count_ones() as usize
}

pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Set {
    it.into_iter().fold(0, |s, i| s | singleton(i))
}

/// All subsets of `universe` with exactly `k` elements, in lexicographic order.
pub fn subsets_of_size(universe: Set, k: usize) -> Vec<Set> {
    elements(universe).combinations(k).map(from_indices).collect()
}
