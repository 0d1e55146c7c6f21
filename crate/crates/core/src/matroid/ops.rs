//! Closure, flats, simplification, circuits and connectivity.

use std::collections::HashSet;

use itertools::Itertools;

use super::set::{elements, singleton, size, subsets_of_size, Set};
use super::Matroid;
use crate::error::{Error, Result};

/// A partition `(x, y)` of the ground set that is a vertical `j`-separation
/// for every `j` with `order <= j <= min(r(x), r(y))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerticalSeparation {
    pub x: Set,
    pub y: Set,
    pub order: usize,
}

/// Simplification together with the map from original elements to the index
/// of their parallel-class representative (`None` for loops).
#[derive(Clone, Debug)]
pub struct Simplification {
    pub matroid: Matroid,
    pub representative: Vec<Option<usize>>,
}

impl Matroid {
    pub fn closure(&self, s: Set) -> Set {
        let r = self.rank_of(s);
        elements(self.ground() & !s).fold(
            s,
            |acc, x| {
                if self.rank_of(s | singleton(x)) == r {
                    acc | singleton(x)
                } else {
                    acc
                }
            },
        )
    }

    pub fn is_flat(&self, s: Set) -> bool {
        self.closure(s) == s
    }

    pub fn loops(&self) -> Set {
        self.closure(0)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank_of(singleton(e)) == 0
    }

    /// Flats of rank `k + 1` covering the given rank-`k` flats, sorted.
    fn next_level(&self, level: &[Set]) -> Vec<Set> {
        let mut seen: HashSet<Set> = HashSet::new();
        for &f in level {
            let mut covered = f;
            for x in elements(self.ground() & !f) {
                if covered & singleton(x) != 0 {
                    continue;
                }
                let g = self.closure(f | singleton(x));
                covered |= g;
                seen.insert(g);
            }
        }
        let mut out: Vec<Set> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// All flats of rank `k`, sorted by bitmask.
    pub fn flats_of_rank(&self, k: usize) -> Vec<Set> {
        if k > self.rank() {
            return Vec::new();
        }
        let mut level = vec![self.loops()];
        for _ in 0..k {
            level = self.next_level(&level);
        }
        level
    }

    /// Flats grouped by rank: entry `k` holds the rank-`k` flats.
    pub fn all_flats(&self) -> Vec<Vec<Set>> {
        let mut levels = vec![vec![self.loops()]];
        for _ in 0..self.rank() {
            let next = self.next_level(levels.last().unwrap());
            levels.push(next);
        }
        levels
    }

    /// Flats containing `cl(f)`, grouped by rank above `r(f)`: entry `k` holds
    /// those of rank `r(f) + k`.
    pub fn flats_above(&self, f: Set) -> Vec<Vec<Set>> {
        let mut levels = vec![vec![self.closure(f)]];
        for _ in self.rank_of(f)..self.rank() {
            let next = self.next_level(levels.last().unwrap());
            levels.push(next);
        }
        levels
    }

    /// Number of points (rank-1 flats).
    pub fn epsilon(&self) -> usize {
        self.parallel_classes().len()
    }

    /// Parallel classes of non-loops, each a set; ordered by smallest element.
    pub fn parallel_classes(&self) -> Vec<Set> {
        let loops = self.loops();
        let mut assigned = loops;
        let mut classes = Vec::new();
        for e in 0..self.size() {
            if assigned & singleton(e) != 0 {
                continue;
            }
            let class = self.closure(singleton(e)) & !loops;
            assigned |= class;
            classes.push(class);
        }
        classes
    }

    pub fn is_simple(&self) -> bool {
        self.loops() == 0 && self.epsilon() == self.size()
    }

    /// Deletes loops and keeps the smallest element of each parallel class.
    pub fn simplify(&self) -> Simplification {
        let classes = self.parallel_classes();
        let reps: Set = classes.iter().fold(0, |acc, &c| acc | (c & c.wrapping_neg()));
        let mut representative = vec![None; self.size()];
        for (k, &c) in classes.iter().enumerate() {
            for e in elements(c) {
                representative[e] = Some(k);
            }
        }
        Simplification { matroid: self.restrict(reps), representative }
    }

    pub fn nullity(&self, s: Set) -> usize {
        size(s) - self.rank_of(s)
    }

    pub fn is_circuit(&self, c: Set) -> bool {
        c != 0 && self.nullity(c) == 1 && elements(c).all(|x| self.is_independent(c & !singleton(x)))
    }

    /// Circuits contained in `s` with at most `max_size` elements, by size then bitmask order.
    pub fn circuits_within(&self, s: Set, max_size: usize) -> Vec<Set> {
        let mut out = Vec::new();
        for k in 1..=max_size.min(size(s)) {
            for c in subsets_of_size(s, k) {
                if self.is_circuit(c) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// `r(a) + r(b) - r(a ∪ b)`.
    pub fn local_connectivity(&self, a: Set, b: Set) -> usize {
        self.rank_of(a) + self.rank_of(b) - self.rank_of(a | b)
    }

    /// All bases, in lexicographic order of their sorted element lists.
    pub fn bases(&self) -> Vec<Set> {
        subsets_of_size(self.ground(), self.rank()).into_iter().filter(|&b| self.is_independent(b)).collect()
    }

    /// The unique circuit in `basis + e`, for `e` outside the basis.
    pub fn fundamental_circuit(&self, basis: Set, e: usize) -> Set {
        let with_e = basis | singleton(e);
        elements(basis)
            .filter(|&b| self.is_independent(with_e & !singleton(b)))
            .fold(singleton(e), |acc, b| acc | singleton(b))
    }

    /// First vertical `j`-separation with `j < k`, scanning every bipartition.
    pub fn vertical_separation(&self, k: usize, cap: usize) -> Result<Option<VerticalSeparation>> {
        let n = self.size();
        if n > cap {
            return Err(Error::TooLarge { size: n, cap });
        }
        if k == 0 {
            return Err(Error::InvalidParameter("connectivity order must be positive".into()));
        }
        if n < 2 {
            return Ok(None);
        }
        let ground = self.ground();
        let r = self.rank();
        let mut best: Option<VerticalSeparation> = None;
        // Element 0 always lies in x, so each partition is seen once.
        for rest in 0..(1u64 << (n - 1)) {
            let x = (rest << 1) | 1;
            let y = ground & !x;
            if y == 0 {
                continue;
            }
            let (rx, ry) = (self.rank_of(x), self.rank_of(y));
            let order = rx + ry - r + 1;
            if order <= rx.min(ry) && order < k && best.as_ref().map_or(true, |b| order < b.order) {
                best = Some(VerticalSeparation { x, y, order });
            }
        }
        Ok(best)
    }

    pub fn is_vertically_k_connected(&self, k: usize, cap: usize) -> Result<bool> {
        Ok(self.vertical_separation(k, cap)?.is_none())
    }
}

/// Whether two matroids on the same labels have identical rank functions.
pub fn rank_functions_equal(a: &Matroid, b: &Matroid) -> bool {
    if a.size() != b.size() || a.rank() != b.rank() {
        return false;
    }
    let Ok(map) = a.labels().iter().map(|l| b.index_of(l)).collect::<Result<Vec<usize>>>() else {
        return false;
    };
    // Equal independent sets (all of size at most the common rank) force equal ranks.
    (0..=a.rank()).all(|k| {
        (0..a.size()).combinations(k).all(|sub| {
            let sa = sub.iter().fold(0, |s, &i| s | singleton(i));
            let sb = sub.iter().fold(0, |s, &i| s | singleton(map[i]));
            a.is_independent(sa) == b.is_independent(sb)
        })
    })
}
