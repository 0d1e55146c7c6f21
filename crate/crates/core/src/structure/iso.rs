//! Isomorphisms and embeddings by backtracking on independence.
//!
//! Pattern elements are placed one at a time in a fixed order. Placing
//! element `p` at host element `h` is accepted when, for every
//! pattern-independent set `S` of already placed elements (up to a size
//! limit), `S + p` and its image are simultaneously independent or dependent.
//! When the limit covers every independent set the test is exact by
//! induction; otherwise a complete independence comparison runs at each leaf.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matroid::set::{singleton, size};
use crate::matroid::{elements, Matroid, Set};

pub const DEFAULT_ISO_CAP: usize = 14;

/// Largest `|S|` checked while placing; bigger sets wait for the leaf check.
const INCREMENTAL_LIMIT: usize = 3;

/// Loop flag, parallel-class size, sorted sizes of the lines through the element.
type Signature = (bool, usize, Vec<usize>);

fn signatures(m: &Matroid) -> Vec<Signature> {
    let loops = m.loops();
    let lines = if m.rank() >= 2 { m.flats_of_rank(2) } else { Vec::new() };
    (0..m.size())
        .map(|e| {
            if loops & singleton(e) != 0 {
                return (true, 0, Vec::new());
            }
            let class = size(m.closure(singleton(e)) & !loops);
            let mut through: Vec<usize> =
                lines.iter().filter(|&&l| l & singleton(e) != 0).map(|&l| size(l & !loops)).collect();
            through.sort_unstable();
            (false, class, through)
        })
        .collect()
}

struct Step {
    element: usize,
    /// Pattern-independent sets of earlier positions, with whether adding `element` stays independent.
    checks: Vec<(Set, bool)>,
    candidates: Vec<usize>,
}

struct Search<'a> {
    host: &'a Matroid,
    pattern: &'a Matroid,
    steps: Vec<Step>,
    complete: bool,
}

/// Placement order: each next element closes as many 3-element circuits with
/// placed pairs as possible, then prefers elements spanned by the placed set.
fn placement_order(pattern: &Matroid, candidate_counts: &[usize]) -> Vec<usize> {
    let n = pattern.size();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed: Set = 0;
    while order.len() < n {
        let best = elements(pattern.ground() & !placed)
            .max_by_key(|&p| {
                let mut triangles = 0usize;
                for (i, &a) in order.iter().enumerate() {
                    for &b in &order[i + 1..] {
                        let t = singleton(a) | singleton(b) | singleton(p);
                        if pattern.rank_of(t) == 2 && pattern.is_independent(singleton(a) | singleton(b)) {
                            triangles += 1;
                        }
                    }
                }
                let spanned = pattern.rank_of(placed | singleton(p)) == pattern.rank_of(placed);
                (triangles, spanned, std::cmp::Reverse(candidate_counts[p]), std::cmp::Reverse(p))
            })
            .expect("an unplaced element remains");
        order.push(best);
        placed |= singleton(best);
    }
    order
}

/// Pattern-independent subsets of `positions` (as position masks) with at most `limit` elements.
fn independent_position_sets(pattern: &Matroid, order: &[usize], k: usize, limit: usize) -> Vec<Set> {
    fn grow(
        pattern: &Matroid,
        order: &[usize],
        k: usize,
        limit: usize,
        start: usize,
        pos: Set,
        el: Set,
        out: &mut Vec<Set>,
    ) {
        out.push(pos);
        if size(pos) == limit {
            return;
        }
        for i in start..k {
            let next = el | singleton(order[i]);
            if pattern.is_independent(next) {
                grow(pattern, order, k, limit, i + 1, pos | singleton(i), next, out);
            }
        }
    }
    let mut out = Vec::new();
    grow(pattern, order, k, limit, 0, 0, 0, &mut out);
    out
}

fn to_elements(order: &[usize], pos: Set) -> Set {
    elements(pos).fold(0, |acc, i| acc | singleton(order[i]))
}

impl<'a> Search<'a> {
    fn new(pattern: &'a Matroid, host: &'a Matroid, candidates: Vec<Vec<usize>>) -> Self {
        let counts: Vec<usize> = candidates.iter().map(Vec::len).collect();
        let order = placement_order(pattern, &counts);
        let r = pattern.rank();
        let limit = r.min(INCREMENTAL_LIMIT);
        let steps = order
            .iter()
            .enumerate()
            .map(|(k, &p)| {
                let checks = independent_position_sets(pattern, &order, k, limit)
                    .into_iter()
                    .map(|pos| {
                        let s = to_elements(&order, pos);
                        (pos, pattern.is_independent(s | singleton(p)))
                    })
                    .collect();
                Step { element: p, checks, candidates: candidates[p].clone() }
            })
            .collect();
        Search { host, pattern, steps, complete: limit >= r }
    }

    fn fits(&self, k: usize, h: usize, image: &[usize]) -> bool {
        self.steps[k].checks.iter().all(|&(pos, indep)| {
            let s = elements(pos).fold(singleton(h), |acc, i| acc | singleton(image[i]));
            self.host.is_independent(s) == indep
        })
    }

    fn run(&self) -> Option<Vec<usize>> {
        let mut image = Vec::with_capacity(self.steps.len());
        if self.dfs(0, &mut image, 0) {
            let mut map = vec![0; self.pattern.size()];
            for (step, &h) in self.steps.iter().zip(&image) {
                map[step.element] = h;
            }
            Some(map)
        } else {
            None
        }
    }

    fn dfs(&self, k: usize, image: &mut Vec<usize>, used: Set) -> bool {
        if k == self.steps.len() {
            if self.complete {
                return true;
            }
            let mut map = vec![0; self.pattern.size()];
            for (step, &h) in self.steps.iter().zip(image.iter()) {
                map[step.element] = h;
            }
            return preserves_independence(self.pattern, self.host, &map);
        }
        for &h in &self.steps[k].candidates {
            if used & singleton(h) != 0 || !self.fits(k, h, image) {
                continue;
            }
            image.push(h);
            if self.dfs(k + 1, image, used | singleton(h)) {
                return true;
            }
            image.pop();
        }
        false
    }
}

/// Whether `map` (pattern index to host index) sends independent sets to
/// independent sets and dependent sets to dependent sets.
pub fn preserves_independence(pattern: &Matroid, host: &Matroid, map: &[usize]) -> bool {
    fn walk(pattern: &Matroid, host: &Matroid, map: &[usize], start: usize, s: Set, t: Set) -> bool {
        for p in start..pattern.size() {
            let (s2, t2) = (s | singleton(p), t | singleton(map[p]));
            let pi = pattern.is_independent(s2);
            if pi != host.is_independent(t2) {
                return false;
            }
            if pi && !walk(pattern, host, map, p + 1, s2, t2) {
                return false;
            }
        }
        true
    }
    map.len() == pattern.size() && walk(pattern, host, map, 0, 0, 0)
}

/// An isomorphism from `m` to `n` as the list of images of `m`'s elements,
/// if one exists. Ground sets above `cap` elements are refused.
pub fn are_isomorphic_with_cap(m: &Matroid, n: &Matroid, cap: usize) -> Result<Option<Vec<usize>>> {
    if m.size() > cap || n.size() > cap {
        return Err(Error::TooLarge { size: m.size().max(n.size()), cap });
    }
    if m.size() != n.size() || m.rank() != n.rank() {
        return Ok(None);
    }
    let (sm, sn) = (signatures(m), signatures(n));
    let mut by_sig: HashMap<&Signature, Vec<usize>> = HashMap::new();
    for (i, s) in sn.iter().enumerate() {
        by_sig.entry(s).or_default().push(i);
    }
    let mut count_m: HashMap<&Signature, usize> = HashMap::new();
    for s in &sm {
        *count_m.entry(s).or_default() += 1;
    }
    if count_m.len() != by_sig.len() || count_m.iter().any(|(s, &c)| by_sig.get(s).map_or(0, Vec::len) != c) {
        return Ok(None);
    }
    let candidates = sm.iter().map(|s| by_sig[s].clone()).collect();
    Ok(Search::new(m, n, candidates).run())
}

/// [`are_isomorphic_with_cap`] with the default cap of 14 elements.
pub fn are_isomorphic(m: &Matroid, n: &Matroid) -> Result<Option<Vec<usize>>> {
    are_isomorphic_with_cap(m, n, DEFAULT_ISO_CAP)
}

/// An injective map from `pattern` into `host` under which `pattern` is the
/// restriction of `host` to the image. Loops go to loops.
pub fn find_embedding(pattern: &Matroid, host: &Matroid) -> Option<Vec<usize>> {
    if pattern.size() > host.size() || pattern.rank() > host.rank() {
        return None;
    }
    let (pl, hl) = (pattern.loops(), host.loops());
    let candidates = (0..pattern.size())
        .map(|p| {
            let want_loop = pl & singleton(p) != 0;
            (0..host.size()).filter(|&h| (hl & singleton(h) != 0) == want_loop).collect()
        })
        .collect();
    Search::new(pattern, host, candidates).run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use crate::matroid::rank_functions_equal;
    use crate::normal_form::Field;

    fn fano(field: Field) -> Matroid {
        let m = IntMatrix::from_rows(&[[1, 0, 0, 1, 1, 0, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 0, 1, 1, 1]]).unwrap();
        Matroid::from_matrix(&m, field).unwrap()
    }

    #[test]
    fn uniform_matroids_are_isomorphic_to_themselves() {
        let u = Matroid::uniform(2, 4).unwrap();
        let map = are_isomorphic(&u, &u).unwrap().unwrap();
        assert!(preserves_independence(&u, &u, &map));
        // Every bijection works for a uniform matroid.
        assert!(preserves_independence(&u, &u, &[3, 1, 0, 2]));
    }

    #[test]
    fn fano_is_not_non_fano() {
        let f7 = fano(Field::Prime(2));
        let f7m = fano(Field::Prime(3));
        assert!(are_isomorphic(&f7, &f7m).unwrap().is_none());
        assert!(are_isomorphic(&f7, &f7).unwrap().is_some());
    }

    #[test]
    fn relabeled_permutation_is_recovered() {
        let f7 = fano(Field::Prime(2));
        let perm = [4usize, 2, 6, 0, 1, 5, 3];
        let shuffled = f7.restrict(f7.ground());
        let labels: Vec<String> = (0..7).map(|i| format!("x{}", perm[i])).collect();
        let shuffled = shuffled.relabeled(labels).unwrap();
        let map = are_isomorphic(&f7, &shuffled).unwrap().unwrap();
        assert!(preserves_independence(&f7, &shuffled, &map));
        assert!(rank_functions_equal(&f7, &f7));
    }

    #[test]
    fn size_cap_is_enforced() {
        let u = Matroid::uniform(2, 15).unwrap();
        assert!(matches!(are_isomorphic(&u, &u), Err(Error::TooLarge { .. })));
        assert!(are_isomorphic_with_cap(&u, &u, 15).unwrap().is_some());
    }

    #[test]
    fn embeddings() {
        let u25 = Matroid::uniform(2, 5).unwrap();
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert!(find_embedding(&u24, &u25).is_some());
        assert!(find_embedding(&u25, &u24).is_none());
        // The Fano plane has 3-point lines only.
        assert!(find_embedding(&u24, &fano(Field::Prime(2))).is_none());
        let f7 = fano(Field::Prime(2));
        let u23 = Matroid::uniform(2, 3).unwrap();
        let map = find_embedding(&u23, &f7).unwrap();
        assert_eq!(f7.rank_of(map.iter().fold(0, |s, &h| s | singleton(h))), 2);
    }

    #[test]
    fn loops_and_parallel_elements() {
        let m = Matroid::from_matrix(&IntMatrix::from_rows(&[[1, 1, 0, 0]]).unwrap(), Field::Rationals).unwrap();
        let n = Matroid::from_matrix(&IntMatrix::from_rows(&[[0, 2, 0, 1]]).unwrap(), Field::Rationals).unwrap();
        let map = are_isomorphic(&m, &n).unwrap().unwrap();
        assert!(preserves_independence(&m, &n, &map));
        let k = Matroid::from_matrix(&IntMatrix::from_rows(&[[1, 0, 0, 0]]).unwrap(), Field::Rationals).unwrap();
        assert!(are_isomorphic(&m, &k).unwrap().is_none());
    }
}
