//! Minor search with replayable witnesses.
//!
//! A simple pattern `N` is a minor of `M` exactly when, for some flat `F` of
//! `M` of rank `r(M) - r(N)`, `N` is isomorphic to a restriction of
//! `si(M / F)`. Contracting a basis of `F` gives the same simplification, so
//! each flat is handled by contracting its lexicographically least basis.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::iso::{are_isomorphic_with_cap, find_embedding};
use crate::error::{Error, Result};
use crate::matroid::set::{singleton, size};
use crate::matroid::{elements, Matroid, Set};

pub const DEFAULT_MINOR_CAP: usize = 30;
pub const MAX_PATTERN_SIZE: usize = 9;
const BRUTE_FORCE_CAP: usize = 10;
/// Hosts up to this size get a full rank table before searching.
const TABULATE_UP_TO: usize = 20;

/// `pattern ≅ host / contract \ delete`, with `mapping` pairing each surviving
/// host label with its pattern label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub contract: Vec<String>,
    pub delete: Vec<String>,
    pub mapping: Vec<(String, String)>,
}

impl MinorWitness {
    /// The minor `host / contract \ delete` relabeled into pattern labels.
    pub fn replay(&self, host: &Matroid) -> Result<Matroid> {
        let minor = host.minor(host.set_of(&self.contract)?, host.set_of(&self.delete)?)?;
        let labels = minor
            .labels()
            .iter()
            .map(|l| {
                self.mapping
                    .iter()
                    .find(|(h, _)| h == l)
                    .map(|(_, p)| p.clone())
                    .ok_or_else(|| Error::Inconsistent(format!("witness leaves {l} unmapped")))
            })
            .collect::<Result<Vec<_>>>()?;
        minor.relabeled(labels)
    }

    /// Replays the witness and compares it with `pattern` label by label.
    pub fn verify(&self, host: &Matroid, pattern: &Matroid) -> bool {
        self.replay(host).map_or(false, |m| crate::matroid::rank_functions_equal(&m, pattern))
    }
}

/// Shapes with a direct test in place of the embedding search.
enum Shape {
    /// `U_{2,n}`: a simplification of rank two with at least `n` points.
    Line(usize),
    /// `U_{2,a} ⊕ U_{2,b}`: two skew lines with at least `a` and `b` points.
    SkewLines(usize, usize),
    General,
}

fn shape(pattern: &Matroid) -> Shape {
    match pattern.rank() {
        2 => Shape::Line(pattern.size()),
        4 => {
            for l in pattern.flats_of_rank(2) {
                let rest = pattern.ground() & !l;
                if pattern.rank_of(rest) == 2 && pattern.is_flat(rest) {
                    let (a, b) = (size(l), size(rest));
                    return Shape::SkewLines(a.max(b), a.min(b));
                }
            }
            Shape::General
        }
        _ => Shape::General,
    }
}

/// A set of elements of the simple matroid `si` realizing the shape, as `si` indices.
fn realize_shape(si: &Matroid, shape: &Shape, pattern: &Matroid) -> Option<Vec<usize>> {
    match *shape {
        Shape::Line(n) => (si.rank() == 2 && si.size() >= n).then(|| (0..n).collect()),
        Shape::SkewLines(a, b) => {
            let lines: Vec<Set> = si.flats_of_rank(2).into_iter().filter(|&l| size(l) >= b).collect();
            for &l1 in lines.iter().filter(|&&l| size(l) >= a) {
                for &l2 in &lines {
                    if l1 & l2 == 0 && si.rank_of(l1 | l2) == 4 {
                        let first: Vec<usize> = elements(l1).take(a).collect();
                        let second: Vec<usize> = elements(l2).take(b).collect();
                        return Some(order_like_pattern(pattern, &first, &second));
                    }
                }
            }
            None
        }
        Shape::General => None,
    }
}

/// Assigns the two point lists to the pattern's two lines.
fn order_like_pattern(pattern: &Matroid, big: &[usize], small: &[usize]) -> Vec<usize> {
    let lines = pattern.flats_of_rank(2);
    let l = lines
        .into_iter()
        .find(|&l| size(l) == big.len() && pattern.rank_of(pattern.ground() & !l) == 2)
        .expect("pattern has the skew-lines shape");
    let mut map = vec![0; pattern.size()];
    for (p, &h) in elements(l).zip(big) {
        map[p] = h;
    }
    for (p, &h) in elements(pattern.ground() & !l).zip(small) {
        map[p] = h;
    }
    map
}

fn lex_basis(m: &Matroid, f: Set) -> Set {
    elements(f).fold(0, |b, x| if m.is_independent(b | singleton(x)) { b | singleton(x) } else { b })
}

fn prepare(host: &Matroid) -> Matroid {
    if host.size() <= TABULATE_UP_TO {
        host.tabulated().expect("within the table cap")
    } else {
        host.memoized()
    }
}

/// Searches for a minor of `host` isomorphic to the simple matroid `pattern`.
pub fn has_minor_with_cap(host: &Matroid, pattern: &Matroid, cap: usize) -> Result<Option<MinorWitness>> {
    if host.size() > cap {
        return Err(Error::TooLarge { size: host.size(), cap });
    }
    if pattern.size() > MAX_PATTERN_SIZE {
        return Err(Error::TooLarge { size: pattern.size(), cap: MAX_PATTERN_SIZE });
    }
    if !pattern.is_simple() {
        return Err(Error::NotSimple);
    }
    if pattern.rank() > host.rank() || pattern.size() > host.size() {
        return Ok(None);
    }
    let host = prepare(host);
    let pattern = pattern.tabulated()?;
    let shape = shape(&pattern);
    let k = host.rank() - pattern.rank();
    let flats = host.flats_of_rank(k);
    let found = flats.par_iter().find_map_first(|&f| {
        let c = lex_basis(&host, f);
        let contracted = host.contract(c);
        let si = contracted.simplify().matroid;
        if si.size() < pattern.size() {
            return None;
        }
        let map = match shape {
            Shape::General => find_embedding(&pattern, &si),
            _ => realize_shape(&si, &shape, &pattern),
        }?;
        Some(witness(&host, c, &si, &pattern, &map))
    });
    Ok(found)
}

/// [`has_minor_with_cap`] with the default cap of 30 host elements.
pub fn has_minor(host: &Matroid, pattern: &Matroid) -> Result<Option<MinorWitness>> {
    has_minor_with_cap(host, pattern, DEFAULT_MINOR_CAP)
}

fn witness(host: &Matroid, contract: Set, si: &Matroid, pattern: &Matroid, map: &[usize]) -> MinorWitness {
    let kept: Vec<&str> = map.iter().map(|&i| si.label(i)).collect();
    let kept_set = kept.iter().fold(0, |s, l| s | singleton(host.index_of(l).expect("si keeps host labels")));
    let mapping = kept.iter().enumerate().map(|(p, h)| (h.to_string(), pattern.label(p).to_string())).collect();
    MinorWitness {
        contract: host.labels_of(contract),
        delete: host.labels_of(host.ground() & !contract & !kept_set),
        mapping,
    }
}

/// Whether some `host / C \ D` is isomorphic to `pattern`, trying every
/// disjoint pair `(C, D)`. Only for hosts of at most 10 elements.
pub fn has_minor_brute_force(host: &Matroid, pattern: &Matroid) -> Result<bool> {
    let n = host.size();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooLarge { size: n, cap: BRUTE_FORCE_CAP });
    }
    let keep_size = pattern.size();
    for keep in 0..(1u64 << n) {
        if size(keep) != keep_size {
            continue;
        }
        let rest = host.ground() & !keep;
        // Every split of the rest into a contracted and a deleted part.
        let mut c = rest;
        loop {
            let minor = host.minor(c, rest & !c)?;
            if minor.rank() == pattern.rank() && are_isomorphic_with_cap(&minor, pattern, BRUTE_FORCE_CAP)?.is_some() {
                return Ok(true);
            }
            if c == 0 {
                break;
            }
            c = (c - 1) & rest;
        }
    }
    Ok(false)
}
