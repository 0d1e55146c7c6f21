//! Matroids given by rank oracles.
//!
//! A [`Matroid`] is a cheap-to-clone handle to an immutable oracle. Elements
//! are the indices `0..n` of its ground set, each with a string label; subsets
//! are `u64` bitmasks, so ground sets hold at most 64 elements.

mod json;
mod linear;
mod ops;
pub mod set;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;

pub use json::MatroidJson;
pub use ops::{rank_functions_equal, VerticalSeparation};
pub use set::{elements, Set};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::normal_form::{Field, Representation};
use linear::LinearOracle;
use set::{full_set, size, MAX_GROUND};

/// Where a matroid's rank function comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Uniform,
    LinearRationals,
    LinearPrime(u64),
    Extension,
    Derived,
}

#[derive(Clone)]
pub(crate) enum Kind {
    Uniform {
        rank: usize,
    },
    Linear(Arc<LinearOracle>),
    /// Single-element extension of `base` by the element with the last index.
    /// `minimal` lists the minimal flats of the cut, `cut` all of its flats.
    Extension {
        base: Matroid,
        cut: Arc<Vec<Set>>,
        minimal: Arc<Vec<Set>>,
    },
    /// Element `i` is element `map[i]` of `base`.
    Restriction {
        base: Matroid,
        map: Vec<usize>,
    },
    /// `base / contracted` restricted to `map`.
    Contraction {
        base: Matroid,
        contracted: Set,
        contracted_rank: usize,
        map: Vec<usize>,
    },
    Dual {
        base: Matroid,
    },
    /// The first `left.size()` elements come from `left`.
    DirectSum {
        left: Matroid,
        right: Matroid,
    },
}

enum Cache {
    None,
    Table(Vec<u8>),
    Map(DashMap<Set, u8>),
}

struct Inner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    kind: Kind,
    rank: usize,
    cache: Cache,
}

/// A matroid on at most 64 labeled elements.
#[derive(Clone)]
pub struct Matroid(Arc<Inner>);

fn check_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    if labels.len() > MAX_GROUND {
        return Err(Error::TooLarge { size: labels.len(), cap: MAX_GROUND });
    }
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

pub(crate) fn numbered_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl Matroid {
    fn build(labels: Vec<String>, kind: Kind) -> Result<Matroid> {
        let index = check_labels(&labels)?;
        let n = labels.len();
        let mut inner = Inner { labels, index, kind, rank: 0, cache: Cache::None };
        inner.rank = inner.raw_rank(full_set(n));
        Ok(Matroid(Arc::new(inner)))
    }

    /// `U_{r,n}` with labels `0..n`.
    pub fn uniform(rank: usize, n: usize) -> Result<Matroid> {
        Matroid::uniform_labeled(rank, numbered_labels(n))
    }

    pub fn uniform_labeled(rank: usize, labels: Vec<String>) -> Result<Matroid> {
        if rank > labels.len() {
            return Err(Error::InvalidParameter(format!("U({rank},{}) has rank above its size", labels.len())));
        }
        Matroid::build(labels, Kind::Uniform { rank })
    }

    /// Column matroid of a representation, read over its field.
    pub fn from_representation(rep: &Representation) -> Result<Matroid> {
        let oracle = LinearOracle::new(rep.matrix(), rep.field())?;
        Matroid::build(rep.labels().to_vec(), Kind::Linear(Arc::new(oracle)))
    }

    pub fn from_matrix(matrix: &IntMatrix, field: Field) -> Result<Matroid> {
        let rep = Representation::numbered(matrix.clone()).with_field(field)?;
        Matroid::from_representation(&rep)
    }

    /// Extension by a new element `label` whose spanning flats are exactly `cut`.
    /// The cut is not validated here; see [`crate::extension`].
    pub(crate) fn extension_unchecked(
        base: &Matroid,
        cut: Vec<Set>,
        minimal: Vec<Set>,
        label: &str,
    ) -> Result<Matroid> {
        let mut labels = base.labels().to_vec();
        labels.push(label.to_string());
        Matroid::build(labels, Kind::Extension { base: base.clone(), cut: Arc::new(cut), minimal: Arc::new(minimal) })
    }

    pub fn size(&self) -> usize {
        self.0.labels.len()
    }

    pub fn ground(&self) -> Set {
        full_set(self.size())
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.0.index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Set> {
        labels.iter().try_fold(0, |s, l| Ok(s | set::singleton(self.index_of(l.as_ref())?)))
    }

    pub fn labels_of(&self, s: Set) -> Vec<String> {
        elements(s).map(|i| self.0.labels[i].clone()).collect()
    }

    /// Rank of the whole ground set.
    pub fn rank(&self) -> usize {
        self.0.rank
    }

    /// Rank of a subset of the ground set.
    #[inline]
    pub fn rank_of(&self, s: Set) -> usize {
        debug_assert_eq!(s & !self.ground(), 0, "set outside the ground set");
        match &self.0.cache {
            Cache::None => self.0.raw_rank(s),
            Cache::Table(t) => t[s as usize] as usize,
            Cache::Map(m) => {
                if let Some(r) = m.get(&s) {
                    return *r as usize;
                }
                let r = self.0.raw_rank(s);
                m.insert(s, r as u8);
                r
            }
        }
    }

    pub fn is_independent(&self, s: Set) -> bool {
        self.rank_of(s) == size(s)
    }

    pub fn provenance(&self) -> Provenance {
        match &self.0.kind {
            Kind::Uniform { .. } => Provenance::Uniform,
            Kind::Linear(l) => match l.field() {
                Field::Rationals => Provenance::LinearRationals,
                Field::Prime(p) => Provenance::LinearPrime(p),
            },
            Kind::Extension { .. } => Provenance::Extension,
            _ => Provenance::Derived,
        }
    }

    /// Same oracle with every rank precomputed. Only for ground sets of at most 26 elements.
    pub fn tabulated(&self) -> Result<Matroid> {
        const CAP: usize = 26;
        let n = self.size();
        if n > CAP {
            return Err(Error::TooLarge { size: n, cap: CAP });
        }
        if matches!(self.0.cache, Cache::Table(_)) {
            return Ok(self.clone());
        }
        let table: Vec<u8> = (0..1u64 << n).into_par_iter().map(|s| self.rank_of(s) as u8).collect();
        Ok(self.with_cache(Cache::Table(table)))
    }

    /// Same oracle with a concurrent memo table in front of it.
    pub fn memoized(&self) -> Matroid {
        match self.0.cache {
            Cache::None => self.with_cache(Cache::Map(DashMap::new())),
            _ => self.clone(),
        }
    }

    fn with_cache(&self, cache: Cache) -> Matroid {
        Matroid(Arc::new(Inner {
            labels: self.0.labels.clone(),
            index: self.0.index.clone(),
            kind: self.0.kind.clone(),
            rank: self.0.rank,
            cache,
        }))
    }

    /// Same matroid with new labels, in element order.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Matroid> {
        if labels.len() != self.size() {
            return Err(Error::Dimension(format!("{} labels for {} elements", labels.len(), self.size())));
        }
        Matroid::build(labels, Kind::Restriction { base: self.clone(), map: (0..self.size()).collect() })
    }

    /// Restriction to `s`, elements kept in increasing order.
    pub fn restrict(&self, s: Set) -> Matroid {
        let map: Vec<usize> = elements(s).collect();
        let labels = map.iter().map(|&i| self.0.labels[i].clone()).collect();
        Matroid::build(labels, Kind::Restriction { base: self.clone(), map }).expect("labels stay distinct")
    }

    pub fn delete(&self, s: Set) -> Matroid {
        self.restrict(self.ground() & !s)
    }

    pub fn contract(&self, s: Set) -> Matroid {
        let map: Vec<usize> = elements(self.ground() & !s).collect();
        let labels = map.iter().map(|&i| self.0.labels[i].clone()).collect();
        let kind = Kind::Contraction { base: self.clone(), contracted: s, contracted_rank: self.rank_of(s), map };
        Matroid::build(labels, kind).expect("labels stay distinct")
    }

    /// `self / contract \ delete`, the sets being disjoint.
    pub fn minor(&self, contract: Set, delete: Set) -> Result<Matroid> {
        if contract & delete != 0 {
            return Err(Error::InvalidParameter("contract and delete sets overlap".into()));
        }
        Ok(self.contract(contract).delete_labels(&self.labels_of(delete)))
    }

    fn delete_labels(&self, labels: &[String]) -> Matroid {
        let s = self.set_of(labels).expect("labels present");
        self.delete(s)
    }

    pub fn dual(&self) -> Matroid {
        Matroid::build(self.0.labels.clone(), Kind::Dual { base: self.clone() }).expect("same labels")
    }

    /// Direct sum; the label sets must be disjoint.
    pub fn direct_sum(left: &Matroid, right: &Matroid) -> Result<Matroid> {
        let labels = left.labels().iter().chain(right.labels()).cloned().collect();
        Matroid::build(labels, Kind::DirectSum { left: left.clone(), right: right.clone() })
    }

    pub(crate) fn kind(&self) -> &Kind {
        &self.0.kind
    }

    /// Maps a set of `base` elements through `map` (a list of base indices).
    fn pull(map: &[usize], s: Set) -> Set {
        elements(s).fold(0, |acc, i| acc | set::singleton(map[i]))
    }
}

impl Inner {
    fn raw_rank(&self, s: Set) -> usize {
        match &self.kind {
            Kind::Uniform { rank } => size(s).min(*rank),
            Kind::Linear(l) => l.rank(s),
            Kind::Extension { base, minimal, .. } => {
                let e = set::singleton(base.size());
                let x = s & !e;
                let rx = base.rank_of(x);
                if s & e == 0 {
                    return rx;
                }
                let spans = minimal.iter().any(|&f| base.rank_of(x | f) == rx);
                if spans {
                    rx
                } else {
                    rx + 1
                }
            }
            Kind::Restriction { base, map } => base.rank_of(Matroid::pull(map, s)),
            Kind::Contraction { base, contracted, contracted_rank, map } => {
                base.rank_of(Matroid::pull(map, s) | contracted) - contracted_rank
            }
            Kind::Dual { base } => size(s) + base.rank_of(base.ground() & !s) - base.rank(),
            Kind::DirectSum { left, right } => {
                let k = left.size();
                left.rank_of(s & full_set(k)) + right.rank_of(s >> k)
            }
        }
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matroid {{ size: {}, rank: {}, provenance: {:?}, labels: {:?} }}",
            self.size(),
            self.rank(),
            self.provenance(),
            self.labels()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_ranks() {
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u.rank(), 2);
        assert_eq!(u.rank_of(0b1), 1);
        assert_eq!(u.rank_of(0b111), 2);
        assert!(Matroid::uniform(5, 4).is_err());
    }

    #[test]
    fn derived_constructions() {
        let u = Matroid::uniform(2, 4).unwrap();
        let c = u.contract(0b1);
        assert_eq!((c.size(), c.rank()), (3, 1));
        assert_eq!(c.labels(), &["1", "2", "3"]);
        let d = u.delete(0b1);
        assert_eq!((d.size(), d.rank()), (3, 2));
        let du = u.dual();
        assert_eq!(du.rank(), 2);
        assert_eq!(du.rank_of(0b11), 2);
        let a = Matroid::uniform_labeled(1, vec!["x".into(), "y".into()]).unwrap();
        let s = Matroid::direct_sum(&u, &a).unwrap();
        assert_eq!((s.size(), s.rank()), (6, 3));
        assert_eq!(s.rank_of(0b110000), 1);
        assert!(matches!(Matroid::direct_sum(&u, &u), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn caches_agree() {
        let m = Matroid::from_matrix(&IntMatrix::from_rows(&[[1, 0, 1, 1], [0, 1, -1, 1]]).unwrap(), Field::Rationals)
            .unwrap();
        let t = m.tabulated().unwrap();
        let memo = m.memoized();
        for s in 0..16 {
            assert_eq!(m.rank_of(s), t.rank_of(s));
            assert_eq!(m.rank_of(s), memo.rank_of(s));
            assert_eq!(m.rank_of(s), memo.rank_of(s));
        }
    }

    #[test]
    fn oversized_ground_set_rejected() {
        assert!(matches!(Matroid::uniform(1, 65), Err(Error::TooLarge { .. })));
    }
}
