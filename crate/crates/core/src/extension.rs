//! Modular cuts, single-element extensions and elementary projections.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::set::{elements, singleton, size, Set};
use crate::matroid::Matroid;

/// Why a family of flats fails to be a modular cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutViolation {
    /// `member` is in the family but the flat `cover` above it is not.
    NotUpwardClosed { member: Set, cover: Set },
    /// `a` and `b` are a modular pair in the family, their intersection is not.
    ModularPair { a: Set, b: Set },
}

/// All flats of a matroid, grouped by rank, with covering relations on demand.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    levels: Vec<Vec<Set>>,
    members: HashSet<Set>,
}

impl FlatLattice {
    pub fn new(m: &Matroid) -> Self {
        let levels = m.all_flats();
        let members = levels.iter().flatten().copied().collect();
        FlatLattice { levels, members }
    }

    pub fn levels(&self) -> &[Vec<Set>] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: Set) -> bool {
        self.members.contains(&f)
    }

    /// Flats in order of rank, then bitmask.
    pub fn ordered(&self) -> Vec<Set> {
        self.levels.iter().flatten().copied().collect()
    }

    pub fn bottom(&self) -> Set {
        self.levels[0][0]
    }

    /// Flats of rank one more than `rank` that contain `f`.
    fn covers(&self, f: Set, rank: usize) -> impl Iterator<Item = Set> + '_ {
        self.levels.get(rank + 1).into_iter().flatten().copied().filter(move |&g| g & f == f)
    }

    /// Every flat containing one of `seeds`.
    pub fn up_closure(&self, seeds: &[Set]) -> Vec<Set> {
        self.ordered().into_iter().filter(|&g| seeds.iter().any(|&f| g & f == f)).collect()
    }
}

fn is_modular_pair(m: &Matroid, a: Set, b: Set) -> bool {
    m.rank_of(a) + m.rank_of(b) == m.rank_of(a | b) + m.rank_of(a & b)
}

/// Checks both closure rules. Every member must be a flat of `base`.
pub fn check_modular_cut(base: &Matroid, flats: &[Set]) -> Result<Option<CutViolation>> {
    let lattice = FlatLattice::new(base);
    check_with_lattice(base, &lattice, flats)
}

fn check_with_lattice(base: &Matroid, lattice: &FlatLattice, flats: &[Set]) -> Result<Option<CutViolation>> {
    if flats.iter().any(|&f| !lattice.contains(f)) {
        return Err(Error::NotAFlat);
    }
    let family: HashSet<Set> = flats.iter().copied().collect();
    for &f in flats {
        if let Some(cover) = lattice.covers(f, base.rank_of(f)).find(|g| !family.contains(g)) {
            return Ok(Some(CutViolation::NotUpwardClosed { member: f, cover }));
        }
    }
    let mut sorted: Vec<Set> = family.iter().copied().collect();
    sorted.sort_unstable();
    for (i, &a) in sorted.iter().enumerate() {
        for &b in &sorted[i + 1..] {
            if !family.contains(&(a & b)) && is_modular_pair(base, a, b) {
                return Ok(Some(CutViolation::ModularPair { a, b }));
            }
        }
    }
    Ok(None)
}

pub fn is_modular_cut(base: &Matroid, flats: &[Set]) -> Result<bool> {
    Ok(check_modular_cut(base, flats)?.is_none())
}

/// A modular cut of a fixed base matroid.
#[derive(Clone, Debug)]
pub struct ModularCut {
    base: Matroid,
    /// Sorted by rank, then bitmask.
    flats: Vec<Set>,
    minimal: Vec<Set>,
}

fn minimal_members(flats: &[Set]) -> Vec<Set> {
    flats.iter().copied().filter(|&f| !flats.iter().any(|&g| g != f && g & f == g)).collect()
}

impl ModularCut {
    /// Validates `flats` as a modular cut of `base`.
    pub fn new(base: &Matroid, flats: Vec<Set>) -> Result<Self> {
        match check_modular_cut(base, &flats)? {
            None => Ok(ModularCut::from_valid(base, flats)),
            Some(v) => Err(Error::InvalidCut(format!("{v:?}"))),
        }
    }

    fn from_valid(base: &Matroid, flats: Vec<Set>) -> Self {
        let mut flats = flats;
        flats.sort_unstable_by_key(|&f| (base.rank_of(f), f));
        flats.dedup();
        let minimal = minimal_members(&flats);
        ModularCut { base: base.clone(), flats, minimal }
    }

    /// Least modular cut containing every seed flat.
    pub fn generated(base: &Matroid, seeds: &[Set]) -> Result<Self> {
        let lattice = FlatLattice::new(base);
        Self::generated_in(base, &lattice, seeds)
    }

    pub fn generated_in(base: &Matroid, lattice: &FlatLattice, seeds: &[Set]) -> Result<Self> {
        if seeds.iter().any(|&f| !lattice.contains(f)) {
            return Err(Error::NotAFlat);
        }
        let mut gens: Vec<Set> = seeds.to_vec();
        loop {
            let family = lattice.up_closure(&gens);
            let members: HashSet<Set> = family.iter().copied().collect();
            let mut added = false;
            'outer: for (i, &a) in family.iter().enumerate() {
                for &b in &family[i + 1..] {
                    if !members.contains(&(a & b)) && is_modular_pair(base, a, b) {
                        gens.push(a & b);
                        added = true;
                        break 'outer;
                    }
                }
            }
            if !added {
                return Ok(ModularCut::from_valid(base, family));
            }
        }
    }

    /// The principal cut of all flats containing `f`.
    pub fn principal(base: &Matroid, f: Set) -> Result<Self> {
        if !base.is_flat(f) {
            return Err(Error::NotAFlat);
        }
        Ok(ModularCut::from_valid(base, base.flats_above(f).concat()))
    }

    /// Every flat containing one of `seeds`, taken as a modular cut without
    /// checking the modular-pair rule. Callers vouch for that rule.
    pub(crate) fn upward_unchecked(base: &Matroid, seeds: &[Set]) -> Self {
        let flats = seeds.iter().flat_map(|&f| base.flats_above(f).concat()).collect();
        ModularCut::from_valid(base, flats)
    }

    pub fn empty(base: &Matroid) -> Self {
        ModularCut { base: base.clone(), flats: Vec::new(), minimal: Vec::new() }
    }

    pub fn base(&self) -> &Matroid {
        &self.base
    }

    pub fn flats(&self) -> &[Set] {
        &self.flats
    }

    pub fn minimal_flats(&self) -> &[Set] {
        &self.minimal
    }

    pub fn contains(&self, f: Set) -> bool {
        self.flats.binary_search_by_key(&(self.base.rank_of(f), f), |&g| (self.base.rank_of(g), g)).is_ok()
    }

    /// A cut is proper unless it contains the smallest flat, and with it every flat.
    pub fn is_proper(&self) -> bool {
        !self.contains(self.base.loops())
    }

    /// Single-element extension in which exactly the flats of the cut span `label`.
    pub fn extend(&self, label: &str) -> Result<Matroid> {
        if !self.is_proper() {
            return Err(Error::ImproperCut);
        }
        Matroid::extension_unchecked(&self.base, self.flats.clone(), self.minimal.clone(), label)
    }

    /// The extension with the new element contracted.
    pub fn project(&self, label: &str) -> Result<Matroid> {
        if self.flats.is_empty() {
            return Err(Error::InvalidCut("the empty cut adds a coloop; projecting it changes nothing".into()));
        }
        let n = self.extend(label)?;
        Ok(n.contract(singleton(n.size() - 1)))
    }
}

pub fn extend(base: &Matroid, cut: &ModularCut, label: &str) -> Result<Matroid> {
    if base.labels() != cut.base().labels() {
        return Err(Error::InvalidCut("cut belongs to another matroid".into()));
    }
    cut.extend(label)
}

pub fn elementary_projection(base: &Matroid, cut: &ModularCut, label: &str) -> Result<Matroid> {
    if base.labels() != cut.base().labels() {
        return Err(Error::InvalidCut("cut belongs to another matroid".into()));
    }
    cut.project(label)
}

/// Every proper modular cut, ordered lexicographically by the list of its
/// minimal flats (flats indexed by rank, then bitmask).
pub fn enumerate_modular_cuts(base: &Matroid, cap: usize) -> Result<Vec<ModularCut>> {
    let lattice = FlatLattice::new(base);
    if lattice.len() > cap {
        return Err(Error::TooLarge { size: lattice.len(), cap });
    }
    let order: Vec<Set> = lattice.ordered().into_iter().skip(1).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    search_antichains(base, &lattice, &order, 0, &mut chosen, &mut out);
    Ok(out)
}

/// Depth-first search over antichains whose members are pairwise not modular
/// pairs; the minimal flats of a modular cut always have that property, since
/// the intersection of a modular pair would be a smaller member.
fn search_antichains(
    base: &Matroid,
    lattice: &FlatLattice,
    order: &[Set],
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<ModularCut>,
) {
    let gens: Vec<Set> = chosen.iter().map(|&i| order[i]).collect();
    let family = lattice.up_closure(&gens);
    if check_with_lattice(base, lattice, &family).expect("members are flats").is_none() {
        out.push(ModularCut::from_valid(base, family));
    }
    for i in start..order.len() {
        let f = order[i];
        let compatible = gens.iter().all(|&g| g & f != g && g & f != f && !is_modular_pair(base, g, f));
        if compatible {
            chosen.push(i);
            search_antichains(base, lattice, order, i + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// How an element outside a spanning clique attaches to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExtensionType {
    /// Freely placed on a 3-point line of the clique.
    TypeA { line: Set },
    /// Spanned exactly by the flats containing one of two 2-point lines whose
    /// union is a 4-element circuit.
    TypeB { lines: [Set; 2], circuit: Set },
    /// Anything else; the minimal spanning flats are recorded.
    Other { minimal: Vec<Set> },
}

/// Minimal flats of `M|x` that span `e` in `M`; sets are in `M`'s indices.
pub fn minimal_spanning_flats(m: &Matroid, x: Set, e: usize) -> Vec<Set> {
    let restricted = m.restrict(x);
    let map: Vec<usize> = elements(x).collect();
    let lift = |s: Set| elements(s).fold(0, |acc, i| acc | singleton(map[i]));
    let mut spanning = Vec::new();
    for level in restricted.all_flats() {
        for f in level {
            let g = lift(f);
            if m.rank_of(g | singleton(e)) == m.rank_of(g) {
                spanning.push(g);
            }
        }
    }
    minimal_members(&spanning)
}

/// Classifies `e` against the clique restriction `M|x`. The caller is
/// responsible for `M|x` being a clique; see [`crate::structure`] for the
/// checked entry point.
pub fn classify_against(m: &Matroid, x: Set, e: usize) -> ExtensionType {
    let minimal = minimal_spanning_flats(m, x, e);
    match minimal.as_slice() {
        [l] if m.rank_of(*l) == 2 && size(*l) == 3 => ExtensionType::TypeA { line: *l },
        [a, b] if size(*a) == 2 && size(*b) == 2 && m.rank_of(*a) == 2 && m.rank_of(*b) == 2 && m.is_circuit(a | b) => {
            ExtensionType::TypeB { lines: [*a, *b], circuit: a | b }
        }
        _ => ExtensionType::Other { minimal },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use crate::normal_form::Field;

    /// M(K_4): elements 01 02 03 12 13 23.
    fn k4() -> Matroid {
        Matroid::from_matrix(
            &IntMatrix::from_rows(&[[1, 0, 0, 1, 1, 0], [0, 1, 0, -1, 0, 1], [0, 0, 1, 0, -1, -1]]).unwrap(),
            Field::Rationals,
        )
        .unwrap()
    }

    #[test]
    fn empty_cut_adds_a_coloop() {
        let m = k4();
        assert!(is_modular_cut(&m, &[]).unwrap());
        let n = ModularCut::empty(&m).extend("e").unwrap();
        assert_eq!(n.rank(), 4);
    }

    #[test]
    fn principal_triangle_cut() {
        let m = k4();
        let tri = 0b1011;
        let cut = ModularCut::principal(&m, tri).unwrap();
        assert!(is_modular_cut(&m, cut.flats()).unwrap());
        assert_eq!(cut.minimal_flats(), &[tri]);
        let n = cut.extend("e").unwrap();
        let e = n.size() - 1;
        assert_eq!(n.closure(tri) & singleton(e), singleton(e));
        // Crapo: the flats spanning e are exactly the cut.
        let spanning: Vec<Set> = FlatLattice::new(&m)
            .ordered()
            .into_iter()
            .filter(|&f| n.rank_of(f | singleton(e)) == n.rank_of(f))
            .collect();
        assert_eq!(spanning, cut.flats());
        assert_eq!(classify_against(&n, m.ground(), e), ExtensionType::TypeA { line: tri });
    }

    #[test]
    fn non_flats_and_violations() {
        let m = k4();
        assert_eq!(check_modular_cut(&m, &[0b11]), Err(Error::NotAFlat));
        let v = check_modular_cut(&m, &[0b1011]).unwrap();
        assert!(matches!(v, Some(CutViolation::NotUpwardClosed { .. })));
        // Two points and everything above them: they form a modular pair meeting in the empty flat.
        let lattice = FlatLattice::new(&m);
        let fam = lattice.up_closure(&[0b1, 0b10]);
        assert!(matches!(check_modular_cut(&m, &fam).unwrap(), Some(CutViolation::ModularPair { .. })));
    }

    #[test]
    fn generated_cut_can_be_improper() {
        let u = Matroid::uniform(3, 3).unwrap();
        let cut = ModularCut::generated(&u, &[0b1, 0b10]).unwrap();
        assert!(!cut.is_proper());
        assert_eq!(cut.extend("e").unwrap_err(), Error::ImproperCut);
    }

    #[test]
    fn enumerate_u23() {
        let u = Matroid::uniform(2, 3).unwrap();
        let cuts = enumerate_modular_cuts(&u, 40).unwrap();
        let minimal: Vec<Vec<Set>> = cuts.iter().map(|c| c.minimal_flats().to_vec()).collect();
        assert_eq!(minimal, vec![vec![], vec![0b1], vec![0b10], vec![0b100], vec![0b111]]);
    }

    #[test]
    fn enumerate_k4_is_consistent() {
        let m = k4();
        let cuts = enumerate_modular_cuts(&m, 40).unwrap();
        assert!(cuts.iter().all(|c| is_modular_cut(&m, c.flats()).unwrap() && c.is_proper()));
        assert!(matches!(enumerate_modular_cuts(&m, 10), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn projection_lowers_rank() {
        let m = k4();
        let cut = ModularCut::principal(&m, 0b1011).unwrap();
        assert_eq!(cut.project("e").unwrap().rank(), 2);
        assert!(ModularCut::empty(&m).project("e").is_err());
    }
}
