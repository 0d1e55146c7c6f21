//! Spike tips, special points and three-line rank-3 configurations.

use serde::Serialize;

use super::iso::are_isomorphic;
use super::minor::has_minor;
use crate::catalog;
use crate::error::{Error, Result};
use crate::matroid::set::{singleton, size};
use crate::matroid::{Matroid, Set};

/// How many spike restrictions have a given element as tip, up to "two or more".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TipMultiplicity {
    Zero,
    One,
    AtLeastTwo,
}

/// Tip multiplicity of `x` in the simple matroid `m`.
///
/// The long lines of `m` through `x` become the points `P` of `si(m / x)`
/// with at least two elements. Picking two elements from each point of a
/// circuit of `si(m / x) | P` gives a spike with tip `x`, and every spike
/// with tip `x` arises this way, so the count is the number of circuits of
/// `si(m / x) | P`. A matroid has no circuit at nullity 0, exactly one at
/// nullity 1, and at least two otherwise.
pub fn spike_tip_multiplicity(m: &Matroid, x: usize) -> Result<TipMultiplicity> {
    if !m.is_simple() {
        return Err(Error::NotSimple);
    }
    if x >= m.size() {
        return Err(Error::InvalidParameter(format!("element {x} outside a ground set of {}", m.size())));
    }
    Ok(tip_multiplicity_unchecked(m, x))
}

fn tip_multiplicity_unchecked(m: &Matroid, x: usize) -> TipMultiplicity {
    let contracted = m.contract(singleton(x));
    let points: Set = contracted
        .parallel_classes()
        .into_iter()
        .filter(|&c| size(c) >= 2)
        .fold(0, |acc, c| acc | (c & c.wrapping_neg()));
    match contracted.nullity(points) {
        0 => TipMultiplicity::Zero,
        1 => TipMultiplicity::One,
        _ => TipMultiplicity::AtLeastTwo,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointReport {
    pub label: String,
    pub four_point_lines: usize,
    pub tip: TipMultiplicity,
    pub special: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialPointReport {
    pub points: Vec<PointReport>,
    pub special: Vec<String>,
    pub total: usize,
}

/// Special-point classification of every element of a simple matroid.
pub fn special_points(m: &Matroid) -> Result<SpecialPointReport> {
    if !m.is_simple() {
        return Err(Error::NotSimple);
    }
    let four_point: Vec<Set> =
        if m.rank() >= 2 { m.flats_of_rank(2).into_iter().filter(|&l| size(l) == 4).collect() } else { Vec::new() };
    let points: Vec<PointReport> = (0..m.size())
        .map(|x| {
            let lines = four_point.iter().filter(|&&l| l & singleton(x) != 0).count();
            let tip = tip_multiplicity_unchecked(m, x);
            let special =
                lines >= 2 || tip == TipMultiplicity::AtLeastTwo || (tip == TipMultiplicity::One && lines >= 1);
            PointReport { label: m.label(x).to_string(), four_point_lines: lines, tip, special }
        })
        .collect();
    let special: Vec<String> = points.iter().filter(|p| p.special).map(|p| p.label.clone()).collect();
    let total = special.len();
    Ok(SpecialPointReport { points, special, total })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ThreeLineClass {
    U25Minor,
    R9,
    NeitherHypothesis,
}

/// A point lying on exactly three lines, all long, if the matroid is a simple
/// rank-3 matroid on nine elements; such a point makes the ground set the
/// union of three long lines through it.
fn three_line_centre(m: &Matroid) -> Option<usize> {
    if m.size() != 9 || m.rank() != 3 || !m.is_simple() {
        return None;
    }
    let lines = m.flats_of_rank(2);
    (0..9).find(|&x| {
        let through: Vec<Set> = lines.iter().copied().filter(|&l| l & singleton(x) != 0).collect();
        through.len() == 3 && through.iter().all(|&l| size(l) >= 3)
    })
}

/// For a simple rank-3 matroid on nine elements made of three long lines
/// through a point: whether it has a `U_{2,5}` minor or is `R_9`. Both
/// alternatives are tested; finding both or neither is reported as an
/// inconsistency.
pub fn classify_three_line_configuration(m: &Matroid) -> Result<ThreeLineClass> {
    if three_line_centre(m).is_none() {
        return Ok(ThreeLineClass::NeitherHypothesis);
    }
    let u25 = catalog::build_named("U(2,5)")?;
    let r9 = catalog::build_named("R9")?;
    let minor = has_minor(m, &u25)?.is_some();
    let iso = are_isomorphic(m, &r9)?.is_some();
    match (minor, iso) {
        (true, false) => Ok(ThreeLineClass::U25Minor),
        (false, true) => Ok(ThreeLineClass::R9),
        _ => Err(Error::Inconsistent(format!("U(2,5) minor: {minor}, isomorphic to R9: {iso}"))),
    }
}
