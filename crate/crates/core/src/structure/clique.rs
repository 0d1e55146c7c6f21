//! Elements outside a spanning clique restriction.

use itertools::Itertools;
use serde::Serialize;

use super::iso::are_isomorphic_with_cap;
use super::minor::has_minor_with_cap;
use super::spikes::{special_points, SpecialPointReport};
use crate::catalog;
use crate::error::{Error, Result};
use crate::extension::{classify_against, ExtensionType};
use crate::matroid::set::{singleton, size};
use crate::matroid::{elements, Matroid, Set};

const CLIQUE_ISO_CAP: usize = 64;
const ANALYSIS_MINOR_CAP: usize = 40;

/// The clique restriction `M|X` identified with `M(K_n)`: `edges[k]` is the
/// edge of `K_n` carried by the `k`-th element of `X` in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueIdentification {
    pub vertices: usize,
    pub elements: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl CliqueIdentification {
    fn vertex_set(&self, s: Set) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .elements
            .iter()
            .zip(&self.edges)
            .filter(|(&e, _)| s & singleton(e) != 0)
            .flat_map(|(_, &(a, b))| [a, b])
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Elements of `X` whose edges lie inside `vertices`.
    fn induced(&self, vertices: &[usize]) -> Set {
        self.elements
            .iter()
            .zip(&self.edges)
            .filter(|(_, (a, b))| vertices.contains(a) && vertices.contains(b))
            .fold(0, |s, (&e, _)| s | singleton(e))
    }
}

/// Checks that `M|x` is a spanning clique restriction and finds its edge labeling.
pub fn identify_clique(m: &Matroid, x: Set) -> Result<CliqueIdentification> {
    if x & !m.ground() != 0 {
        return Err(Error::NotClique("set leaves the ground set".into()));
    }
    let r = m.rank();
    if m.rank_of(x) != r {
        return Err(Error::NotClique(format!("rank {} of the set is below the rank {r} of the matroid", m.rank_of(x))));
    }
    let n = r + 1;
    if size(x) != catalog::clique_size(n) || n > catalog::MAX_CLIQUE_VERTICES {
        return Err(Error::NotClique(format!("{} elements cannot form M(K_{n})", size(x))));
    }
    let restricted = m.restrict(x);
    let mk = catalog::build_mk(n)?;
    let map = are_isomorphic_with_cap(&restricted, &mk, CLIQUE_ISO_CAP)?
        .ok_or_else(|| Error::NotClique(format!("restriction is not isomorphic to M(K_{n})")))?;
    let all_edges = catalog::clique_edges(n);
    Ok(CliqueIdentification {
        vertices: n,
        elements: elements(x).collect(),
        edges: map.iter().map(|&i| all_edges[i]).collect(),
    })
}

/// Classifies `e` against the spanning clique restriction `M|x`.
pub fn classify_extension_element(m: &Matroid, x: Set, e: usize) -> Result<ExtensionType> {
    identify_clique(m, x)?;
    if e >= m.size() || x & singleton(e) != 0 {
        return Err(Error::InvalidParameter(format!("element {e} is not outside the clique")));
    }
    Ok(classify_against(m, x, e))
}

/// An outside element with its type and generating flats as labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementClassification {
    pub element: String,
    #[serde(rename = "type")]
    pub kind: String,
    pub generator: Vec<Vec<String>>,
}

impl ElementClassification {
    pub fn new(m: &Matroid, e: usize, t: &ExtensionType) -> Self {
        let (kind, generator) = match t {
            ExtensionType::TypeA { line } => ("TYPE_A", vec![m.labels_of(*line)]),
            ExtensionType::TypeB { lines, .. } => ("TYPE_B", lines.iter().map(|&l| m.labels_of(l)).collect()),
            ExtensionType::Other { minimal } => ("OTHER", minimal.iter().map(|&f| m.labels_of(f)).collect()),
        };
        ElementClassification { element: m.label(e).to_string(), kind: kind.into(), generator }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircuitPair {
    pub first: usize,
    pub second: usize,
    pub intersection: usize,
    pub inside_k5: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedPair {
    pub type_a: String,
    pub type_b: String,
    pub common_k4: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub simple: bool,
    pub rank: usize,
    /// No minor isomorphic to `U_{2,5}`, `F_7` or `R_9`.
    pub no_u25_f7_r9: bool,
    /// Additionally no `U_{2,4} ⊕ U_{2,4}` minor.
    pub no_u24_pair: bool,
}

/// A claim about the instance: `applicable` when its hypotheses hold, and
/// `holds` for the observed outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub applicable: bool,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueAnalysis {
    pub rank: usize,
    pub size: usize,
    pub clique_size: usize,
    pub size_bound: usize,
    pub outside: Vec<ElementClassification>,
    pub type_a_lines: Vec<Vec<String>>,
    pub type_b_circuits: Vec<Vec<String>>,
    pub circuit_pairs: Vec<CircuitPair>,
    pub mixed_pairs: Vec<MixedPair>,
    pub special_points: SpecialPointReport,
    pub hypotheses: Hypotheses,
    pub claims: Vec<Claim>,
    pub pass: bool,
}

fn minor_free(m: &Matroid, names: &[&str]) -> Result<bool> {
    for name in names {
        if has_minor_with_cap(m, &catalog::build_named(name)?, ANALYSIS_MINOR_CAP)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn claim(id: &str, applicable: bool, holds: bool, detail: String) -> Claim {
    Claim { id: id.into(), applicable, holds, detail }
}

/// Structure of a simple matroid over its spanning clique restriction `M|x`.
pub fn analyze_clique_extension(m: &Matroid, x: Set) -> Result<CliqueAnalysis> {
    if !m.is_simple() {
        return Err(Error::NotSimple);
    }
    let m = m.memoized();
    let clique = identify_clique(&m, x)?;
    let outside: Vec<usize> = elements(m.ground() & !x).collect();
    let types: Vec<ExtensionType> = outside.iter().map(|&e| classify_against(&m, x, e)).collect();
    let r = m.rank();

    let mut lines: Vec<Set> = Vec::new();
    let mut circuits: Vec<Set> = Vec::new();
    for t in &types {
        match t {
            ExtensionType::TypeA { line } if !lines.contains(line) => lines.push(*line),
            ExtensionType::TypeB { circuit, .. } if !circuits.contains(circuit) => circuits.push(*circuit),
            _ => {}
        }
    }

    let circuit_pairs: Vec<CircuitPair> = (0..circuits.len())
        .tuple_combinations()
        .map(|(i, j)| {
            let (a, b) = (circuits[i], circuits[j]);
            CircuitPair {
                first: i,
                second: j,
                intersection: size(a & b),
                inside_k5: clique.vertex_set(a | b).len() <= 5,
            }
        })
        .collect();

    let vertex_quads: Vec<Vec<usize>> = (0..clique.vertices).combinations(4).collect();
    let mut mixed_pairs = Vec::new();
    for (i, ti) in types.iter().enumerate() {
        for (j, tj) in types.iter().enumerate() {
            if let (ExtensionType::TypeA { .. }, ExtensionType::TypeB { .. }) = (ti, tj) {
                let (e, f) = (outside[i], outside[j]);
                let common_k4 = vertex_quads.iter().any(|q| {
                    let z = clique.induced(q);
                    let rz = m.rank_of(z);
                    m.rank_of(z | singleton(e)) == rz && m.rank_of(z | singleton(f)) == rz
                });
                mixed_pairs.push(MixedPair { type_a: m.label(e).into(), type_b: m.label(f).into(), common_k4 });
            }
        }
    }

    let special = special_points(&m)?;
    let no3 = minor_free(&m, &["U(2,5)", "F7", "R9"])?;
    let no4 = no3 && minor_free(&m, &["U24+U24"])?;
    let hypotheses = Hypotheses { simple: true, rank: r, no_u25_f7_r9: no3, no_u24_pair: no4 };

    let size_bound = catalog::extremal_size(r);
    let all_ab = types.iter().all(|t| !matches!(t, ExtensionType::Other { .. }));
    let all_a = types.iter().all(|t| matches!(t, ExtensionType::TypeA { .. }));
    let k = outside.len();
    let claims = vec![
        claim("outside-elements-type-a-or-b", no3, all_ab, format!("{k} outside elements")),
        claim("size-bound", no4 && r >= 6, m.size() <= size_bound, format!("{} <= {size_bound}", m.size())),
        claim(
            "outside-count-equals-lines-plus-circuits",
            no4 && r >= 6,
            k == lines.len() + circuits.len(),
            format!("{k} = {} + {}", lines.len(), circuits.len()),
        ),
        claim("special-points-at-most-21", no4 && r >= 6, special.total <= 21, format!("{} special", special.total)),
        claim(
            "three-outside-special-points-at-most-21",
            no3 && k <= 3,
            special.total <= 21,
            format!("{} special", special.total),
        ),
        claim(
            "type-a-bundle-special-points-at-most-1",
            no4 && k >= 4 && all_a,
            special.total <= 1,
            format!("{} special", special.total),
        ),
        claim(
            "tprime-case-special-points-at-most-2",
            no4 && tprime_case(&m, &clique, &types),
            special.total <= 2,
            format!("{} special", special.total),
        ),
        claim(
            "circuit-pairs-meet-in-two-inside-k5",
            no4 && r >= 6,
            circuit_pairs.iter().all(|p| p.intersection == 2 && p.inside_k5),
            format!("{} pairs", circuit_pairs.len()),
        ),
        claim(
            "mixed-pairs-share-a-k4",
            no4 && r >= 5,
            mixed_pairs.iter().all(|p| p.common_k4),
            format!("{} pairs", mixed_pairs.len()),
        ),
    ];
    let pass = claims.iter().all(|c| !c.applicable || c.holds);
    Ok(CliqueAnalysis {
        rank: r,
        size: m.size(),
        clique_size: size(x),
        size_bound,
        outside: outside.iter().zip(&types).map(|(&e, t)| ElementClassification::new(&m, e, t)).collect(),
        type_a_lines: lines.iter().map(|&l| m.labels_of(l)).collect(),
        type_b_circuits: circuits.iter().map(|&c| m.labels_of(c)).collect(),
        circuit_pairs,
        mixed_pairs,
        special_points: special,
        hypotheses,
        claims,
        pass,
    })
}

/// Whether some 3-point line `{x, y, z}` of the clique has every outside
/// element freely added to it or of type (b) with a circuit through `x` and `y`.
fn tprime_case(m: &Matroid, clique: &CliqueIdentification, types: &[ExtensionType]) -> bool {
    let x: Set = clique.elements.iter().fold(0, |s, &e| s | singleton(e));
    let triangles = m.restrict(x).flats_of_rank(2).into_iter().filter(|&l| size(l) == 3);
    let lift: Vec<usize> = elements(x).collect();
    triangles.map(|l| elements(l).fold(0, |s, i| s | singleton(lift[i]))).any(|l: Set| {
        elements(l).tuple_combinations().any(|(a, b)| {
            let xy = singleton(a) | singleton(b);
            types.iter().all(|t| match t {
                ExtensionType::TypeA { line } => *line == l,
                ExtensionType::TypeB { circuit, .. } => circuit & xy == xy,
                ExtensionType::Other { .. } => false,
            })
        })
    })
}
