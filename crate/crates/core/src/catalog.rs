//! Named matrices and matroids.
//!
//! Clique edges use vertex `0` for the identity block: column `e_i` is the
//! edge `0i` and `e_i - e_j` is the edge `ij`. Labels are `e{i}{j}`, with an
//! underscore between the vertices once a vertex number has two digits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::ModularCut;
use crate::linalg::IntMatrix;
use crate::matroid::set::{singleton, size};
use crate::matroid::{Matroid, Set};
use crate::normal_form::{Field, Representation};

/// Largest clique `K_n` whose edge set fits in a ground set.
pub const MAX_CLIQUE_VERTICES: usize = 11;

/// Which construction [`build_t`] and [`build_tprime`] follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Via {
    Matrix,
    Projection,
}

/// Documented invariants of a named matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub rank: usize,
    pub size: usize,
    pub epsilon: usize,
}

/// The fixed-size named matroids with their rank, size and number of points.
pub fn entries() -> Vec<CatalogEntry> {
    [
        ("F7", 3, 7, 7),
        ("F7minus", 3, 7, 7),
        ("R9", 3, 9, 9),
        ("AG23_minus_e", 3, 8, 8),
        ("T8", 4, 8, 8),
        ("U8", 4, 8, 8),
        ("U8prime", 4, 8, 8),
        ("U24+U24", 4, 8, 8),
        ("U(2,5)", 2, 5, 5),
        ("MK(5)", 4, 10, 10),
    ]
    .into_iter()
    .map(|(name, rank, size, epsilon)| CatalogEntry { name: name.into(), rank, size, epsilon })
    .collect()
}

pub fn edge_label(i: usize, j: usize) -> String {
    if i.max(j) >= 10 {
        format!("e{i}_{j}")
    } else {
        format!("e{i}{j}")
    }
}

/// Edges of `K_n` in the column order of `[I_{n-1} | D_{n-1}]`.
pub fn clique_edges(n: usize) -> Vec<(usize, usize)> {
    let star = (1..n).map(|j| (0, j));
    let rest = (1..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)));
    star.chain(rest).collect()
}

/// `r × C(r,2)` matrix with columns `e_i - e_j`, `i < j`, in lexicographic order.
pub fn build_d(r: usize) -> Result<IntMatrix> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("D_r needs r >= 2, got {r}")));
    }
    let cols: Vec<Vec<i64>> = (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut c = vec![0; r];
            c[i] = 1;
            c[j] = -1;
            c
        })
        .collect();
    IntMatrix::from_columns(r, &cols)
}

fn unit(r: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

/// `[I_r | D_r]` as columns, labeled by the edges of `K_{r+1}`.
fn clique_columns(r: usize) -> (Vec<Vec<i64>>, Vec<String>) {
    let cols = clique_edges(r + 1)
        .into_iter()
        .map(|(i, j)| {
            let mut c = vec![0; r];
            if i > 0 {
                c[i - 1] = 1;
                c[j - 1] = -1;
            } else {
                c[j - 1] = 1;
            }
            c
        })
        .collect();
    let labels = clique_edges(r + 1).into_iter().map(|(i, j)| edge_label(i, j)).collect();
    (cols, labels)
}

fn rational_rep(r: usize, cols: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Representation> {
    Representation::new(IntMatrix::from_columns(r, &cols)?, labels, Field::Rationals)
}

fn check_clique_order(n: usize) -> Result<()> {
    if n < 2 || n > MAX_CLIQUE_VERTICES {
        return Err(Error::InvalidParameter(format!("K_n needs 2 <= n <= {MAX_CLIQUE_VERTICES}, got {n}")));
    }
    Ok(())
}

/// `[I_{n-1} | D_{n-1}]` over the rationals, representing `M(K_n)`.
pub fn mk_representation(n: usize) -> Result<Representation> {
    check_clique_order(n)?;
    let (cols, labels) = clique_columns(n - 1);
    rational_rep(n - 1, cols, labels)
}

pub fn build_mk(n: usize) -> Result<Matroid> {
    Matroid::from_representation(&mk_representation(n)?)
}

/// `A_r = [I_r | D_r | B]`, where `B` has columns `e_1 + e_{j+1}` labeled `b{j}`.
pub fn build_a(r: usize) -> Result<Representation> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("A_r needs r >= 2, got {r}")));
    }
    check_clique_order(r + 1)?;
    let (mut cols, mut labels) = clique_columns(r);
    for j in 1..r {
        let mut c = unit(r, 0);
        c[j] = 1;
        cols.push(c);
        labels.push(format!("b{j}"));
    }
    rational_rep(r, cols, labels)
}

/// `A'_r = [I_r | D_r | B' | u]`, where `B'` has columns `e_1 + e_2 - e_{j+2}`
/// labeled `b{j}` and `u = e_1 + e_2`.
pub fn build_aprime(r: usize) -> Result<Representation> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("A'_r needs r >= 2, got {r}")));
    }
    check_clique_order(r + 1)?;
    let (mut cols, mut labels) = clique_columns(r);
    for j in 1..=r - 2 {
        let mut c = unit(r, 0);
        c[1] = 1;
        c[j + 1] = -1;
        cols.push(c);
        labels.push(format!("b{j}"));
    }
    let mut u = unit(r, 0);
    u[1] = 1;
    cols.push(u);
    labels.push("u".into());
    rational_rep(r, cols, labels)
}

/// `H_r = [I_r | D_r | v]` with `v = (1, -1, -1, 0, ..., 0)` labeled `e`.
pub fn build_h(r: usize) -> Result<Representation> {
    if r < 3 {
        return Err(Error::InvalidParameter(format!("H_r needs r >= 3, got {r}")));
    }
    check_clique_order(r + 1)?;
    let (mut cols, mut labels) = clique_columns(r);
    let mut v = vec![0; r];
    v[0] = 1;
    v[1] = -1;
    v[2] = -1;
    cols.push(v);
    labels.push("e".into());
    rational_rep(r, cols, labels)
}

/// `H_{r+1}` pivoted on the top entry of its last column, with the first row
/// and last column removed and then every zero column and every column
/// parallel to an earlier one deleted. Also returns the deleted labels.
pub fn reduce_h(r: usize) -> Result<(Representation, Vec<String>)> {
    let h = build_h(r + 1)?;
    let mut m = h.matrix().clone();
    let last = m.ncols() - 1;
    for i in 1..m.nrows() {
        let f = m.get(i, last);
        if f != 0 {
            m.add_row_multiple(i, 0, -f)?;
        }
    }
    let rows: Vec<usize> = (1..m.nrows()).collect();
    let cols: Vec<usize> = (0..last).collect();
    let m = m.submatrix(&rows, &cols);
    let mut keep = Vec::new();
    let mut dropped = Vec::new();
    for j in 0..m.ncols() {
        let c = m.column(j);
        let parallel = keep.iter().any(|&k: &usize| {
            let d = m.column(k);
            c == d || c.iter().zip(&d).all(|(a, b)| *a == -*b)
        });
        if c.iter().all(|&v| v == 0) || parallel {
            dropped.push(h.labels()[j].clone());
        } else {
            keep.push(j);
        }
    }
    let labels = keep.iter().map(|&j| h.labels()[j].clone()).collect();
    Ok((Representation::new(m.select_columns(&keep), labels, Field::Rationals)?, dropped))
}

/// The triangle `{e01, e02, e12}` of `M(K_n)`.
pub fn clique_triangle(mk: &Matroid) -> Result<Set> {
    mk.set_of(&["e01", "e02", "e12"])
}

/// The lines `L1 = {e12, e03}` and `L2 = {e02, e13}` of `M(K_n)`, whose union
/// is the 4-cycle 0-2-1-3.
pub fn tprime_lines(mk: &Matroid) -> Result<[Set; 2]> {
    Ok([mk.set_of(&["e12", "e03"])?, mk.set_of(&["e02", "e13"])?])
}

/// All flats of `M(K_n)` containing `L1` or `L2`. The modular-pair rule is not
/// rechecked here; tests check it against the full definition for small `n`.
pub fn tprime_cut(mk: &Matroid) -> Result<ModularCut> {
    let [l1, l2] = tprime_lines(mk)?;
    Ok(ModularCut::upward_unchecked(mk, &[l1, l2]))
}

fn check_t_rank(r: usize, via: Via) -> Result<()> {
    let min = if via == Via::Projection { 3 } else { 2 };
    if r < min || r + 2 > MAX_CLIQUE_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "T_r via {via:?} needs {min} <= r <= {}",
            MAX_CLIQUE_VERTICES - 2
        )));
    }
    Ok(())
}

/// `T_r`: the matroid of `A_r`, or the simplified projection of `M(K_{r+2})`
/// from a point freely added to a triangle.
pub fn build_t(r: usize, via: Via) -> Result<Matroid> {
    check_t_rank(r, via)?;
    match via {
        Via::Matrix => Matroid::from_representation(&build_a(r)?),
        Via::Projection => {
            let mk = build_mk(r + 2)?;
            let cut = ModularCut::principal(&mk, clique_triangle(&mk)?)?;
            Ok(cut.project("p")?.simplify().matroid)
        }
    }
}

/// `T'_r`: the matroid of `A'_r`, or the simplified projection of
/// `M(K_{r+2})` from the extension whose cut is [`tprime_cut`].
pub fn build_tprime(r: usize, via: Via) -> Result<Matroid> {
    check_t_rank(r, via)?;
    match via {
        Via::Matrix => Matroid::from_representation(&build_aprime(r)?),
        Via::Projection => {
            let mk = build_mk(r + 2)?;
            Ok(tprime_cut(&mk)?.project("p")?.simplify().matroid)
        }
    }
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn linear(rows: &[&[i64]], labels: Vec<String>, field: Field) -> Result<Matroid> {
    Matroid::from_representation(&Representation::new(IntMatrix::from_rows(rows)?, labels, field)?)
}

fn fano_rows() -> [&'static [i64]; 3] {
    [&[1, 0, 0, 1, 1, 0, 1], &[0, 1, 0, 1, 0, 1, 1], &[0, 0, 1, 0, 1, 1, 1]]
}

/// The ternary Reid geometry. The point `x` lies on the 4-point lines
/// `{x, a1, a2, a3}` and `{x, b1, b2, b3}` and the 3-point line `{x, c1, c2}`.
fn r9() -> Result<Matroid> {
    let cols: [[i64; 3]; 9] =
        [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0], [0, 0, 1], [1, 0, 1], [1, 0, 2], [0, 1, 1], [1, 1, 1]];
    let names = ["x", "a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2"];
    let rep = Representation::new(
        IntMatrix::from_columns(3, &cols)?,
        names.iter().map(|s| s.to_string()).collect(),
        Field::Prime(3),
    )?;
    Matroid::from_representation(&rep)
}

/// The affine plane over GF(3), points `(1, x, y)` labeled `p{x}{y}`, without `p22`.
fn ag23_minus_e() -> Result<Matroid> {
    let pts: Vec<(i64, i64)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).filter(|&p| p != (2, 2)).collect();
    let cols: Vec<Vec<i64>> = pts.iter().map(|&(x, y)| vec![1, x, y]).collect();
    let names = pts.iter().map(|(x, y)| format!("p{x}{y}")).collect();
    Matroid::from_representation(&Representation::new(IntMatrix::from_columns(3, &cols)?, names, Field::Prime(3))?)
}

/// `[I_4 | J_4 - I_4]` over GF(3). Unit `a{i}` and column `b{i}` sum to the
/// all-ones vector, the tip of the spike this matroid comes from.
fn t8_representation(with_tip: bool) -> Result<Representation> {
    let mut cols: Vec<Vec<i64>> = (0..4).map(|i| unit(4, i)).collect();
    cols.extend((0..4).map(|i| (0..4).map(|k| i64::from(k != i)).collect::<Vec<i64>>()));
    let mut names: Vec<String> = (1..=4).map(|i| format!("a{i}")).chain((1..=4).map(|i| format!("b{i}"))).collect();
    if with_tip {
        cols.push(vec![1; 4]);
        names.push("t".into());
    }
    Representation::new(IntMatrix::from_columns(4, &cols)?, names, Field::Prime(3))
}

/// `T_8` with its tip `t` restored.
pub fn t8_with_tip() -> Result<Matroid> {
    Matroid::from_representation(&t8_representation(true)?)
}

/// A rank-4 spike over the rationals: legs `{t, a_i, b_i}` with `a_i = e_i`,
/// `b_i = e_i + t` and tip `t = (1, 1, 1, 1)`.
pub fn rank_four_spike() -> Result<Matroid> {
    let mut cols: Vec<Vec<i64>> = (0..4).map(|i| unit(4, i)).collect();
    cols.extend((0..4).map(|i| (0..4).map(|k| 1 + i64::from(k == i)).collect::<Vec<i64>>()));
    cols.push(vec![1; 4]);
    let names =
        (1..=4).map(|i| format!("a{i}")).chain((1..=4).map(|i| format!("b{i}"))).chain(["t".to_string()]).collect();
    Matroid::from_representation(&Representation::new(IntMatrix::from_columns(4, &cols)?, names, Field::Rationals)?)
}

/// `R_9` with `a1` removed and a new point `f` freely added to the
/// remaining line `{x, a2, a3}`, which keeps three long lines through `x`.
pub fn r9_with_free_point() -> Result<Matroid> {
    let r9 = r9()?;
    let base = r9.delete(singleton(r9.index_of("a1")?));
    let line = base.set_of(&["x", "a2", "a3"])?;
    ModularCut::principal(&base, line)?.extend("f")
}

fn u24_pair() -> Result<Matroid> {
    let a = Matroid::uniform_labeled(2, labels("a", 4))?;
    let b = Matroid::uniform_labeled(2, labels("b", 4))?;
    Matroid::direct_sum(&a, &b)
}

fn parse_args(s: &str, name: &str) -> Option<Vec<usize>> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// Builds a matroid by name: `U(m,n)`, `MK(n)`, `F7`, `F7minus`, `R9`,
/// `AG23_minus_e`, `T8`, `U8`, `U8prime` (or `U8p`) and `U24+U24`.
pub fn build_named(name: &str) -> Result<Matroid> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(args) = parse_args(&compact, "U") {
        return match args.as_slice() {
            [m, n] => Matroid::uniform(*m, *n),
            _ => Err(Error::UnknownName(name.into())),
        };
    }
    if let Some(args) = parse_args(&compact, "MK") {
        return match args.as_slice() {
            [n] => build_mk(*n),
            _ => Err(Error::UnknownName(name.into())),
        };
    }
    match compact.as_str() {
        "F7" => linear(&fano_rows(), labels("", 7), Field::Prime(2)),
        "F7minus" => linear(&fano_rows(), labels("", 7), Field::Prime(3)),
        "R9" => r9(),
        "AG23_minus_e" => ag23_minus_e(),
        "T8" => Matroid::from_representation(&t8_representation(false)?),
        "U8" => linear(
            &[
                &[1, 0, 1, 1, 0, 0, 1, 0],
                &[0, 1, 1, -1, 0, 0, 0, 1],
                &[0, 0, 0, 0, 1, 1, 0, -1],
                &[0, 0, 0, 0, 1, -1, -1, 0],
            ],
            labels("", 8),
            Field::Rationals,
        ),
        "U8prime" | "U8p" => linear(
            &[
                &[1, 0, 1, 1, 0, 0, 0, 0],
                &[0, 1, 1, -1, 0, 0, 0, 1],
                &[0, 0, 0, 0, 1, 1, 0, -1],
                &[0, 0, 0, 0, 1, -1, 1, 0],
            ],
            labels("", 8),
            Field::Rationals,
        ),
        "U24+U24" => u24_pair(),
        _ => Err(Error::UnknownName(name.into())),
    }
}

/// Number of elements of the clique `K_n`.
pub fn clique_size(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `C(r+2, 2) - 2`.
pub fn extremal_size(r: usize) -> usize {
    clique_size(r + 2) - 2
}

/// Lines through `x`, longest first.
pub fn lines_through(m: &Matroid, x: usize) -> Vec<Set> {
    let mut out: Vec<Set> = m.flats_of_rank(2).into_iter().filter(|&l| l & singleton(x) != 0).collect();
    out.sort_by_key(|&l| std::cmp::Reverse(size(l)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{is_delta_modular, rank, row_point_count};
    use crate::matroid::rank_functions_equal;

    #[test]
    fn d_matrices() {
        assert_eq!(build_d(2).unwrap(), IntMatrix::from_rows(&[[1], [-1]]).unwrap());
        let d4 = build_d(4).unwrap();
        assert_eq!(d4.ncols(), 6);
        for c in d4.columns() {
            let plus = c.iter().position(|&v| v == 1).unwrap();
            let minus = c.iter().position(|&v| v == -1).unwrap();
            assert!(plus < minus);
            assert_eq!(c.iter().filter(|&&v| v != 0).count(), 2);
        }
        assert!(build_d(1).is_err());
        for n in 3..=7 {
            let m = build_mk(n).unwrap();
            assert_eq!(m.rank(), n - 1);
            assert_eq!(m.epsilon(), clique_size(n));
        }
    }

    #[test]
    fn a_and_aprime() {
        let a2 = build_a(2).unwrap();
        assert_eq!(a2.matrix().columns(), vec![vec![1, 0], vec![0, 1], vec![1, -1], vec![1, 1]]);
        for r in 2..=8 {
            assert_eq!(build_a(r).unwrap().matrix().ncols(), extremal_size(r));
            assert_eq!(build_aprime(r).unwrap().matrix().ncols(), extremal_size(r));
        }
        for r in 2..=4 {
            let a = build_a(r).unwrap();
            assert!(is_delta_modular(a.matrix(), 2).unwrap());
            assert_eq!(row_point_count(&a.matrix().transpose()), extremal_size(r));
            assert_eq!(rank(a.matrix()), r);
        }
        assert!(build_aprime(1).is_err());
        assert!(build_h(2).is_err());
    }

    #[test]
    fn tprime_cut_is_a_proper_modular_cut() {
        for n in 4..=6 {
            let mk = build_mk(n).unwrap();
            let cut = tprime_cut(&mk).unwrap();
            assert!(crate::extension::is_modular_cut(&mk, cut.flats()).unwrap());
            assert!(cut.is_proper());
        }
    }

    #[test]
    fn h_extends_the_clique_by_the_tprime_cut() {
        for r in 3..=4 {
            let mk = build_mk(r + 2).unwrap();
            let ext = tprime_cut(&mk).unwrap().extend("e").unwrap();
            let h = Matroid::from_representation(&build_h(r + 1).unwrap()).unwrap();
            assert!(rank_functions_equal(&ext, &h));
        }
    }

    #[test]
    fn reduction_of_h_drops_two_columns() {
        let (rep, dropped) = reduce_h(3).unwrap();
        assert_eq!(dropped.len(), 2);
        assert_eq!(rep.matrix().ncols(), extremal_size(3));
    }

    #[test]
    fn named_entries_match_their_documented_counts() {
        for e in entries() {
            let m = build_named(&e.name).unwrap();
            assert_eq!((m.rank(), m.size(), m.epsilon()), (e.rank, e.size, e.epsilon), "{}", e.name);
        }
        assert!(matches!(build_named("K33"), Err(Error::UnknownName(_))));
        assert!(build_named("U(3,2)").is_err());
    }

    #[test]
    fn u8_matrix_is_verbatim() {
        let u8m = build_named("U8").unwrap();
        assert_eq!(u8m.to_json(), build_named("U8").unwrap().to_json());
        if let crate::matroid::MatroidJson::Linear { matrix, .. } = u8m.to_json() {
            assert_eq!(matrix[0], vec![1, 0, 1, 1, 0, 0, 1, 0]);
            assert_eq!(matrix[3], vec![0, 0, 0, 0, 1, -1, -1, 0]);
        } else {
            panic!("U8 should be linear");
        }
    }

    #[test]
    fn r9_lines_through_x() {
        let r9 = build_named("R9").unwrap();
        let x = r9.index_of("x").unwrap();
        let sizes: Vec<usize> = lines_through(&r9, x).into_iter().map(size).collect();
        assert_eq!(sizes, vec![4, 4, 3]);
    }

    #[test]
    fn ag23_minus_e_lines() {
        let m = build_named("AG23_minus_e").unwrap();
        let long: Vec<Set> = m.flats_of_rank(2).into_iter().filter(|&l| size(l) == 3).collect();
        // Twelve lines in AG(2,3), four of them through the deleted point.
        assert_eq!(long.len(), 8);
    }

    #[test]
    fn t_constructions_count() {
        for r in 3..=6 {
            assert_eq!(build_t(r, Via::Projection).unwrap().epsilon(), extremal_size(r));
            assert_eq!(build_tprime(r, Via::Projection).unwrap().epsilon(), extremal_size(r));
            assert_eq!(build_t(r, Via::Matrix).unwrap().epsilon(), extremal_size(r));
        }
        assert!(build_t(2, Via::Projection).is_err());
        assert!(build_t(2, Via::Matrix).is_ok());
    }
}
