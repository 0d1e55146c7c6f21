//! Labeled representations, the standard form `[I_r | X]`, and standard-form duals.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_delta_modular, is_totally_delta_modular, rank, rank_mod_p, IntMatrix};

/// Field over which a representation is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Rationals,
    /// GF(p); `p` is assumed prime.
    Prime(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An integer matrix with one distinct label per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    matrix: IntMatrix,
    labels: Vec<String>,
    field: Field,
}

impl Representation {
    pub fn new(matrix: IntMatrix, labels: Vec<String>, field: Field) -> Result<Self> {
        if labels.len() != matrix.ncols() {
            return Err(Error::Dimension(format!("{} labels for {} columns", labels.len(), matrix.ncols())));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        if let Field::Prime(p) = field {
            if p < 2 {
                return Err(Error::InvalidParameter(format!("field characteristic {p}")));
            }
        }
        Ok(Representation { matrix, labels, field })
    }

    /// Rational representation with labels `0, 1, 2, ...`.
    pub fn numbered(matrix: IntMatrix) -> Self {
        let labels = (0..matrix.ncols()).map(|j| j.to_string()).collect();
        Representation { matrix, labels, field: Field::Rationals }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn with_field(&self, field: Field) -> Result<Self> {
        Representation::new(self.matrix.clone(), self.labels.clone(), field)
    }

    /// Entry as read in the field: canonical residue for GF(p).
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        let v = self.matrix.get(i, j);
        match self.field {
            Field::Rationals => v,
            Field::Prime(p) => v.rem_euclid(p as i64),
        }
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn rank(&self) -> usize {
        match self.field {
            Field::Rationals => rank(&self.matrix),
            Field::Prime(p) => rank_mod_p(&self.matrix, p),
        }
    }

    /// Whether the leading `nrows x nrows` block is an identity matrix.
    pub fn is_standard_form(&self) -> bool {
        let r = self.matrix.nrows();
        r <= self.matrix.ncols() && (0..r).all(|i| (0..r).all(|j| self.entry(i, j) == i64::from(i == j)))
    }

    /// The `X` block of a standard-form representation.
    pub fn x_block(&self) -> Result<IntMatrix> {
        if !self.is_standard_form() {
            return Err(Error::NotStandardForm);
        }
        let r = self.matrix.nrows();
        let cols: Vec<usize> = (r..self.matrix.ncols()).collect();
        Ok(self.matrix.select_columns(&cols))
    }

    /// Columns reordered as `order` (a permutation of column indices).
    pub fn permute_columns(&self, order: &[usize]) -> Representation {
        Representation {
            matrix: self.matrix.select_columns(order),
            labels: order.iter().map(|&j| self.labels[j].clone()).collect(),
            field: self.field,
        }
    }
}

fn overflow() -> Error {
    Error::Inconsistent("i64 overflow during pivoting".into())
}

/// Row-lattice saturation at 2: while the rows are dependent mod 2, replace one
/// of them by half of an even combination. Every full-size minor halves, the
/// rational row space is unchanged.
fn saturate_at_two(rows: &mut [Vec<i64>]) -> Result<()> {
    let r = rows.len();
    loop {
        let Some(coeffs) = dependency_mod_2(rows) else {
            return Ok(());
        };
        let k = *coeffs.iter().rev().find(|&&i| i < r).expect("nonempty dependency");
        let n = rows[k].len();
        let mut combo = vec![0i64; n];
        for &i in &coeffs {
            for j in 0..n {
                combo[j] = combo[j].checked_add(rows[i][j]).ok_or_else(overflow)?;
            }
        }
        if combo.iter().any(|v| v % 2 != 0) {
            return Err(Error::Inconsistent("mod-2 dependency is not even".into()));
        }
        rows[k] = combo.into_iter().map(|v| v / 2).collect();
    }
}

/// Indices of a nonempty set of rows summing to zero mod 2, if one exists.
fn dependency_mod_2(rows: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = rows.first().map_or(0, Vec::len);
    // Each reduced row carries the set of original rows it is the sum of.
    let mut basis: Vec<(Vec<bool>, Vec<bool>, usize)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut bits: Vec<bool> = row.iter().map(|v| v % 2 != 0).collect();
        let mut combo = vec![false; rows.len()];
        combo[i] = true;
        for (b, c, lead) in &basis {
            if bits[*lead] {
                for j in 0..n {
                    bits[j] ^= b[j];
                }
                for j in 0..rows.len() {
                    combo[j] ^= c[j];
                }
            }
        }
        match bits.iter().position(|&b| b) {
            Some(lead) => basis.push((bits, combo, lead)),
            None => return Some((0..rows.len()).filter(|&j| combo[j]).collect()),
        }
    }
    None
}

/// Unimodular row operations on rows `from..` leaving a single nonzero entry in
/// column `c` among those rows. Returns that row index.
fn euclid_column(rows: &mut [Vec<i64>], from: usize, c: usize) -> Result<Option<usize>> {
    loop {
        let nz: Vec<usize> = (from..rows.len()).filter(|&k| rows[k][c] != 0).collect();
        if nz.len() <= 1 {
            return Ok(nz.first().copied());
        }
        let k0 = *nz.iter().min_by_key(|&&k| (rows[k][c].unsigned_abs(), k)).unwrap();
        for &k in &nz {
            if k == k0 {
                continue;
            }
            let q = rows[k][c].div_euclid(rows[k0][c]);
            let src = rows[k0].clone();
            for (t, s) in rows[k].iter_mut().zip(&src) {
                *t = s.checked_mul(q).and_then(|p| t.checked_sub(p)).ok_or_else(overflow)?;
            }
        }
    }
}

fn gcd_from(rows: &[Vec<i64>], from: usize, c: usize) -> u64 {
    rows[from..].iter().fold(0u64, |g, row| num_integer::gcd(g, row[c].unsigned_abs()))
}

/// Brings a 2-modular rational representation to the form `[I_r | X]` with
/// the column labeled `e` first, using only row operations that cannot
/// increase a full-size minor.
///
/// Rows are first thinned to a rational basis of the row space and saturated
/// at 2. Pivot columns are then chosen top-down: `e` first, afterwards the
/// earliest column whose entries in the remaining rows are coprime. Such a
/// column is reduced by unimodular steps to a single `±1`, which becomes the
/// next identity column.
pub fn pivot_to_standard_form(rep: &Representation, e: &str) -> Result<Representation> {
    if rep.field != Field::Rationals {
        return Err(Error::InvalidParameter("pivoting needs a rational representation".into()));
    }
    let e_idx = rep.index_of(e)?;
    let m = &rep.matrix;
    if m.column(e_idx).iter().all(|&v| v == 0) {
        return Err(Error::NoUnitPivot(format!("{e} is a loop")));
    }
    if !is_delta_modular(m, 2)? {
        return Err(Error::NotTwoModular("some full-size minor exceeds 2".into()));
    }

    // A maximal set of rationally independent rows; its minors are minors of `m`.
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..m.nrows() {
        rows.push(m.row(i).to_vec());
        if rank(&IntMatrix::from_rows(&rows)?) < rows.len() {
            rows.pop();
        }
    }
    let r = rows.len();
    let n = m.ncols();
    saturate_at_two(&mut rows)?;

    let mut pivots: Vec<usize> = Vec::with_capacity(r);
    for i in 0..r {
        let candidate = if i == 0 {
            (gcd_from(&rows, 0, e_idx) == 1).then_some(e_idx)
        } else {
            (0..n).find(|c| !pivots.contains(c) && gcd_from(&rows, i, *c) == 1)
        };
        let Some(c) = candidate else {
            let who = if i == 0 { e.to_string() } else { format!("row {i}") };
            return Err(Error::NoUnitPivot(who));
        };
        let k = euclid_column(&mut rows, i, c)?.expect("coprime column is nonzero");
        rows.swap(i, k);
        let s = rows[i][c];
        if s.abs() != 1 {
            return Err(Error::Inconsistent(format!("pivot entry {s} after reduction")));
        }
        if s < 0 {
            rows[i].iter_mut().for_each(|v| *v = -*v);
        }
        for k in 0..r {
            let f = rows[k][c];
            if k == i || f == 0 {
                continue;
            }
            let src = rows[i].clone();
            for (t, s) in rows[k].iter_mut().zip(&src) {
                *t = s.checked_mul(f).and_then(|p| t.checked_sub(p)).ok_or_else(overflow)?;
            }
        }
        pivots.push(c);
    }

    let order: Vec<usize> = pivots.iter().copied().chain((0..n).filter(|c| !pivots.contains(c))).collect();
    let out = Representation::new(IntMatrix::from_rows(&rows)?, rep.labels.clone(), Field::Rationals)?
        .permute_columns(&order);
    let x = out.x_block()?;
    if !is_totally_delta_modular(&x, 2) {
        return Err(Error::Inconsistent("standard form is not totally 2-modular".into()));
    }
    Ok(out)
}

/// Dual of a standard-form representation `[I_r | X]`.
///
/// The result is `[I_{n-r} | -X^T]` with the labels of the `X` columns first,
/// which is `[-X^T | I_{n-r}]` with its columns reordered. Applying this twice
/// returns the input exactly.
pub fn dual_representation(rep: &Representation) -> Result<Representation> {
    let x = rep.x_block()?;
    let r = rep.matrix.nrows();
    let k = x.ncols();
    let mut neg_xt = x.transpose();
    for i in 0..neg_xt.nrows() {
        neg_xt.negate_row(i);
    }
    let matrix = IntMatrix::hcat(&[&IntMatrix::identity(k), &neg_xt])?;
    let labels = rep.labels[r..].iter().chain(&rep.labels[..r]).cloned().collect();
    Representation::new(matrix, labels, rep.field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(rows: &[&[i64]]) -> Representation {
        Representation::numbered(IntMatrix::from_rows(rows).unwrap())
    }

    #[test]
    fn labels_must_be_distinct_and_match_columns() {
        let m = IntMatrix::identity(2);
        assert!(matches!(
            Representation::new(m.clone(), vec!["a".into(), "a".into()], Field::Rationals),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(Representation::new(m, vec!["a".into()], Field::Rationals), Err(Error::Dimension(_))));
    }

    #[test]
    fn gf_entries_are_residues() {
        let r = rep(&[&[1, -1]]).with_field(Field::Prime(3)).unwrap();
        assert_eq!(r.entry(0, 1), 2);
    }

    #[test]
    fn standard_input_is_unchanged() {
        let a = rep(&[&[1, 0, 0, 1], &[0, 1, 0, -1], &[0, 0, 1, 1]]);
        assert_eq!(pivot_to_standard_form(&a, "0").unwrap(), a);
    }

    #[test]
    fn e_ends_up_first() {
        let a = rep(&[&[1, 1, 0], &[1, -1, 1]]);
        let s = pivot_to_standard_form(&a, "1").unwrap();
        assert_eq!(s.labels()[0], "1");
        assert!(s.is_standard_form());
    }

    #[test]
    fn even_rows_are_halved() {
        // Row space has a full minor of 2 everywhere until saturated.
        let a = rep(&[&[1, 1, 0], &[1, -1, 2]]);
        let s = pivot_to_standard_form(&a, "0").unwrap();
        assert!(s.is_standard_form());
        assert_eq!(s.labels()[0], "0");
    }

    #[test]
    fn three_modular_input_rejected() {
        let a = rep(&[&[1, 1, 1], &[0, 2, 3]]);
        assert!(matches!(pivot_to_standard_form(&a, "0"), Err(Error::NotTwoModular(_))));
    }

    #[test]
    fn even_column_cannot_become_a_unit() {
        let a = rep(&[&[2, 1, 0], &[0, 0, 1]]);
        assert!(matches!(pivot_to_standard_form(&a, "0"), Err(Error::NoUnitPivot(_))));
        assert!(pivot_to_standard_form(&a, "1").is_ok());
    }

    #[test]
    fn loops_and_unknown_labels() {
        let a = rep(&[&[1, 0], &[0, 0]]);
        assert!(matches!(pivot_to_standard_form(&a, "1"), Err(Error::NoUnitPivot(_))));
        assert!(matches!(pivot_to_standard_form(&a, "z"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn dual_is_an_involution() {
        let a = rep(&[&[1, 0, 1], &[0, 1, 1]]);
        let d = dual_representation(&a).unwrap();
        assert_eq!(d.matrix().rows_vec(), vec![vec![1, -1, -1]]);
        assert_eq!(d.labels(), &["2", "0", "1"]);
        assert_eq!(dual_representation(&d).unwrap(), a);
    }

    #[test]
    fn dual_needs_standard_form() {
        assert_eq!(dual_representation(&rep(&[&[1, 1], &[1, 0]])), Err(Error::NotStandardForm));
    }
}
