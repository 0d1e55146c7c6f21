//! Subdeterminant enumeration.
//!
//! Square submatrices are visited in lexicographic order of their row sets and,
//! within a row set, of their column sets. Every search that can stop early
//! reports the first violation in that order.

use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::elim::{minor_big, minor_i128};
use super::{rank, IntMatrix};
use crate::error::{Error, Result};

/// Row and column indices of a square submatrix together with its determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorLocation {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub det: BigInt,
}

fn check_order(m: &IntMatrix, k: usize) -> Result<()> {
    if k == 0 || k > m.nrows().min(m.ncols()) {
        return Err(Error::OrderOutOfRange { order: k, rows: m.nrows(), cols: m.ncols() });
    }
    Ok(())
}

/// Visits every `k x k` minor in lexicographic order until `visit` returns `false`.
fn for_each_minor<F>(m: &IntMatrix, k: usize, mut visit: F)
where
    F: FnMut(&[usize], &[usize], MinorValue) -> bool,
{
    let mut buf = Vec::with_capacity(k * k);
    for rows in (0..m.nrows()).combinations(k) {
        for cols in (0..m.ncols()).combinations(k) {
            let value = match minor_i128(m, &rows, &cols, &mut buf) {
                Some(d) => MinorValue::Small(d),
                None => MinorValue::Big(minor_big(m, &rows, &cols)),
            };
            if !visit(&rows, &cols, value) {
                return;
            }
        }
    }
}

enum MinorValue {
    Small(i128),
    Big(BigInt),
}

impl MinorValue {
    fn exceeds(&self, bound: u64) -> bool {
        match self {
            MinorValue::Small(d) => d.unsigned_abs() > bound as u128,
            MinorValue::Big(d) => d.abs() > BigInt::from(bound),
        }
    }

    fn into_big(self) -> BigInt {
        match self {
            MinorValue::Small(d) => BigInt::from(d),
            MinorValue::Big(d) => d,
        }
    }
}

/// Largest absolute value of a `k x k` subdeterminant.
pub fn max_abs_minor(m: &IntMatrix, k: usize) -> Result<BigInt> {
    check_order(m, k)?;
    let mut best_small: u128 = 0;
    let mut best_big: Option<BigInt> = None;
    for_each_minor(m, k, |_, _, v| {
        match v {
            MinorValue::Small(d) => best_small = best_small.max(d.unsigned_abs()),
            MinorValue::Big(d) => {
                let d = d.abs();
                if best_big.as_ref().map_or(true, |b| &d > b) {
                    best_big = Some(d);
                }
            }
        }
        true
    });
    let small = BigInt::from(best_small);
    Ok(match best_big {
        Some(b) if b > small => b,
        _ => small,
    })
}

/// First `k x k` minor (lexicographic order) whose absolute value exceeds `bound`.
pub fn find_minor_exceeding(m: &IntMatrix, k: usize, bound: u64) -> Result<Option<MinorLocation>> {
    check_order(m, k)?;
    let mut found = None;
    for_each_minor(m, k, |rows, cols, v| {
        if v.exceeds(bound) {
            found = Some(MinorLocation { rows: rows.to_vec(), cols: cols.to_vec(), det: v.into_big() });
            false
        } else {
            true
        }
    });
    Ok(found)
}

/// Whether every `rank x rank` subdeterminant has absolute value at most `delta`.
///
/// The zero matrix is rejected: it has no rank-sized minors to bound.
pub fn is_delta_modular(m: &IntMatrix, delta: u64) -> Result<bool> {
    let r = rank(m);
    if r == 0 {
        return Err(Error::ZeroMatrix);
    }
    Ok(find_minor_exceeding(m, r, delta)?.is_none())
}

/// Whether every square subdeterminant, of every order, is at most `delta` in
/// absolute value.
pub fn is_totally_delta_modular(m: &IntMatrix, delta: u64) -> bool {
    // Order-1 minors are the entries; checking them first is the cheapest filter.
    if m.entries().iter().any(|v| v.unsigned_abs() > delta) {
        return false;
    }
    for k in 2..=m.nrows().min(m.ncols()) {
        if find_minor_exceeding(m, k, delta).expect("order in range").is_some() {
            return false;
        }
    }
    true
}

/// Number of nonzero rows after identifying rows that are rational multiples of
/// each other.
pub fn row_point_count(m: &IntMatrix) -> usize {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    for i in 0..m.nrows() {
        let row = m.row(i);
        let g = row.iter().fold(0i64, |g, &v| g.gcd(&v));
        if g.is_zero() {
            continue;
        }
        let first = row.iter().copied().find(|&v| v != 0).unwrap();
        let sign = if first < 0 { -1 } else { 1 };
        seen.insert(row.iter().map(|&v| sign * v / g).collect());
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn identity_and_small_examples() {
        assert_eq!(max_abs_minor(&IntMatrix::identity(4), 4).unwrap(), BigInt::from(1));
        // A_2 = [I_2 | (1,-1) | (1,1)].
        let a2 = m(&[&[1, 0, 1, 1], &[0, 1, -1, 1]]);
        assert_eq!(max_abs_minor(&a2, 2).unwrap(), BigInt::from(2));
        // [I_2 | D_2] is a network matrix.
        let net = m(&[&[1, 0, 1], &[0, 1, -1]]);
        assert_eq!(max_abs_minor(&net, 2).unwrap(), BigInt::from(1));
        assert!(is_totally_delta_modular(&net, 1));
        assert!(!is_totally_delta_modular(&m(&[&[2]]), 1));
    }

    #[test]
    fn order_out_of_range() {
        let a = IntMatrix::identity(2);
        assert!(matches!(max_abs_minor(&a, 0), Err(Error::OrderOutOfRange { .. })));
        assert!(matches!(max_abs_minor(&a, 3), Err(Error::OrderOutOfRange { .. })));
    }

    #[test]
    fn three_modular_counterexample() {
        let a = m(&[&[1, 1, 1], &[0, 2, 3]]);
        assert!(is_delta_modular(&a, 3).unwrap());
        assert!(!is_delta_modular(&a, 2).unwrap());
        let v = find_minor_exceeding(&a, 2, 2).unwrap().unwrap();
        assert_eq!((v.rows, v.cols, v.det), (vec![0, 1], vec![0, 2], BigInt::from(3)));
    }

    #[test]
    fn zero_matrix_rejected() {
        assert_eq!(is_delta_modular(&IntMatrix::zeros(2, 3), 1), Err(Error::ZeroMatrix));
    }

    #[test]
    fn row_points() {
        let a = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 1, 0], &[0, 0, 0]]);
        assert_eq!(row_point_count(&a), 3);
        let b = m(&[&[1, 0], &[2, 0], &[0, 1]]);
        assert_eq!(row_point_count(&b), 2);
        let c = m(&[&[1, -1], &[-2, 2], &[3, 3]]);
        assert_eq!(row_point_count(&c), 2);
    }
}
