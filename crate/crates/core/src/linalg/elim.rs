//! Fraction-free (Bareiss) elimination.
//!
//! After step `k` every working entry is a `(k+1) x (k+1)` minor of the input,
//! so the division by the previous pivot is exact. The `i128` path reports
//! overflow instead of wrapping and the callers retry with `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Determinant of a square `n x n` row-major buffer, or `None` on overflow.
pub(crate) fn det_i128_buf(a: &mut [i128], n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n {
        if a[k * n + k] == 0 {
            match (k + 1..n).find(|&i| a[i * n + k] != 0) {
                None => return Some(0),
                Some(pivot) => {
                    for j in 0..n {
                        a.swap(k * n + j, pivot * n + j);
                    }
                    negate = !negate;
                }
            }
        }
        let p = a[k * n + k];
        for i in k + 1..n {
            let f = a[i * n + k];
            for j in k + 1..n {
                let v = a[i * n + j].checked_mul(p)?.checked_sub(f.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
        }
        prev = p;
    }
    let d = a[n * n - 1];
    Some(if negate { -d } else { d })
}

fn det_big_buf(mut a: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                None => return BigInt::zero(),
                Some(pivot) => {
                    for j in 0..n {
                        a.swap(k * n + j, pivot * n + j);
                    }
                    negate = !negate;
                }
            }
        }
        let p = a[k * n + k].clone();
        for i in k + 1..n {
            let f = a[i * n + k].clone();
            for j in k + 1..n {
                let v = &a[i * n + j] * &p - &f * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = p;
    }
    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant of the square submatrix picked out by `rows` x `cols`, exact.
pub(crate) fn minor_big(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    let n = rows.len();
    let mut buf: Vec<i128> = Vec::with_capacity(n * n);
    for &i in rows {
        for &j in cols {
            buf.push(m.get(i, j) as i128);
        }
    }
    match det_i128_buf(&mut buf, n) {
        Some(d) => BigInt::from(d),
        None => {
            let big = rows.iter().flat_map(|&i| cols.iter().map(move |&j| BigInt::from(m.get(i, j)))).collect();
            det_big_buf(big, n)
        }
    }
}

/// Signed minor if the elimination stays within `i128`, otherwise `None`.
pub(crate) fn minor_i128(m: &IntMatrix, rows: &[usize], cols: &[usize], buf: &mut Vec<i128>) -> Option<i128> {
    let n = rows.len();
    buf.clear();
    for &i in rows {
        for &j in cols {
            buf.push(m.get(i, j) as i128);
        }
    }
    det_i128_buf(buf, n)
}

/// Exact determinant.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("determinant of a non-square {}x{} matrix", m.nrows(), m.ncols())));
    }
    let idx: Vec<usize> = (0..m.nrows()).collect();
    Ok(minor_big(m, &idx, &idx))
}

/// Determinant when it (and every intermediate minor) fits in `i128`.
pub fn det_i128(m: &IntMatrix) -> Result<Option<i128>> {
    if !m.is_square() {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let mut buf: Vec<i128> = m.entries().iter().map(|&v| v as i128).collect();
    Ok(det_i128_buf(&mut buf, m.nrows()))
}

fn rank_i128_buf(a: &mut [i128], rows: usize, cols: usize) -> Option<usize> {
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                a.swap(rank * cols + j, pivot * cols + j);
            }
        }
        let p = a[rank * cols + c];
        for i in rank + 1..rows {
            let f = a[i * cols + c];
            for j in c + 1..cols {
                let v = a[i * cols + j].checked_mul(p)?.checked_sub(f.checked_mul(a[rank * cols + j])?)?;
                a[i * cols + j] = v / prev;
            }
            a[i * cols + c] = 0;
        }
        prev = p;
        rank += 1;
    }
    Some(rank)
}

fn rank_big(mut a: Vec<BigInt>, rows: usize, cols: usize) -> usize {
    // Plain integer elimination with content removal keeps this simple and exact.
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                a.swap(rank * cols + j, pivot * cols + j);
            }
        }
        for i in rank + 1..rows {
            let f = a[i * cols + c].clone();
            if f.is_zero() {
                continue;
            }
            let p = a[rank * cols + c].clone();
            let g = p.gcd(&f);
            let (pm, fm) = (&p / &g, &f / &g);
            let mut content = BigInt::zero();
            for j in 0..cols {
                let v = &a[i * cols + j] * &pm - &fm * &a[rank * cols + j];
                content = content.gcd(&v);
                a[i * cols + j] = v;
            }
            if !content.is_zero() && !content.is_one() {
                for j in 0..cols {
                    a[i * cols + j] = &a[i * cols + j] / &content;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the rationals, exact.
pub fn rank(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut buf: Vec<i128> = m.entries().iter().map(|&v| v as i128).collect();
    match rank_i128_buf(&mut buf, rows, cols) {
        Some(r) => r,
        None => rank_big(m.entries().iter().map(|&v| BigInt::from(v)).collect(), rows, cols),
    }
}

/// Rational rank of the matrix whose columns are `columns` (each of length `rows`).
pub fn column_rank<'a, I>(rows: usize, columns: I) -> usize
where
    I: IntoIterator<Item = &'a [i64]>,
{
    // Work on the transpose: rank is the same and the columns are contiguous.
    let mut buf: Vec<i128> = Vec::with_capacity(rows * 8);
    let mut count = 0;
    for col in columns {
        debug_assert_eq!(col.len(), rows);
        buf.extend(col.iter().map(|&v| v as i128));
        count += 1;
    }
    if count == 0 || rows == 0 {
        return 0;
    }
    let saved: Vec<i128> = buf.clone();
    match rank_i128_buf(&mut buf, count, rows) {
        Some(r) => r,
        None => rank_big(saved.into_iter().map(BigInt::from).collect(), count, rows),
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime; Fermat.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = (result as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    result
}

fn rank_mod_p_buf(a: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                a.swap(rank * cols + j, pivot * cols + j);
            }
        }
        let inv = inv_mod(a[rank * cols + c], p);
        for j in c..cols {
            a[rank * cols + j] = a[rank * cols + j] * inv % p;
        }
        for i in rank + 1..rows {
            let f = a[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = f * a[rank * cols + j] % p;
                a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

#[inline]
pub(crate) fn residue(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// Rank over GF(p).
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let mut buf: Vec<u64> = m.entries().iter().map(|&v| residue(v, p)).collect();
    rank_mod_p_buf(&mut buf, m.nrows(), m.ncols(), p)
}

/// GF(p) rank of the matrix whose columns are `columns`.
pub fn column_rank_mod_p<'a, I>(rows: usize, columns: I, p: u64) -> usize
where
    I: IntoIterator<Item = &'a [i64]>,
{
    let mut buf: Vec<u64> = Vec::with_capacity(rows * 8);
    let mut count = 0;
    for col in columns {
        buf.extend(col.iter().map(|&v| residue(v, p)));
        count += 1;
    }
    if count == 0 || rows == 0 {
        return 0;
    }
    rank_mod_p_buf(&mut buf, count, rows, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                .collect();
            let term = BigInt::from(m[0][j]) * cofactor_det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det(&IntMatrix::identity(3)).unwrap(), BigInt::from(1));
        let m = IntMatrix::from_rows(&[[1, 1], [-1, 1]]).unwrap();
        assert_eq!(det(&m).unwrap(), BigInt::from(2));
        assert_eq!(det(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn non_square_is_a_dimension_error() {
        assert!(matches!(det(&IntMatrix::zeros(2, 3)), Err(Error::Dimension(_))));
    }

    #[test]
    fn zero_pivot_needs_a_row_swap() {
        let m = IntMatrix::from_rows(&[[0, 1, 2], [1, 0, 3], [4, -3, 8]]).unwrap();
        let rows = m.rows_vec();
        assert_eq!(det(&m).unwrap(), cofactor_det(&rows));
    }

    #[test]
    fn huge_entries_fall_back_to_bigint() {
        let big = i64::MAX / 3;
        let rows = vec![
            vec![big, big - 1, 7, 3],
            vec![big - 5, big, 11, -2],
            vec![13, 17, big, big - 9],
            vec![-1, 4, big - 2, big],
        ];
        let m = IntMatrix::from_rows(&rows).unwrap();
        assert_eq!(det_i128(&m).unwrap(), None);
        assert_eq!(det(&m).unwrap(), cofactor_det(&rows));
        assert_eq!(rank(&m), 4);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&IntMatrix::identity(5)), 5);
        assert_eq!(rank(&IntMatrix::zeros(3, 4)), 0);
        let m = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6], [1, 0, 1]]).unwrap();
        assert_eq!(rank(&m), 2);
        // Rank drops over GF(2) but not over the rationals.
        let m = IntMatrix::from_rows(&[[1, 1], [1, -1]]).unwrap();
        assert_eq!(rank(&m), 2);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 2);
    }

    #[test]
    fn column_rank_matches_matrix_rank() {
        let m = IntMatrix::from_rows(&[[1, 0, 1, 2], [0, 1, 1, 2], [0, 0, 0, 0]]).unwrap();
        let cols = m.columns();
        assert_eq!(column_rank(3, cols.iter().map(|c| c.as_slice())), 2);
        assert_eq!(column_rank(3, [cols[2].as_slice(), cols[3].as_slice()]), 1);
        assert_eq!(column_rank_mod_p(3, cols.iter().map(|c| c.as_slice()), 2), 2);
        assert_eq!(column_rank(3, std::iter::empty()), 0);
    }

    #[test]
    fn random_dets_agree_with_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..600 {
            let n = 1 + trial % 5;
            let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            let m = IntMatrix::from_rows(&rows).unwrap();
            let d = det(&m).unwrap();
            assert_eq!(d, cofactor_det(&rows), "{rows:?}");
            assert_eq!(det(&m.transpose()).unwrap(), d);
            assert_eq!(rank(&m) == n, !d.is_zero());
        }
    }

    #[test]
    fn abs_of_negative_det() {
        let m = IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(det(&m).unwrap().abs(), BigInt::from(1));
    }
}
