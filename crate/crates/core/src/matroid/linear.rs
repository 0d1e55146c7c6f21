//! Column-matroid rank oracle.
//!
//! Over GF(p) the rank is computed by elimination mod p. Over the rationals the
//! same elimination is run modulo a large prime whenever Hadamard's bound shows
//! that every minor is smaller than that prime in absolute value; a nonzero
//! minor then stays nonzero mod the prime, so the two ranks coincide.
//! Otherwise the exact fraction-free path is used.

use crate::error::{Error, Result};
use crate::linalg::{column_rank, IntMatrix};
use crate::normal_form::Field;

use super::set::{elements, Set};

const LARGE_PRIME: u64 = 2_147_483_647;
const MAX_FAST_ROWS: usize = 16;

pub(crate) struct LinearOracle {
    rows: usize,
    field: Field,
    /// Original integer columns.
    columns: Vec<Vec<i64>>,
    /// Residues modulo `modulus`, when the modular path is exact.
    residues: Option<Vec<Vec<u64>>>,
    modulus: u64,
}

fn hadamard_fits(columns: &[Vec<i64>], rows: usize, p: u64) -> bool {
    let mut norms: Vec<u128> =
        columns.iter().map(|c| c.iter().map(|&v| (v as i128 * v as i128) as u128).sum()).collect();
    norms.sort_unstable_by(|a, b| b.cmp(a));
    let mut prod: u128 = 1;
    for &n in norms.iter().take(rows) {
        prod = prod.saturating_mul(n.max(1));
    }
    prod < (p as u128) * (p as u128)
}

impl LinearOracle {
    pub(crate) fn new(m: &IntMatrix, field: Field) -> Result<Self> {
        let rows = m.nrows();
        let columns = m.columns();
        let (modulus, fast) = match field {
            Field::Rationals => (LARGE_PRIME, hadamard_fits(&columns, rows, LARGE_PRIME)),
            Field::Prime(p) => {
                if !(2..=LARGE_PRIME).contains(&p) {
                    return Err(Error::InvalidParameter(format!("unsupported characteristic {p}")));
                }
                (p, true)
            }
        };
        let residues = (fast && rows <= MAX_FAST_ROWS).then(|| {
            columns.iter().map(|c| c.iter().map(|&v| v.rem_euclid(modulus as i64) as u64).collect()).collect()
        });
        if residues.is_none() && field != Field::Rationals {
            return Err(Error::InvalidParameter(format!("at most {MAX_FAST_ROWS} rows over GF(p)")));
        }
        Ok(LinearOracle { rows, field, columns, residues, modulus })
    }

    pub(crate) fn field(&self) -> Field {
        self.field
    }

    pub(crate) fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.rows, &self.columns).expect("consistent columns")
    }

    pub(crate) fn rank(&self, s: Set) -> usize {
        match &self.residues {
            Some(res) => rank_mod(res, self.rows, self.modulus, s),
            None => column_rank(self.rows, elements(s).map(|j| self.columns[j].as_slice())),
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Incremental elimination: each column is reduced against the pivots found so far.
fn rank_mod(columns: &[Vec<u64>], rows: usize, p: u64, s: Set) -> usize {
    let mut basis = [[0u64; MAX_FAST_ROWS]; MAX_FAST_ROWS];
    let mut pivot = [0usize; MAX_FAST_ROWS];
    let mut rank = 0;
    for j in elements(s) {
        if rank == rows {
            break;
        }
        let mut v = [0u64; MAX_FAST_ROWS];
        v[..rows].copy_from_slice(&columns[j]);
        for b in 0..rank {
            let c = v[pivot[b]];
            if c != 0 {
                for i in 0..rows {
                    v[i] = (v[i] + p - c * basis[b][i] % p) % p;
                }
            }
        }
        if let Some(lead) = (0..rows).find(|&i| v[i] != 0) {
            let inv = inv_mod(v[lead], p);
            for x in v[..rows].iter_mut() {
                *x = *x * inv % p;
            }
            basis[rank] = v;
            pivot[rank] = lead;
            rank += 1;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank as matrix_rank;
    use crate::matroid::set::full_set;

    #[test]
    fn modular_path_matches_exact_rank() {
        let m = IntMatrix::from_rows(&[[1, 0, 1, 2, 0], [0, 1, -1, 2, 0], [1, 1, 0, 4, 0]]).unwrap();
        let o = LinearOracle::new(&m, Field::Rationals).unwrap();
        assert!(o.residues.is_some());
        for s in 0..full_set(5) {
            let cols: Vec<usize> = elements(s).collect();
            assert_eq!(o.rank(s), matrix_rank(&m.select_columns(&cols)), "set {s:b}");
        }
    }

    #[test]
    fn huge_entries_take_the_exact_path() {
        let big = 1i64 << 40;
        let m = IntMatrix::from_rows(&[[big, 1], [1, big]]).unwrap();
        let o = LinearOracle::new(&m, Field::Rationals).unwrap();
        assert!(o.residues.is_none());
        assert_eq!(o.rank(0b11), 2);
    }

    #[test]
    fn characteristic_matters() {
        // Columns (1,1), (1,-1): independent over Q and GF(3), parallel over GF(2).
        let m = IntMatrix::from_rows(&[[1, 1], [1, -1]]).unwrap();
        assert_eq!(LinearOracle::new(&m, Field::Rationals).unwrap().rank(0b11), 2);
        assert_eq!(LinearOracle::new(&m, Field::Prime(3)).unwrap().rank(0b11), 2);
        assert_eq!(LinearOracle::new(&m, Field::Prime(2)).unwrap().rank(0b11), 1);
    }
}
