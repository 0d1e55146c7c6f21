//! Totally 2-modular representations, excluded minors, rank-2 bounds and
//! random 2-modular test matrices.

use itertools::Itertools;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::minor_i128;
use crate::linalg::{column_rank, is_delta_modular, IntMatrix};
use crate::matroid::set::singleton;
use crate::matroid::{elements, rank_functions_equal, Matroid, Set};
use crate::normal_form::{Field, Representation};

pub const MAX_SEARCH_SIZE: usize = 12;
pub const MAX_SEARCH_RANK: usize = 6;
pub const MAX_RANK2_DELTA: u64 = 8;
const ENTRY_BOUND: i64 = 2;
const SAMPLING_BUDGET: usize = 10_000;

/// Nonzero values allowed in a totally 2-modular column, in search order.
const VALUES: [i64; 4] = [1, -1, 2, -2];

struct BasisSearch<'a> {
    m: &'a Matroid,
    basis: Vec<usize>,
    /// Non-basis elements and the row positions of their fundamental-circuit support.
    others: Vec<(usize, Vec<usize>)>,
}

impl<'a> BasisSearch<'a> {
    fn new(m: &'a Matroid, b: Set) -> Self {
        let basis: Vec<usize> = elements(b).collect();
        let others = elements(m.ground() & !b)
            .map(|e| {
                let support = m.fundamental_circuit(b, e) & b;
                let rows =
                    basis.iter().enumerate().filter(|(_, &x)| support & singleton(x) != 0).map(|(i, _)| i).collect();
                (e, rows)
            })
            .collect();
        BasisSearch { m, basis, others }
    }

    /// Primitive columns on `rows` with entries in `VALUES` and first entry positive.
    fn columns(&self, rows: &[usize]) -> Vec<Vec<i64>> {
        let r = self.basis.len();
        let mut out = Vec::new();
        let mut current = vec![0i64; rows.len()];
        fn fill(k: usize, current: &mut Vec<i64>, rows: &[usize], r: usize, out: &mut Vec<Vec<i64>>) {
            if k == current.len() {
                let g = current.iter().fold(0i64, |g, &v| g.gcd(&v));
                if g <= 1 {
                    let mut col = vec![0; r];
                    for (&i, &v) in rows.iter().zip(current.iter()) {
                        col[i] = v;
                    }
                    out.push(col);
                }
                return;
            }
            for &v in &VALUES {
                if k == 0 && v < 0 {
                    continue;
                }
                current[k] = v;
                fill(k + 1, current, rows, r, out);
            }
        }
        fill(0, &mut current, rows, r, &mut out);
        out
    }

    /// Independence of every set containing the newest element agrees with `m`.
    fn matroid_ok(&self, cols: &[(usize, Vec<i64>)]) -> bool {
        let r = self.basis.len();
        let (newest, _) = cols.last().expect("nonempty");
        let placed: Vec<usize> = (0..cols.len() - 1).collect();
        let limit = r.min(placed.len());
        (0..=limit).all(|k| {
            placed.iter().copied().combinations(k).all(|sub| {
                let set = sub.iter().fold(singleton(*newest), |s, &i| s | singleton(cols[i].0));
                let rank = column_rank(
                    r,
                    sub.iter().map(|&i| cols[i].1.as_slice()).chain([cols.last().unwrap().1.as_slice()]),
                );
                rank == self.m.rank_of(set)
            })
        })
    }

    fn run(&self) -> Option<Representation> {
        let r = self.basis.len();
        let mut cols: Vec<(usize, Vec<i64>)> = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let mut c = vec![0; r];
                c[i] = 1;
                (b, c)
            })
            .collect();
        let mut x: Vec<Vec<i64>> = Vec::new();
        if !self.dfs(0, &mut cols, &mut x) {
            return None;
        }
        cols.sort_by_key(|(e, _)| *e);
        let columns: Vec<Vec<i64>> = cols.into_iter().map(|(_, c)| c).collect();
        let matrix = IntMatrix::from_columns(r, &columns).ok()?;
        Representation::new(matrix, self.m.labels().to_vec(), Field::Rationals).ok()
    }

    fn dfs(&self, k: usize, cols: &mut Vec<(usize, Vec<i64>)>, x: &mut Vec<Vec<i64>>) -> bool {
        if k == self.others.len() {
            return true;
        }
        let (e, rows) = &self.others[k];
        let candidates = if rows.is_empty() { vec![vec![0; self.basis.len()]] } else { self.columns(rows) };
        for col in candidates {
            x.push(col.clone());
            cols.push((*e, col));
            if last_column_ok(self.basis.len(), x) && self.matroid_ok(cols) && self.dfs(k + 1, cols, x) {
                return true;
            }
            cols.pop();
            x.pop();
        }
        false
    }
}

fn check_caps(m: &Matroid) -> Result<()> {
    if m.size() > MAX_SEARCH_SIZE {
        return Err(Error::TooLarge { size: m.size(), cap: MAX_SEARCH_SIZE });
    }
    if m.rank() > MAX_SEARCH_RANK {
        return Err(Error::InvalidParameter(format!("rank {} exceeds the cap {MAX_SEARCH_RANK}", m.rank())));
    }
    Ok(())
}

/// A totally 2-modular rational representation of `m`, searched over every
/// basis in lexicographic order; the witness from the first successful basis
/// is returned.
pub fn find_totally_2modular_representation(m: &Matroid) -> Result<Option<Representation>> {
    check_caps(m)?;
    let m = m.tabulated()?;
    if m.rank() == 0 {
        let rep = Representation::new(IntMatrix::zeros(0, m.size()), m.labels().to_vec(), Field::Rationals)?;
        return Ok(Some(rep));
    }
    let bases = m.bases();
    let found = bases.par_iter().find_map_first(|&b| BasisSearch::new(&m, b).run());
    if let Some(rep) = &found {
        let back = Matroid::from_representation(rep)?;
        if !rank_functions_equal(&back, &m) || !crate::linalg::is_totally_delta_modular(rep.matrix(), 2) {
            return Err(Error::Inconsistent("representation search returned a bad witness".into()));
        }
    }
    Ok(found)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExcludedMinorVerdict {
    ExcludedMinor,
    /// The matroid itself has a totally 2-modular representation.
    Member,
    /// Some single-element deletion or contraction has no representation.
    NotMinimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingleElementMinor {
    pub element: String,
    pub operation: String,
    /// Rows of a totally 2-modular representation, columns in label order.
    pub witness: Option<Vec<Vec<i64>>>,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcludedMinorReport {
    pub size: usize,
    pub rank: usize,
    pub member: bool,
    pub minors: Vec<SingleElementMinor>,
    pub verdict: ExcludedMinorVerdict,
}

/// Representation of `m` from one of its simplification, with each parallel
/// element copying its representative's column and loops as zero columns.
fn represent_via_simplification(m: &Matroid) -> Result<Option<Representation>> {
    let s = m.simplify();
    let Some(rep) = find_totally_2modular_representation(&s.matroid)? else {
        return Ok(None);
    };
    let r = rep.matrix().nrows();
    let cols: Vec<Vec<i64>> =
        s.representative.iter().map(|k| k.map_or_else(|| vec![0; r], |k| rep.matrix().column(k))).collect();
    let matrix = IntMatrix::from_columns(r, &cols)?;
    let full = Representation::new(matrix, m.labels().to_vec(), Field::Rationals)?;
    if !rank_functions_equal(&Matroid::from_representation(&full)?, m) {
        return Err(Error::Inconsistent("re-attached representation differs from the minor".into()));
    }
    Ok(Some(full))
}

/// Checks that `m` has no totally 2-modular representation while each
/// single-element deletion and contraction has one.
pub fn verify_excluded_minor_2modular(m: &Matroid) -> Result<ExcludedMinorReport> {
    check_caps(m)?;
    let member = find_totally_2modular_representation(m)?.is_some();
    let mut minors = Vec::new();
    for e in 0..m.size() {
        for (operation, minor) in [("delete", m.delete(singleton(e))), ("contract", m.contract(singleton(e)))] {
            let rep = represent_via_simplification(&minor)?;
            minors.push(SingleElementMinor {
                element: m.label(e).to_string(),
                operation: operation.into(),
                witness: rep.as_ref().map(|r| r.matrix().rows_vec()),
                labels: minor.labels().to_vec(),
            });
        }
    }
    let verdict = if member {
        ExcludedMinorVerdict::Member
    } else if minors.iter().all(|x| x.witness.is_some()) {
        ExcludedMinorVerdict::ExcludedMinor
    } else {
        ExcludedMinorVerdict::NotMinimal
    };
    Ok(ExcludedMinorReport { size: m.size(), rank: m.rank(), member, minors, verdict })
}

/// A primitive integer column `(a, b)` with `b > 0`, or `(1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Rank2Candidate {
    pub a: i64,
    pub b: i64,
}

impl Rank2Candidate {
    pub fn new(a: i64, b: i64) -> Option<Self> {
        let canonical = b > 0 || (b == 0 && a == 1);
        (canonical && a.gcd(&b) == 1).then_some(Rank2Candidate { a, b })
    }

    fn det(self, o: Rank2Candidate) -> i64 {
        self.a * o.b - o.a * self.b
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank2Result {
    pub delta: u64,
    pub n_max: usize,
    pub witness: Vec<Rank2Candidate>,
}

impl Rank2Result {
    pub fn witness_matrix(&self) -> IntMatrix {
        let cols: Vec<[i64; 2]> = self.witness.iter().map(|c| [c.a, c.b]).collect();
        IntMatrix::from_columns(2, &cols).expect("two rows")
    }
}

/// Candidates `(1, 0)` and `(a, b)` with `1 <= b <= delta`, `|a| <= a_bound`,
/// ordered by `|a|`, then sign of `a` (nonnegative first), then `b`.
fn rank2_candidates(delta: i64, a_bound: i64) -> Vec<Rank2Candidate> {
    let mut rest: Vec<Rank2Candidate> =
        (1..=delta).flat_map(|b| (-a_bound..=a_bound).filter_map(move |a| Rank2Candidate::new(a, b))).collect();
    rest.sort_by_key(|c| (c.a.abs(), c.a < 0, c.b));
    let mut out = vec![Rank2Candidate { a: 1, b: 0 }];
    out.extend(rest);
    out
}

/// Maximum clique by branch and bound, exploring vertices in index order so
/// that the first maximum found is the lexicographically least one.
fn max_clique(adj: &[Vec<bool>]) -> Vec<usize> {
    fn grow(adj: &[Vec<bool>], current: &mut Vec<usize>, cand: &[usize], best: &mut Vec<usize>) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        for (i, &v) in cand.iter().enumerate() {
            if current.len() + cand.len() - i <= best.len() {
                return;
            }
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| adj[v][w]).collect();
            current.push(v);
            grow(adj, current, &next, best);
            current.pop();
        }
    }
    let all: Vec<usize> = (0..adj.len()).collect();
    let mut best = Vec::new();
    grow(adj, &mut Vec::new(), &all, &mut best);
    best
}

fn rank2_search(delta: u64, a_bound: i64) -> Rank2Result {
    let d = delta as i64;
    let cands = rank2_candidates(d, a_bound);
    let adj: Vec<Vec<bool>> = cands
        .iter()
        .map(|&c| cands.iter().map(|&o| c != o && c.det(o) != 0 && c.det(o).abs() <= d).collect())
        .collect();
    let clique = max_clique(&adj);
    Rank2Result { delta, n_max: clique.len(), witness: clique.into_iter().map(|i| cands[i]).collect() }
}

fn check_delta(delta: u64) -> Result<()> {
    if delta == 0 || delta > MAX_RANK2_DELTA {
        return Err(Error::InvalidParameter(format!("delta must lie in 1..={MAX_RANK2_DELTA}, got {delta}")));
    }
    Ok(())
}

/// Largest `n` with `U_{2,n}` representable by a `delta`-modular matrix.
pub fn rank2_max_size(delta: u64) -> Result<Rank2Result> {
    check_delta(delta)?;
    let result = rank2_search(delta, delta as i64);
    if !is_delta_modular(&result.witness_matrix(), delta)? {
        return Err(Error::Inconsistent("rank-2 witness is not delta-modular".into()));
    }
    Ok(result)
}

/// The same search with `|a| <= 2 delta`, guarding the candidate bound.
pub fn rank2_max_size_enlarged(delta: u64) -> Result<Rank2Result> {
    check_delta(delta)?;
    Ok(rank2_search(delta, 2 * delta as i64))
}

/// A seeded 2-modular `r × (r + extra)` matrix: `[I_r | X]` with primitive
/// nonzero columns in `X` sampled until totally 2-modular, then scrambled by
/// unimodular row operations and a column permutation.
pub fn random_2modular_matrix(r: usize, extra: usize, seed: u64) -> Result<IntMatrix> {
    if r == 0 || r > 8 {
        return Err(Error::InvalidParameter(format!("r must lie in 1..=8, got {r}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|k| i64::from(k == i)).collect()).collect();
    for _ in 0..extra {
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > SAMPLING_BUDGET {
                return Err(Error::SamplingExhausted(SAMPLING_BUDGET));
            }
            let col: Vec<i64> = (0..r).map(|_| rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)).collect();
            let g = col.iter().fold(0i64, |g, &v| g.gcd(&v));
            if g != 1 {
                continue;
            }
            let x: Vec<Vec<i64>> = cols[r..].iter().cloned().chain([col.clone()]).collect();
            if last_column_ok(r, &x) {
                cols.push(col);
                break;
            }
        }
    }
    let mut m = IntMatrix::from_columns(r, &cols)?;
    for _ in 0..3 * r {
        let (i, j) = (rng.gen_range(0..r), rng.gen_range(0..r));
        if i != j && r > 1 {
            let f = if rng.gen_bool(0.5) { 1 } else { -1 };
            m.add_row_multiple(i, j, f)?;
        }
        if rng.gen_bool(0.25) {
            m.swap_rows(rng.gen_range(0..r), rng.gen_range(0..r));
        }
        if rng.gen_bool(0.25) {
            m.negate_row(rng.gen_range(0..r));
        }
    }
    let mut order: Vec<usize> = (0..m.ncols()).collect();
    order.shuffle(&mut rng);
    Ok(m.select_columns(&order))
}

/// Every square submatrix of the `r`-row matrix with columns `x` that uses
/// the last column has `|det| <= 2`.
fn last_column_ok(r: usize, x: &[Vec<i64>]) -> bool {
    let m = IntMatrix::from_columns(r, x).expect("consistent columns");
    let last = x.len() - 1;
    let mut buf = Vec::new();
    (1..=r.min(x.len())).all(|k| {
        (0..r).combinations(k).all(|rows| {
            (0..last).combinations(k - 1).all(|mut cols| {
                cols.push(last);
                minor_i128(&m, &rows, &cols, &mut buf).map_or(false, |d| d.abs() <= ENTRY_BOUND as i128)
            })
        })
    })
}
