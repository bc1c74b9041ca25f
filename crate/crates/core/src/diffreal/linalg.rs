//! Exact elimination over the integers.
//!
//! Two independent routes compute rank: a dense Bareiss elimination, where
//! every intermediate entry is a minor of the input, and a sparse echelon
//! form that keeps each row primitive (content divided out). [`rank_exact`]
//! picks dense below [`DENSE_THRESHOLD`] entries and sparse above it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Matrices with at most this many entries go through the dense route.
pub const DENSE_THRESHOLD: usize = 4096;

/// A sparse row: `(column, value)` pairs, strictly increasing columns, no zeros.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Integer matrix stored as sparse rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl IntMatrix {
    pub fn new(ncols: usize) -> Self {
        IntMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::new(ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged matrix");
            m.push_row(
                r.iter()
                    .cloned()
                    .map(Into::into)
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            );
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::new(n);
        for i in 0..n {
            m.push_row(vec![(i, BigInt::from(1))]);
        }
        m
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    /// Appends a row; entries may come in any order but columns must be distinct.
    pub fn push_row(&mut self, mut row: SparseRow) {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|e| e.0);
        assert!(row.windows(2).all(|w| w[0].0 < w[1].0), "duplicate column in row");
        assert!(row.last().is_none_or(|e| e.0 < self.ncols), "column out of range");
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.rows[i]
            .binary_search_by_key(&j, |e| e.0)
            .map(|k| self.rows[i][k].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|r| {
                let mut dense = vec![BigInt::zero(); self.ncols];
                for (j, v) in r {
                    dense[*j] = v.clone();
                }
                dense
            })
            .collect()
    }
}

/// Rank over the rationals.
pub fn rank_exact(m: &IntMatrix) -> usize {
    if m.nrows() * m.ncols() <= DENSE_THRESHOLD {
        bareiss_rank(m.to_dense())
    } else {
        sparse_rank(m)
    }
}

/// Fraction-free Bareiss elimination; returns the rank.
pub fn bareiss_rank(a: Vec<Vec<BigInt>>) -> usize {
    bareiss(a).0
}

/// Determinant of a square matrix via Bareiss. `None` if not square.
pub fn determinant(m: &IntMatrix) -> Option<BigInt> {
    if m.nrows() != m.ncols() {
        return None;
    }
    if m.nrows() == 0 {
        return Some(BigInt::from(1));
    }
    let (rank, last_pivot, negate) = bareiss(m.to_dense());
    if rank < m.nrows() {
        return Some(BigInt::zero());
    }
    Some(if negate { -last_pivot } else { last_pivot })
}

/// Returns `(rank, last pivot, odd number of row swaps)`.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> (usize, BigInt, bool) {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut negate = false;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..ncols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                // exact by Sylvester's identity
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    (rank, prev, negate)
}

/// Incremental row-echelon form over the integers with primitive rows.
///
/// Each stored row has a distinct leading column, positive leading entry and
/// content 1.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` against the stored rows; keeps it if it is independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some(lead) = row.first().map(|e| e.0) else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => row = eliminate_lead(&row, pivot),
                None => {
                    make_primitive(&mut row);
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

/// `(p0/g)·row − (r0/g)·pivot` where `g = gcd(r0, p0)`; kills the shared lead.
fn eliminate_lead(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let r0 = &row[0].1;
    let p0 = &pivot[0].1;
    let g = r0.gcd(p0);
    let rs = p0 / &g;
    let ps = r0 / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, &rs * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(&ps * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, &rs * &row[i - 1].1 - &ps * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut SparseRow) {
    let Some(first) = row.first() else {
        return;
    };
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g == BigInt::from(1) {
            break;
        }
    }
    if first.1.is_negative() {
        g = -g;
    }
    if g != BigInt::from(1) {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Rank via [`SparseEchelon`].
pub fn sparse_rank(m: &IntMatrix) -> usize {
    let mut ech = SparseEchelon::new();
    for row in m.rows() {
        if ech.rank() == m.ncols() {
            break;
        }
        ech.insert(row.clone());
    }
    ech.rank()
}
