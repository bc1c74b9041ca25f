//! Rank and identity checks run through the realization.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

use super::linalg::{rank_exact, sparse_rank, IntMatrix};
use super::{expand, expand_polynomial, DiffMonomial, DiffRealError};
use crate::basis::{basis_of_multidegree, dim_polylinear, standard_letters};
use crate::terms::{enumerate_all_polylinear_terms, novikov_identity_defects, random_term, Alphabet, Letter, Term};

/// Largest `n` for [`independence_check`] unless the caller raises it.
pub const DEFAULT_INDEPENDENCE_CAP: usize = 7;
/// Largest `n` for [`spanning_check`] unless the caller raises it.
pub const DEFAULT_SPANNING_CAP: usize = 6;

/// Every monomial using each of the first `n` letters once with total
/// derivative order `n - 1`, ordered lexicographically by the order vector
/// `(k_a, k_b, …)`. There are `C(2n-2, n-1)` of them.
pub fn polylinear_columns(n: usize) -> Vec<DiffMonomial> {
    fn rec(slot: usize, n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<DiffMonomial>) {
        if slot == n - 1 {
            prefix.push(left);
            out.push(DiffMonomial::new(
                prefix.iter().enumerate().map(|(i, &k)| (Letter(i as u32), k)).collect(),
            ));
            prefix.pop();
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            rec(slot + 1, n, left - k, prefix, out);
            prefix.pop();
        }
    }
    assert!(n >= 1);
    let mut out = Vec::new();
    rec(0, n, n as u32 - 1, &mut Vec::new(), &mut out);
    out
}

fn row_over(columns: &HashMap<DiffMonomial, usize>, term: &Term) -> Vec<(usize, BigInt)> {
    expand(term)
        .iter()
        .map(|(m, c)| {
            let col = *columns
                .get(m)
                .unwrap_or_else(|| panic!("expansion left the polylinear span: {m:?}"));
            (col, c.clone())
        })
        .collect()
}

fn column_index(n: usize) -> HashMap<DiffMonomial, usize> {
    polylinear_columns(n)
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect()
}

/// Rows: the polylinear tableau basis on `a, b, …`; columns: [`polylinear_columns`].
pub fn basis_matrix(n: usize) -> IntMatrix {
    let columns = column_index(n);
    let basis = basis_of_multidegree(&standard_letters(n)).expect("n >= 1");
    let mut m = IntMatrix::new(columns.len());
    for e in &basis {
        m.push_row(row_over(&columns, &e.term));
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub n: usize,
    pub dim: BigInt,
    pub rank: usize,
}

impl IndependenceReport {
    pub fn passed(&self) -> bool {
        self.dim.to_usize() == Some(self.rank)
    }
}

/// Rank of [`basis_matrix`] against `C(2n-2, n-1)`.
pub fn independence_check(n: usize, cap: usize) -> Result<IndependenceReport, DiffRealError> {
    if n > cap {
        return Err(DiffRealError::CapExceeded { n, cap });
    }
    let rank = rank_exact(&basis_matrix(n));
    Ok(IndependenceReport {
        n,
        dim: dim_polylinear(n as u64),
        rank,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningReport {
    pub n: usize,
    /// `n! · Catalan(n-1)`.
    pub monomials: usize,
    pub rank: usize,
    pub expected: BigInt,
}

impl SpanningReport {
    pub fn passed(&self) -> bool {
        self.expected.to_usize() == Some(self.rank)
    }
}

/// Rank of the expansions of every polylinear monomial of degree `n`.
pub fn spanning_check(n: usize, cap: usize) -> Result<SpanningReport, DiffRealError> {
    if n > cap {
        return Err(DiffRealError::CapExceeded { n, cap });
    }
    let columns = column_index(n);
    let terms = enumerate_all_polylinear_terms(&standard_letters(n));
    let mut m = IntMatrix::new(columns.len());
    for t in &terms {
        m.push_row(row_over(&columns, t));
    }
    Ok(SpanningReport {
        n,
        monomials: terms.len(),
        rank: sparse_rank(&m),
        expected: dim_polylinear(n as u64),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityReport {
    pub triples: usize,
}

/// Checks that both Novikov defects expand to zero for every triple.
pub fn verify_identities_under_realization(samples: &[(Term, Term, Term)]) -> Result<IdentityReport, DiffRealError> {
    for (a, b, c) in samples {
        let (right_symmetry, left_commutativity) = novikov_identity_defects(a, b, c);
        for (which, defect) in [
            ("right-symmetry", right_symmetry),
            ("left-commutativity", left_commutativity),
        ] {
            if !expand_polynomial(&defect).is_zero() {
                let size = [a, b, c]
                    .iter()
                    .flat_map(|t| t.leaves())
                    .map(|l| l.index() + 1)
                    .max()
                    .unwrap_or(1);
                let alphabet = Alphabet::standard(size);
                let triple = format!("({}, {}, {})", alphabet.print(a), alphabet.print(b), alphabet.print(c));
                return Err(DiffRealError::IdentityViolation { which, triple });
            }
        }
    }
    Ok(IdentityReport { triples: samples.len() })
}

/// Every term of exactly `degree` leaves over the first `alphabet_size` letters.
pub fn all_terms(degree: usize, alphabet_size: usize) -> Vec<Term> {
    if degree == 1 {
        return (0..alphabet_size as u32).map(|i| Term::Leaf(Letter(i))).collect();
    }
    let mut out = Vec::new();
    for left in 1..degree {
        let ls = all_terms(left, alphabet_size);
        let rs = all_terms(degree - left, alphabet_size);
        for l in &ls {
            for r in &rs {
                out.push(Term::mul(l.clone(), r.clone()));
            }
        }
    }
    out
}

/// All triples of terms with total degree at most `max_total` over the first
/// `alphabet_size` letters.
pub fn exhaustive_triples(max_total: usize, alphabet_size: usize) -> Vec<(Term, Term, Term)> {
    let by_degree: Vec<Vec<Term>> = (0..=max_total.saturating_sub(2))
        .map(|d| {
            if d == 0 {
                Vec::new()
            } else {
                all_terms(d, alphabet_size)
            }
        })
        .collect();
    let mut out = Vec::new();
    for da in 1..by_degree.len() {
        for db in 1..by_degree.len() {
            for dc in 1..by_degree.len() {
                if da + db + dc > max_total {
                    continue;
                }
                for a in &by_degree[da] {
                    for b in &by_degree[db] {
                        for c in &by_degree[dc] {
                            out.push((a.clone(), b.clone(), c.clone()));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Random triples whose total degree is uniform in `3..=max_total`.
pub fn random_triples<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    max_total: usize,
    alphabet_size: usize,
) -> Vec<(Term, Term, Term)> {
    assert!(max_total >= 3);
    (0..count)
        .map(|_| {
            let total = rng.gen_range(3..=max_total);
            let first = rng.gen_range(1..=total - 2);
            let second = rng.gen_range(1..=total - first - 1);
            let third = total - first - second;
            (
                random_term(rng, first, alphabet_size),
                random_term(rng, second, alphabet_size),
                random_term(rng, third, alphabet_size),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffreal::linalg::determinant;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn column_counts_and_order() {
        assert_eq!(polylinear_columns(1).len(), 1);
        assert_eq!(polylinear_columns(4).len(), 20);
        assert_eq!(polylinear_columns(5).len(), 70);
        let cols = polylinear_columns(2);
        let orders: Vec<Vec<u32>> = cols.iter().map(|m| m.factors().iter().map(|f| f.1).collect()).collect();
        assert_eq!(orders, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn small_basis_matrices() {
        assert_eq!(basis_matrix(1).to_dense(), vec![vec![BigInt::from(1)]]);
        let m = basis_matrix(2);
        let mut dense = m.to_dense();
        dense.sort();
        let one = BigInt::from(1);
        let zero = BigInt::from(0);
        assert_eq!(dense, vec![vec![zero.clone(), one.clone()], vec![one, zero]]);
    }

    #[test]
    fn basis_matrix_four_is_nonsingular() {
        let m = basis_matrix(4);
        assert_eq!((m.nrows(), m.ncols()), (20, 20));
        assert_eq!(determinant(&m), Some(BigInt::from(1)));
    }

    #[test]
    fn small_determinants() {
        // frozen from an independent symbolic expansion with the same row and column order
        assert_eq!(determinant(&basis_matrix(2)), Some(BigInt::from(-1)));
        assert_eq!(determinant(&basis_matrix(3)), Some(BigInt::from(1)));
    }

    #[test]
    fn rank_of_basis_matrix_five() {
        assert_eq!(rank_exact(&basis_matrix(5)), 70);
    }

    #[test]
    fn spanning_small() {
        let r = spanning_check(2, DEFAULT_SPANNING_CAP).unwrap();
        assert_eq!((r.monomials, r.rank), (2, 2));
        let r = spanning_check(3, DEFAULT_SPANNING_CAP).unwrap();
        assert_eq!((r.monomials, r.rank), (12, 6));
        let r = spanning_check(4, DEFAULT_SPANNING_CAP).unwrap();
        assert_eq!((r.monomials, r.rank), (120, 20));
        assert!(r.passed());
        assert_eq!(spanning_check(7, 6), Err(DiffRealError::CapExceeded { n: 7, cap: 6 }));
        assert_eq!(
            independence_check(8, 7),
            Err(DiffRealError::CapExceeded { n: 8, cap: 7 })
        );
    }

    #[test]
    fn identity_examples() {
        let l = |i| Term::Leaf(Letter(i));
        let samples = vec![
            (l(0), l(1), l(2)),
            (Term::mul(l(0), l(1)), l(2), l(3)),
            (l(0), l(0), l(0)),
        ];
        assert_eq!(
            verify_identities_under_realization(&samples),
            Ok(IdentityReport { triples: 3 })
        );
    }

    #[test]
    fn a_non_identity_is_caught() {
        // the realization is not associative, so the plain associator must not vanish
        let l = |i| Term::Leaf(Letter(i));
        let assoc = crate::terms::associator(&l(0), &l(1), &l(2));
        assert!(!expand_polynomial(&assoc).is_zero());
    }

    #[test]
    fn triple_generators() {
        assert_eq!(exhaustive_triples(3, 2).len(), 8);
        // (1,1,1): 4^3, plus three placements of a degree-2 term: 3 * 16 * 4 * 4
        assert_eq!(exhaustive_triples(4, 4).len(), 64 + 3 * 16 * 16);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (a, b, c) in random_triples(&mut rng, 50, 7, 4) {
            let d = a.degree() + b.degree() + c.degree();
            assert!((3..=7).contains(&d));
        }
    }
}
