//! From tableaux to monomials.
//!
//! A tableau with rows `1..k` maps to `X_k ∘ (X_{k-1} ∘ (… ∘ (X_2 ∘ X_1)))`
//! where each `X_i` is the left-normed product of row `i`, and `X_1` also
//! takes the nose as its last factor.

use num_bigint::BigInt;
use thiserror::Error;

use crate::combinatorics::central;
use crate::diagrams::{enumerate_tableaux, DiagramError, NovikovTableau, Violation};
use crate::terms::{Letter, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("tableau breaks a filling rule: {0}")]
    InvalidTableau(Violation),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A tableau together with its bracketing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub tableau: NovikovTableau,
    pub term: Term,
}

pub fn tableau_to_term(tableau: &NovikovTableau) -> Result<Term, BasisError> {
    if let Some(v) = tableau.validate().first_violation() {
        return Err(BasisError::InvalidTableau(v.clone()));
    }
    Ok(bracket(tableau))
}

fn bracket(tableau: &NovikovTableau) -> Term {
    let leaves = |row: &[Letter]| row.iter().copied().map(Term::Leaf).collect::<Vec<_>>();
    let mut rows = tableau.rows().iter();
    let Some(first) = rows.next() else {
        return Term::Leaf(tableau.nose());
    };
    let mut head = leaves(first);
    head.push(Term::Leaf(tableau.nose()));
    rows.fold(Term::left_normed(head), |acc, row| {
        Term::mul(Term::left_normed(leaves(row)), acc)
    })
}

/// The tableau basis of the homogeneous component with content `letters`.
pub fn basis_of_multidegree(letters: &[Letter]) -> Result<Vec<BasisElement>, BasisError> {
    let tableaux = enumerate_tableaux(letters.len(), letters)?;
    Ok(tableaux
        .into_iter()
        .map(|tableau| {
            let term = bracket(&tableau);
            BasisElement { tableau, term }
        })
        .collect())
}

/// The first `n` letters, `a, b, c, …`.
pub fn standard_letters(n: usize) -> Vec<Letter> {
    (0..n as u32).map(Letter).collect()
}

/// `dim N_n = C(2n-2, n-1)`.
pub fn dim_polylinear(n: u64) -> BigInt {
    assert!(n >= 1, "dim_polylinear needs n >= 1");
    central(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::Alphabet;

    fn drawn(rows: &[&str]) -> NovikovTableau {
        let rows = rows
            .iter()
            .map(|r| r.bytes().map(|b| Letter((b - b'a') as u32)).collect())
            .collect();
        NovikovTableau::from_drawn_rows(rows).unwrap()
    }

    fn printed(t: &NovikovTableau) -> String {
        Alphabet::standard(4).print(&tableau_to_term(t).unwrap())
    }

    #[test]
    fn bracketing_examples() {
        assert_eq!(printed(&drawn(&["cd", "b", "a"])), "(a*(b*(c*d)))");
        assert_eq!(printed(&drawn(&["bcd", "a"])), "(a*((b*c)*d))");
        assert_eq!(printed(&drawn(&["abcd"])), "(((a*b)*c)*d)");
        assert_eq!(printed(&drawn(&["b"])), "b");
    }

    #[test]
    fn invalid_tableau_is_rejected() {
        let err = tableau_to_term(&drawn(&["adc"])).unwrap_err();
        assert!(matches!(err, BasisError::InvalidTableau(Violation::Tail { .. })));
    }

    #[test]
    fn small_bases() {
        let b = basis_of_multidegree(&standard_letters(1)).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].term, Term::Leaf(Letter(0)));

        let alphabet = Alphabet::standard(2);
        let mut terms: Vec<String> = basis_of_multidegree(&standard_letters(2))
            .unwrap()
            .iter()
            .map(|e| alphabet.print(&e.term))
            .collect();
        terms.sort();
        assert_eq!(terms, vec!["(a*b)", "(b*a)"]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_polylinear(1), BigInt::from(1));
        assert_eq!(dim_polylinear(4), BigInt::from(20));
        assert_eq!(dim_polylinear(7), BigInt::from(924));
        assert_eq!(basis_of_multidegree(&standard_letters(7)).unwrap().len(), 924);
    }

    #[test]
    fn bracketing_is_injective() {
        for n in 1..=6 {
            let basis = basis_of_multidegree(&standard_letters(n)).unwrap();
            let terms: std::collections::BTreeSet<_> = basis.iter().map(|e| &e.term).collect();
            assert_eq!(terms.len(), basis.len());
            assert!(basis.iter().all(|e| e.term.is_polylinear() && e.term.degree() == n));
        }
    }
}
