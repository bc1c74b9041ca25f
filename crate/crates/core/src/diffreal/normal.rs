//! Normal-form coordinates in the tableau basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{expand, expand_polynomial, DiffMonomial, DiffPolynomial, DiffRealError};
use crate::basis::{basis_of_multidegree, BasisElement};
use crate::terms::{Letter, Term, TermPolynomial};

type RatRow = BTreeMap<usize, BigRational>;

/// Coordinates of an element in the ordered basis of its multidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateVector {
    pub basis: Arc<[BasisElement]>,
    pub coords: Vec<BigRational>,
}

impl CoordinateVector {
    /// `Σ coords_i · expand(basis_i.term)`.
    pub fn reconstruct(&self) -> DiffPolynomial<BigRational> {
        let mut out = DiffPolynomial::zero();
        for (e, c) in self.basis.iter().zip(&self.coords) {
            if !c.is_zero() {
                out.add_scaled(&DiffPolynomial::from(&expand(&e.term)), c);
            }
        }
        out
    }

    /// The same element written as a combination of basis monomials.
    pub fn to_term_polynomial(&self) -> TermPolynomial {
        let mut p = TermPolynomial::zero();
        for (e, c) in self.basis.iter().zip(&self.coords) {
            p.add_term(e.term.clone(), c.clone()).expect("basis is homogeneous");
        }
        p
    }

    /// `(basis element, coordinate)` for nonzero coordinates.
    pub fn nonzero(&self) -> impl Iterator<Item = (&BasisElement, &BigRational)> {
        self.basis.iter().zip(&self.coords).filter(|(_, c)| !c.is_zero())
    }
}

/// Solver for one multidegree: an echelon form of the basis expansions with
/// the row operations recorded, reused across inputs.
#[derive(Debug, Clone)]
pub struct Normalizer {
    content: Vec<Letter>,
    basis: Arc<[BasisElement]>,
    columns: HashMap<DiffMonomial, usize>,
    // lead column -> (row, combination of basis rows producing it)
    pivots: BTreeMap<usize, (RatRow, RatRow)>,
}

impl Normalizer {
    /// Fails with `RankDeficient` if the basis expansions are dependent.
    pub fn new(letters: &[Letter]) -> Result<Self, DiffRealError> {
        let mut content = letters.to_vec();
        content.sort();
        let basis: Arc<[BasisElement]> = basis_of_multidegree(&content)?.into();
        let expansions: Vec<DiffPolynomial> = basis.iter().map(|e| expand(&e.term)).collect();

        let mut monomials: Vec<&DiffMonomial> = expansions.iter().flat_map(|p| p.iter().map(|(m, _)| m)).collect();
        monomials.sort();
        monomials.dedup();
        let columns: HashMap<DiffMonomial, usize> =
            monomials.into_iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();

        let mut this = Normalizer {
            content,
            basis,
            columns,
            pivots: BTreeMap::new(),
        };
        for (k, p) in expansions.iter().enumerate() {
            let row: RatRow = p
                .iter()
                .map(|(m, c)| (this.columns[m], BigRational::from_integer(c.clone())))
                .collect();
            let mut combo = RatRow::new();
            combo.insert(k, BigRational::one());
            let (row, combo) = this.reduce(row, combo, true);
            match row.keys().next() {
                Some(&lead) => {
                    this.pivots.insert(lead, (row, combo));
                }
                None => {
                    return Err(DiffRealError::RankDeficient {
                        rank: this.pivots.len(),
                        expected: this.basis.len(),
                    });
                }
            }
        }
        Ok(this)
    }

    pub fn basis(&self) -> &Arc<[BasisElement]> {
        &self.basis
    }

    /// Sorted letter multiset this normalizer handles.
    pub fn content(&self) -> &[Letter] {
        &self.content
    }

    /// True when every letter is distinct. Other multidegrees are only
    /// accepted once their basis passed the rank check in [`new`](Self::new).
    pub fn is_polylinear(&self) -> bool {
        self.content.windows(2).all(|w| w[0] != w[1])
    }

    /// Subtracts pivot rows in ascending column order. With `lead_only` the
    /// loop stops at the first column without a pivot.
    fn reduce(&self, mut row: RatRow, mut combo: RatRow, lead_only: bool) -> (RatRow, RatRow) {
        let mut cursor = 0;
        while let Some((col, value)) = row.range(cursor..).next().map(|(c, v)| (*c, v.clone())) {
            match self.pivots.get(&col) {
                Some((prow, pcombo)) => {
                    let factor = value / &prow[&col];
                    axpy(&mut row, prow, &factor);
                    axpy(&mut combo, pcombo, &factor);
                }
                None if lead_only => break,
                None => {}
            }
            cursor = col + 1;
        }
        (row, combo)
    }

    pub fn normalize_term(&self, term: &Term) -> Result<CoordinateVector, DiffRealError> {
        self.normalize(&TermPolynomial::from_term(term.clone()))
    }

    pub fn normalize(&self, p: &TermPolynomial) -> Result<CoordinateVector, DiffRealError> {
        if let Some(md) = p.multidegree() {
            if md != self.content {
                return Err(DiffRealError::MultidegreeMismatch);
            }
        }
        let expansion = expand_polynomial(p);
        let mut row = RatRow::new();
        for (m, c) in expansion.iter() {
            let col = *self.columns.get(m).ok_or(DiffRealError::InconsistentSystem)?;
            row.insert(col, c.clone());
        }
        let (rest, combo) = self.reduce(row, RatRow::new(), false);
        if !rest.is_empty() {
            return Err(DiffRealError::InconsistentSystem);
        }
        // combo accumulated -Σ f_i·(pivot i in basis terms), and the input equals Σ f_i·pivot_i
        let mut coords = vec![BigRational::zero(); self.basis.len()];
        for (k, v) in combo {
            coords[k] = -v;
        }
        Ok(CoordinateVector {
            basis: Arc::clone(&self.basis),
            coords,
        })
    }
}

/// `target -= factor · source`, dropping cancelled entries.
fn axpy(target: &mut RatRow, source: &RatRow, factor: &BigRational) {
    for (c, v) in source {
        let entry = target.entry(*c).or_insert_with(BigRational::zero);
        *entry -= factor * v;
        if entry.is_zero() {
            target.remove(c);
        }
    }
}

/// Coordinates of `p` in the tableau basis of its multidegree.
pub fn normalize(p: &TermPolynomial) -> Result<CoordinateVector, DiffRealError> {
    let letters = p.multidegree().ok_or(DiffRealError::MultidegreeMismatch)?;
    Normalizer::new(&letters)?.normalize(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::standard_letters;
    use crate::terms::{associator, rat, Alphabet};

    #[test]
    fn basis_elements_get_unit_vectors() {
        let nz = Normalizer::new(&standard_letters(4)).unwrap();
        for (i, e) in nz.basis().iter().enumerate() {
            let v = nz.normalize_term(&e.term).unwrap();
            for (j, c) in v.coords.iter().enumerate() {
                assert_eq!(c, &rat((i == j) as i64));
            }
        }
    }

    #[test]
    fn associator_rewrites_right_normed() {
        let a = Alphabet::standard(3);
        let (x, y, z) = (a.parse("a").unwrap(), a.parse("b").unwrap(), a.parse("c").unwrap());
        let lhs = TermPolynomial::from_term(a.parse("((a*b)*c)").unwrap())
            .add(&associator(&x, &y, &z))
            .unwrap();
        let rhs = TermPolynomial::from_term(a.parse("(a*(b*c))").unwrap());
        assert_eq!(normalize(&lhs).unwrap(), normalize(&rhs).unwrap());
    }

    #[test]
    fn reconstruction_for_a_non_basis_term() {
        let a = Alphabet::standard(4);
        let t = a.parse("(c*(b*(a*d)))").unwrap();
        let v = normalize(&TermPolynomial::from_term(t.clone())).unwrap();
        assert_eq!(v.reconstruct(), DiffPolynomial::from(&expand(&t)));
    }

    #[test]
    fn multidegree_is_checked() {
        let nz = Normalizer::new(&standard_letters(3)).unwrap();
        let a = Alphabet::standard(4);
        let t = a.parse("(a*(b*d))").unwrap();
        assert_eq!(nz.normalize_term(&t), Err(DiffRealError::MultidegreeMismatch));
        assert_eq!(
            normalize(&TermPolynomial::zero()),
            Err(DiffRealError::MultidegreeMismatch)
        );
    }

    #[test]
    fn zero_polynomial_has_zero_coordinates() {
        let nz = Normalizer::new(&standard_letters(3)).unwrap();
        let v = nz.normalize(&TermPolynomial::zero()).unwrap();
        assert!(v.coords.iter().all(Zero::is_zero));
    }
}
