//! The differential realization `a ∘ b = ∂(a)·b`.
//!
//! Every generator `x` becomes a differential indeterminate `u_x` in a
//! commutative ring with a derivation `∂`; a term expands to a polynomial in
//! the derivatives `u_x^(k)`. The realization satisfies both Novikov
//! identities, so it is used as an exact oracle: linear independence of the
//! expansions of basis monomials bounds the dimension from below, and the
//! rank of all monomial expansions shows the basis spans inside the image.
//!
//! Everything is exact. [`linalg`] holds the integer and rational elimination.

pub mod checks;
pub mod linalg;
pub mod normal;

pub use checks::{
    basis_matrix, independence_check, polylinear_columns, spanning_check, verify_identities_under_realization,
    IdentityReport, IndependenceReport, SpanningReport,
};
pub use linalg::{determinant, rank_exact, IntMatrix};
pub use normal::{normalize, CoordinateVector, Normalizer};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{NumAssign, One, Signed};
use serde_json::{json, Value};
use thiserror::Error;

use crate::terms::{Alphabet, Letter, Term, TermPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffRealError {
    #[error("{which} identity fails under the realization for triple {triple}")]
    IdentityViolation { which: &'static str, triple: String },
    #[error("n = {n} exceeds the configured cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("expansion lies outside the span of the basis expansions")]
    InconsistentSystem,
    #[error("basis expansions have rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("input multidegree does not match the normalizer's")]
    MultidegreeMismatch,
    #[error(transparent)]
    Basis(#[from] crate::basis::BasisError),
}

/// `Π u_letter^(k)`, stored as sorted `(letter, k)` factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DiffMonomial {
    factors: Vec<(Letter, u32)>,
}

impl DiffMonomial {
    pub fn new(mut factors: Vec<(Letter, u32)>) -> Self {
        factors.sort();
        DiffMonomial { factors }
    }

    pub fn variable(letter: Letter) -> Self {
        DiffMonomial {
            factors: vec![(letter, 0)],
        }
    }

    pub fn factors(&self) -> &[(Letter, u32)] {
        &self.factors
    }

    /// Number of factors.
    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// Sum of derivative orders.
    pub fn total_order(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.factors.iter().map(|f| f.0).collect()
    }

    fn times(&self, other: &Self) -> Self {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            if self.factors[i] <= other.factors[j] {
                factors.push(self.factors[i]);
                i += 1;
            } else {
                factors.push(other.factors[j]);
                j += 1;
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        DiffMonomial { factors }
    }

    /// `u_a^(2) u_b u_c`.
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|&(l, k)| match k {
                0 => format!("u_{}", alphabet.name(l)),
                k => format!("u_{}^({k})", alphabet.name(l)),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A linear combination of differential monomials.
///
/// Integer coefficients for expansions of single terms; rational ones once
/// rational combinations of terms are involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffPolynomial<C = BigInt> {
    terms: BTreeMap<DiffMonomial, C>,
}

impl<C> Default for DiffPolynomial<C> {
    fn default() -> Self {
        DiffPolynomial { terms: BTreeMap::new() }
    }
}

impl<C: Clone + NumAssign> DiffPolynomial<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: DiffMonomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_monomial(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &DiffMonomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DiffMonomial, &C)> {
        self.terms.iter()
    }

    pub fn add_monomial(&mut self, m: DiffMonomial, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(C::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &C) {
        for (m, c) in other.iter() {
            self.add_monomial(m.clone(), c.clone() * scale.clone());
        }
    }

    /// The derivation: Leibniz rule over the factors, `∂ u^(k) = u^(k+1)`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for i in 0..m.factors.len() {
                // equal neighbouring factors give the same product; count each once
                if i > 0 && m.factors[i] == m.factors[i - 1] {
                    continue;
                }
                let run = m.factors[i..].iter().take_while(|f| **f == m.factors[i]).count();
                let mut factors = m.factors.clone();
                factors[i].1 += 1;
                let mut mult = C::zero();
                for _ in 0..run {
                    mult += C::one();
                }
                out.add_monomial(DiffMonomial::new(factors), c.clone() * mult);
            }
        }
        out
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_monomial(a.times(b), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Applies a letter substitution to every factor.
    pub fn map_letters(&self, f: &impl Fn(Letter) -> Letter) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let factors = m.factors.iter().map(|&(l, k)| (f(l), k)).collect();
            out.add_monomial(DiffMonomial::new(factors), c.clone());
        }
        out
    }
}

impl<C: Clone + NumAssign + Signed + fmt::Display> DiffPolynomial<C> {
    /// `u_a^(2) u_b u_c + u_a^(1) u_b^(1) u_c`, monomials in stored order.
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, sign) {
                (0, "+") => {}
                (0, _) => out.push('-'),
                _ => out.push_str(&format!(" {sign} ")),
            }
            let mag = c.abs();
            if !mag.is_one() {
                out.push_str(&format!("{mag} "));
            }
            out.push_str(&m.to_text(alphabet));
        }
        out
    }

    /// `[{"factors": [["a", 2], ["b", 0]], "coeff": "3"}, …]`.
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let factors: Vec<Value> = m.factors.iter().map(|&(l, k)| json!([alphabet.name(l), k])).collect();
                    json!({ "factors": factors, "coeff": c.to_string() })
                })
                .collect(),
        )
    }
}

impl From<&DiffPolynomial<BigInt>> for DiffPolynomial<BigRational> {
    fn from(p: &DiffPolynomial<BigInt>) -> Self {
        DiffPolynomial {
            terms: p
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone())))
                .collect(),
        }
    }
}

/// Image of a term: `u_x` for a leaf, `∂(expand(l)) · expand(r)` for `l ∘ r`.
pub fn expand(term: &Term) -> DiffPolynomial {
    match term {
        Term::Leaf(l) => DiffPolynomial::monomial(DiffMonomial::variable(*l), BigInt::one()),
        Term::Node(l, r) => expand(l).derivative().product(&expand(r)),
    }
}

/// Linear extension of [`expand`] to rational combinations of terms.
pub fn expand_polynomial(p: &TermPolynomial) -> DiffPolynomial<BigRational> {
    let mut out = DiffPolynomial::zero();
    for (t, c) in p.iter() {
        out.add_scaled(&DiffPolynomial::from(&expand(t)), c);
    }
    out
}
