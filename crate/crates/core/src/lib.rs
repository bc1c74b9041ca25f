//! Free Novikov algebras: the Young-diagram basis, its bracketing into
//! nonassociative monomials, the codimension sequence `C(2n-2, n-1)` and
//! normal forms computed through the differential realization
//! `a ∘ b = ∂(a)·b`.
//!
//! Module map:
//!
//! - [`terms`]: nonassociative terms, their grammar, and the Novikov identities;
//! - [`diagrams`]: Young shapes, Novikov diagrams and tableaux;
//! - [`basis`]: tableau bracketing and the basis of a multidegree;
//! - [`diffreal`]: differential polynomials, exact elimination, normal forms;
//! - [`combinatorics`]: binomials, partitions, counting identities, power series;
//! - [`cli`]: the `novikov` command line.

pub mod basis;
pub mod cli;
pub mod combinatorics;
pub mod diagrams;
pub mod diffreal;
pub mod terms;

pub use basis::{basis_of_multidegree, dim_polylinear, tableau_to_term, BasisElement};
pub use diagrams::{enumerate_tableaux, enumerate_young_shapes, NovikovTableau, YoungShape};
pub use diffreal::{expand, DiffMonomial, DiffPolynomial};
pub use terms::{parse_term, print_term, Alphabet, Letter, Term, TermPolynomial};
