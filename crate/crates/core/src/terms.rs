//! Nonassociative terms over an ordered alphabet.
//!
//! A [`Term`] is a binary tree whose leaves are [`Letter`]s; the product
//! `l ∘ r` is a node. Letters are positions in an [`Alphabet`], so the
//! alphabet order is the integer order on letters.
//!
//! The text form is fully parenthesized:
//!
//! ```text
//! term := letter | "(" term "*" term ")"
//! ```
//!
//! Whitespace is insignificant and `∘` is accepted in place of `*`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("invalid letter name {0:?}")]
    InvalidLetterName(String),
    #[error("duplicate letter {0:?} in alphabet")]
    DuplicateLetter(String),
    #[error("unknown letter {name:?} at byte {offset}")]
    UnknownLetter { name: String, offset: usize },
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("unbalanced parentheses at byte {offset}")]
    UnbalancedParens { offset: usize },
    #[error("letter index {0} is outside the alphabet")]
    LetterOutOfRange(u32),
    #[error("terms of different multidegree cannot be combined")]
    Inhomogeneous,
    #[error("invalid JSON term: {0}")]
    Json(String),
}

/// A generator, identified by its position in the alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered set of generator names. Order is sequence position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
}

const RESERVED: &[char] = &['(', ')', '*', '∘', ','];

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, TermError> {
        let mut out = Alphabet {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            let name = name.into();
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
                return Err(TermError::InvalidLetterName(name));
            }
            if out.index.contains_key(&name) {
                return Err(TermError::DuplicateLetter(name));
            }
            out.index.insert(name.clone(), Letter(out.names.len() as u32));
            out.names.push(name);
        }
        Ok(out)
    }

    /// `a, b, …, z`, then `x26, x27, …`.
    pub fn standard(size: usize) -> Self {
        let names = (0..size).map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("x{i}")
            }
        });
        Self::new(names).expect("standard names are valid")
    }

    /// Parses a comma-separated list such as `"a,b,c"`.
    pub fn from_list(list: &str) -> Result<Self, TermError> {
        Self::new(list.split(',').map(str::trim))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.names.len() as u32).map(Letter)
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.names.len()
    }

    /// Canonical text of a term.
    pub fn print(&self, term: &Term) -> String {
        let mut out = String::new();
        self.write_term(term, &mut out);
        out
    }

    fn write_term(&self, term: &Term, out: &mut String) {
        match term {
            Term::Leaf(l) => out.push_str(self.name(*l)),
            Term::Node(l, r) => {
                out.push('(');
                self.write_term(l, out);
                out.push('*');
                self.write_term(r, out);
                out.push(')');
            }
        }
    }

    pub fn parse(&self, text: &str) -> Result<Term, TermError> {
        parse_term(text, self)
    }
}

/// A nonassociative monomial: a leaf or a product `left ∘ right`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Leaf(Letter),
    Node(Box<Term>, Box<Term>),
}

impl Term {
    pub fn leaf(l: Letter) -> Self {
        Term::Leaf(l)
    }

    /// `left ∘ right`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(left: Term, right: Term) -> Self {
        Term::Node(Box::new(left), Box::new(right))
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        match self {
            Term::Leaf(_) => 1,
            Term::Node(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Leaf(_) => 0,
            Term::Node(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Letter>) {
        match self {
            Term::Leaf(l) => out.push(*l),
            Term::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// Sorted leaf multiset.
    pub fn multidegree(&self) -> Vec<Letter> {
        let mut leaves = self.leaves();
        leaves.sort();
        leaves
    }

    /// True when no letter occurs twice.
    pub fn is_polylinear(&self) -> bool {
        let md = self.multidegree();
        md.windows(2).all(|w| w[0] != w[1])
    }

    /// Replaces every letter through `f`.
    pub fn map_letters(&self, f: &impl Fn(Letter) -> Letter) -> Term {
        match self {
            Term::Leaf(l) => Term::Leaf(f(*l)),
            Term::Node(l, r) => Term::mul(l.map_letters(f), r.map_letters(f)),
        }
    }

    /// Left-normed product `(((t_1 ∘ t_2) ∘ t_3) ∘ …)`. Panics on an empty list.
    pub fn left_normed(factors: impl IntoIterator<Item = Term>) -> Term {
        let mut it = factors.into_iter();
        let first = it.next().expect("left_normed of no factors");
        it.fold(first, Term::mul)
    }

    /// Right-normed product `t_1 ∘ (t_2 ∘ (… ∘ t_k))`. Panics on an empty list.
    pub fn right_normed(factors: impl IntoIterator<Item = Term>) -> Term {
        let items: Vec<Term> = factors.into_iter().collect();
        let mut it = items.into_iter().rev();
        let last = it.next().expect("right_normed of no factors");
        it.fold(last, |acc, t| Term::mul(t, acc))
    }

    /// Borrowing display adapter that prints with `alphabet`.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> TermDisplay<'a> {
        TermDisplay { term: self, alphabet }
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    alphabet: &'a Alphabet,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.print(self.term))
    }
}

pub fn print_term(term: &Term, alphabet: &Alphabet) -> String {
    alphabet.print(term)
}

pub fn parse_term(text: &str, alphabet: &Alphabet) -> Result<Term, TermError> {
    let mut p = Parser {
        text,
        pos: 0,
        alphabet,
        open: 0,
    };
    let term = p.term()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(term),
        Some(')') => Err(TermError::UnbalancedParens { offset: p.pos }),
        Some(_) => Err(TermError::SyntaxError {
            offset: p.pos,
            message: "trailing input after term; products need outer parentheses".into(),
        }),
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
    open: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eof_error(&self, what: &str) -> TermError {
        if self.open > 0 {
            TermError::UnbalancedParens { offset: self.pos }
        } else {
            TermError::SyntaxError {
                offset: self.pos,
                message: format!("expected {what}, found end of input"),
            }
        }
    }

    fn term(&mut self) -> Result<Term, TermError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.eof_error("a term")),
            Some('(') => {
                self.bump();
                self.open += 1;
                let left = self.term()?;
                self.skip_ws();
                match self.peek() {
                    Some('*') | Some('∘') => self.bump(),
                    None => return Err(self.eof_error("'*'")),
                    Some(c) => {
                        return Err(TermError::SyntaxError {
                            offset: self.pos,
                            message: format!("expected '*', found {c:?}"),
                        })
                    }
                }
                let right = self.term()?;
                self.skip_ws();
                match self.peek() {
                    Some(')') => {
                        self.bump();
                        self.open -= 1;
                        Ok(Term::mul(left, right))
                    }
                    None => Err(self.eof_error("')'")),
                    Some(c) => Err(TermError::SyntaxError {
                        offset: self.pos,
                        message: format!("expected ')', found {c:?}"),
                    }),
                }
            }
            Some(')') => Err(TermError::UnbalancedParens { offset: self.pos }),
            Some(c) if c == '*' || c == '∘' => Err(TermError::SyntaxError {
                offset: self.pos,
                message: "expected a term, found '*'".into(),
            }),
            Some(_) => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| !c.is_whitespace() && !RESERVED.contains(&c))
                {
                    self.bump();
                }
                let name = &self.text[start..self.pos];
                if name.is_empty() {
                    return Err(TermError::SyntaxError {
                        offset: start,
                        message: "expected a letter".into(),
                    });
                }
                self.alphabet
                    .letter(name)
                    .map(Term::Leaf)
                    .ok_or_else(|| TermError::UnknownLetter {
                        name: name.to_string(),
                        offset: start,
                    })
            }
        }
    }
}

/// JSON form: a leaf is its name, a product is `[left, right]`.
pub fn term_to_json(term: &Term, alphabet: &Alphabet) -> Value {
    match term {
        Term::Leaf(l) => Value::String(alphabet.name(*l).to_string()),
        Term::Node(l, r) => Value::Array(vec![term_to_json(l, alphabet), term_to_json(r, alphabet)]),
    }
}

pub fn term_from_json(value: &Value, alphabet: &Alphabet) -> Result<Term, TermError> {
    match value {
        Value::String(name) => alphabet
            .letter(name)
            .map(Term::Leaf)
            .ok_or_else(|| TermError::UnknownLetter {
                name: name.clone(),
                offset: 0,
            }),
        Value::Array(items) if items.len() == 2 => Ok(Term::mul(
            term_from_json(&items[0], alphabet)?,
            term_from_json(&items[1], alphabet)?,
        )),
        other => Err(TermError::Json(format!("expected a letter or a pair, got {other}"))),
    }
}

/// A homogeneous linear combination of terms with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TermPolynomial {
    terms: BTreeMap<Term, BigRational>,
}

impl TermPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(term: Term) -> Self {
        let mut p = Self::zero();
        p.terms.insert(term, BigRational::one());
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

    /// Shared multidegree of the keys, `None` for the zero polynomial.
    pub fn multidegree(&self) -> Option<Vec<Letter>> {
        self.terms.keys().next().map(Term::multidegree)
    }

    pub fn coefficient(&self, term: &Term) -> BigRational {
        self.terms.get(term).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &BigRational)> {
        self.terms.iter()
    }

    /// Adds `coeff · term`, dropping the key if it cancels.
    pub fn add_term(&mut self, term: Term, coeff: BigRational) -> Result<(), TermError> {
        if coeff.is_zero() {
            return Ok(());
        }
        if let Some(md) = self.multidegree() {
            if md != term.multidegree() {
                return Err(TermError::Inhomogeneous);
            }
        }
        let entry = self.terms.entry(term).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, TermError> {
        let mut out = self.clone();
        for (t, c) in other.iter() {
            out.add_term(t.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TermError> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TermPolynomial {
            terms: self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect(),
        }
    }

    /// Terms sorted by their printed form.
    pub fn canonical_terms(&self, alphabet: &Alphabet) -> Vec<(String, Term, BigRational)> {
        let mut out: Vec<_> = self
            .terms
            .iter()
            .map(|(t, c)| (alphabet.print(t), t.clone(), c.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// `1 (a*(b*c)) - 1 ((a*b)*c)`, in canonical order.
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.canonical_terms(alphabet)
            .iter()
            .enumerate()
            .map(|(i, (s, _, c))| {
                let sign = if c < &BigRational::zero() {
                    "-"
                } else if i == 0 {
                    ""
                } else {
                    "+"
                };
                let mag = if c < &BigRational::zero() {
                    -c.clone()
                } else {
                    c.clone()
                };
                let lead = if i == 0 { sign.to_string() } else { format!(" {sign} ") };
                format!("{lead}{mag} {s}")
            })
            .collect()
    }
}

impl From<Term> for TermPolynomial {
    fn from(t: Term) -> Self {
        TermPolynomial::from_term(t)
    }
}

fn pm_one(positive: &Term, negative: &Term) -> TermPolynomial {
    let mut p = TermPolynomial::from_term(positive.clone());
    p.add_term(negative.clone(), -BigRational::one())
        .expect("same leaves on both sides");
    p
}

/// `(a, b, c) = a∘(b∘c) − (a∘b)∘c`.
pub fn associator(a: &Term, b: &Term, c: &Term) -> TermPolynomial {
    let right = Term::mul(a.clone(), Term::mul(b.clone(), c.clone()));
    let left = Term::mul(Term::mul(a.clone(), b.clone()), c.clone());
    pm_one(&right, &left)
}

/// The two defects `(a,b,c) − (a,c,b)` and `a∘(b∘c) − b∘(a∘c)`.
///
/// Both vanish in any Novikov algebra.
pub fn novikov_identity_defects(a: &Term, b: &Term, c: &Term) -> (TermPolynomial, TermPolynomial) {
    let right_symmetry = associator(a, b, c)
        .sub(&associator(a, c, b))
        .expect("associators share leaves");
    let left_commutativity = pm_one(
        &Term::mul(a.clone(), Term::mul(b.clone(), c.clone())),
        &Term::mul(b.clone(), Term::mul(a.clone(), c.clone())),
    );
    (right_symmetry, left_commutativity)
}

/// All binary tree shapes with `n` leaves; leaves carry a placeholder letter.
fn tree_shapes(n: usize) -> Vec<Term> {
    let mut table: Vec<Vec<Term>> = vec![Vec::new(), vec![Term::Leaf(Letter(0))]];
    for size in 2..=n {
        let mut shapes = Vec::new();
        for left in 1..size {
            for l in &table[left] {
                for r in &table[size - left] {
                    shapes.push(Term::mul(l.clone(), r.clone()));
                }
            }
        }
        table.push(shapes);
    }
    table.swap_remove(n)
}

fn fill_leaves(shape: &Term, letters: &mut impl Iterator<Item = Letter>) -> Term {
    match shape {
        Term::Leaf(_) => Term::Leaf(letters.next().expect("enough letters")),
        Term::Node(l, r) => {
            let l = fill_leaves(l, letters);
            let r = fill_leaves(r, letters);
            Term::mul(l, r)
        }
    }
}

fn permutations(items: &[Letter]) -> Vec<Vec<Letter>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Every monomial whose leaves are a permutation of `letters`.
///
/// With `n` distinct letters there are `n! · Catalan(n-1)` of them.
pub fn enumerate_all_polylinear_terms(letters: &[Letter]) -> Vec<Term> {
    if letters.is_empty() {
        return Vec::new();
    }
    let shapes = tree_shapes(letters.len());
    let perms = permutations(letters);
    let mut out = Vec::with_capacity(shapes.len() * perms.len());
    for shape in &shapes {
        for perm in &perms {
            out.push(fill_leaves(shape, &mut perm.iter().copied()));
        }
    }
    out
}

/// A random tree with the given leaves, in order.
pub fn random_tree_over<R: Rng + ?Sized>(rng: &mut R, leaves: &[Letter]) -> Term {
    match leaves.len() {
        0 => panic!("a term needs at least one leaf"),
        1 => Term::Leaf(leaves[0]),
        n => {
            let split = rng.gen_range(1..n);
            let l = random_tree_over(rng, &leaves[..split]);
            let r = random_tree_over(rng, &leaves[split..]);
            Term::mul(l, r)
        }
    }
}

/// A random term of `degree` leaves drawn with repetition from the first `alphabet_size` letters.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, degree: usize, alphabet_size: usize) -> Term {
    let leaves: Vec<Letter> = (0..degree)
        .map(|_| Letter(rng.gen_range(0..alphabet_size as u32)))
        .collect();
    random_tree_over(rng, &leaves)
}

/// A random monomial using each of `letters` exactly once.
pub fn random_polylinear_term<R: Rng + ?Sized>(rng: &mut R, letters: &[Letter]) -> Term {
    let mut leaves = letters.to_vec();
    leaves.shuffle(rng);
    random_tree_over(rng, &leaves)
}

#[cfg(test)]
/// Rational from a small integer.
pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(n))
}
