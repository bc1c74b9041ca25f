//! Young shapes, Novikov diagrams and Novikov tableaux.
//!
//! A Novikov diagram is a Young shape with one extra box, the nose, at the
//! end of the first row. A Novikov tableau fills it with letters so that
//!
//! - block rule: `a[i][1] >= a[i+1][1]` whenever rows `i` and `i+1` have
//!   equal length;
//! - tail rule: reading every non-first-column entry from the bottom row
//!   up, left to right inside a row, and ending with the nose, gives a
//!   non-decreasing word.
//!
//! Rows and columns in reports are 1-based.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::combinatorics::{binomial, multinomial};
use crate::terms::{Alphabet, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("row lengths {0:?} are not a partition")]
    NotAPartition(Vec<usize>),
    #[error("entry layout {rows:?} does not fit shape {shape:?}")]
    ShapeMismatch { shape: Vec<usize>, rows: Vec<usize> },
    #[error("expected {expected} letters, got {actual}")]
    DegreeMismatch { expected: usize, actual: usize },
    #[error("a tableau has at least one box")]
    EmptyDegree,
    #[error("invalid tableau JSON: {0}")]
    Json(String),
}

/// Row lengths `r_1 >= r_2 >= … >= r_k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct YoungShape {
    rows: Vec<usize>,
}

impl YoungShape {
    pub fn new(rows: Vec<usize>) -> Result<Self, DiagramError> {
        let ok = rows.iter().all(|&r| r >= 1) && rows.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(YoungShape { rows })
        } else {
            Err(DiagramError::NotAPartition(rows))
        }
    }

    pub fn empty() -> Self {
        YoungShape::default()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn degree(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Maximal runs of equal row lengths, top to bottom: `(length, count)`.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &r in &self.rows {
            match out.last_mut() {
                Some((len, count)) if *len == r => *count += 1,
                _ => out.push((r, 1)),
            }
        }
        out
    }
}

impl fmt::Display for YoungShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All Young shapes of degree `d`, lexicographically decreasing.
pub fn enumerate_young_shapes(d: usize) -> Vec<YoungShape> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<YoungShape>) {
        if remaining == 0 {
            out.push(YoungShape { rows: prefix.clone() });
            return;
        }
        for first in (1..=remaining.min(max)).rev() {
            prefix.push(first);
            rec(remaining - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// A Young shape plus the nose box at `(1, r_1 + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NovikovDiagram {
    pub shape: YoungShape,
}

impl NovikovDiagram {
    pub fn new(shape: YoungShape) -> Self {
        NovikovDiagram { shape }
    }

    pub fn degree(&self) -> usize {
        self.shape.degree() + 1
    }

    /// 1-based `(row, column)` of the nose.
    pub fn nose_position(&self) -> (usize, usize) {
        (1, self.shape.rows.first().copied().unwrap_or(0) + 1)
    }
}

/// A violated filling rule, with 1-based cell coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// First-column entries of equal-length rows `upper`, `upper + 1` increase.
    Block { upper: usize, lower: usize },
    /// Consecutive cells of the tail reading word decrease.
    Tail {
        before: (usize, usize),
        after: (usize, usize),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Block { upper, lower } => {
                write!(f, "block rule: a({upper},1) < a({lower},1) in equal-length rows")
            }
            Violation::Tail { before, after } => write!(
                f,
                "tail rule: a({},{}) > a({},{})",
                before.0, before.1, after.0, after.1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// A filled Novikov diagram. `rows[i]` holds the `r_{i+1}` entries of row `i + 1`;
/// the nose is kept separately.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NovikovTableau {
    shape: YoungShape,
    rows: Vec<Vec<Letter>>,
    nose: Letter,
}

impl NovikovTableau {
    /// Checks only that the layout matches the shape; see [`validate`](Self::validate)
    /// for the filling rules.
    pub fn new(shape: YoungShape, rows: Vec<Vec<Letter>>, nose: Letter) -> Result<Self, DiagramError> {
        let lengths: Vec<usize> = rows.iter().map(Vec::len).collect();
        if lengths != shape.rows {
            return Err(DiagramError::ShapeMismatch {
                shape: shape.rows.clone(),
                rows: lengths,
            });
        }
        Ok(NovikovTableau { shape, rows, nose })
    }

    /// Builds from rows where the last entry of the first row is the nose,
    /// the way tableaux are drawn: `[[c, d], [b], [a]]`.
    pub fn from_drawn_rows(mut rows: Vec<Vec<Letter>>) -> Result<Self, DiagramError> {
        let nose = rows.first_mut().and_then(Vec::pop).ok_or(DiagramError::EmptyDegree)?;
        if rows[0].is_empty() {
            if rows.len() > 1 {
                let lengths = rows.iter().map(Vec::len).collect();
                return Err(DiagramError::NotAPartition(lengths));
            }
            rows.clear();
        }
        let shape = YoungShape::new(rows.iter().map(Vec::len).collect())?;
        Self::new(shape, rows, nose)
    }

    pub fn shape(&self) -> &YoungShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn nose(&self) -> Letter {
        self.nose
    }

    pub fn degree(&self) -> usize {
        self.shape.degree() + 1
    }

    /// Rows with the nose appended to the first, as drawn.
    pub fn drawn_rows(&self) -> Vec<Vec<Letter>> {
        let mut rows = self.rows.clone();
        match rows.first_mut() {
            Some(first) => first.push(self.nose),
            None => rows.push(vec![self.nose]),
        }
        rows
    }

    /// Sorted multiset of all entries.
    pub fn content(&self) -> Vec<Letter> {
        let mut all: Vec<Letter> = self.rows.iter().flatten().copied().collect();
        all.push(self.nose);
        all.sort();
        all
    }

    pub fn first_column(&self) -> Vec<Letter> {
        self.rows.iter().map(|r| r[0]).collect()
    }

    /// Tail reading word with 1-based cell positions, ending with the nose.
    pub fn tail_word(&self) -> Vec<((usize, usize), Letter)> {
        let mut word = Vec::new();
        for (i, row) in self.rows.iter().enumerate().rev() {
            for (j, &l) in row.iter().enumerate().skip(1) {
                word.push(((i + 1, j + 1), l));
            }
        }
        word.push((NovikovDiagram::new(self.shape.clone()).nose_position(), self.nose));
        word
    }

    /// Applies both filling rules and reports every violation in reading order:
    /// block violations top to bottom, then tail violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for i in 0..self.rows.len().saturating_sub(1) {
            if self.shape.rows[i] == self.shape.rows[i + 1] && self.rows[i][0] < self.rows[i + 1][0] {
                violations.push(Violation::Block {
                    upper: i + 1,
                    lower: i + 2,
                });
            }
        }
        for w in self.tail_word().windows(2) {
            if w[0].1 > w[1].1 {
                violations.push(Violation::Tail {
                    before: w[0].0,
                    after: w[1].0,
                });
            }
        }
        ValidationReport { violations }
    }

    pub fn map_letters(&self, f: &impl Fn(Letter) -> Letter) -> Self {
        NovikovTableau {
            shape: self.shape.clone(),
            rows: self.rows.iter().map(|r| r.iter().map(|&l| f(l)).collect()).collect(),
            nose: f(self.nose),
        }
    }

    /// `{"shape": [...], "rows": [[...], ...], "nose": "x"}`; rows exclude the nose.
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let rows: Vec<Vec<&str>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&l| alphabet.name(l)).collect())
            .collect();
        json!({ "shape": self.shape.rows, "rows": rows, "nose": alphabet.name(self.nose) })
    }

    pub fn from_json(value: &Value, alphabet: &Alphabet) -> Result<Self, DiagramError> {
        let bad = |m: &str| DiagramError::Json(m.to_string());
        let letter = |v: &Value| {
            v.as_str()
                .and_then(|s| alphabet.letter(s))
                .ok_or_else(|| bad("entries must be alphabet letters"))
        };
        let shape: Vec<usize> = value["shape"]
            .as_array()
            .ok_or_else(|| bad("missing shape"))?
            .iter()
            .map(|v| {
                v.as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| bad("shape entries must be integers"))
            })
            .collect::<Result<_, _>>()?;
        let rows = value["rows"]
            .as_array()
            .ok_or_else(|| bad("missing rows"))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| bad("rows must be arrays"))?
                    .iter()
                    .map(letter)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let nose = letter(&value["nose"])?;
        Self::new(YoungShape::new(shape)?, rows, nose)
    }

    /// One CSV record: `shape,rows,nose` with `-` between parts, `;` between
    /// rows and spaces between entries, e.g. `2-1,b c;a,d`.
    pub fn to_csv_record(&self, alphabet: &Alphabet) -> String {
        let shape: Vec<String> = self.shape.rows.iter().map(ToString::to_string).collect();
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&l| alphabet.name(l)).collect::<Vec<_>>().join(" "))
            .collect();
        format!("{},{},{}", shape.join("-"), rows.join(";"), alphabet.name(self.nose))
    }

    /// Multi-line drawing, nose included.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.drawn_rows()
            .iter()
            .map(|r| r.iter().map(|&l| alphabet.name(l)).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

pub const CSV_HEADER: &str = "shape,rows,nose";

/// Letter multiset as `(letter, count)`, ascending.
fn counts(letters: &[Letter]) -> BTreeMap<Letter, usize> {
    let mut out = BTreeMap::new();
    for &l in letters {
        *out.entry(l).or_insert(0) += 1;
    }
    out
}

/// Every weakly decreasing sequence of length `len` drawn from `pool`.
fn decreasing_choices(pool: &BTreeMap<Letter, usize>, len: usize) -> Vec<Vec<Letter>> {
    fn rec(items: &[(Letter, usize)], len: usize, prefix: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let Some((&(letter, avail), rest)) = items.split_first() else {
            return;
        };
        let need = len - prefix.len();
        for take in (0..=avail.min(need)).rev() {
            prefix.extend(std::iter::repeat_n(letter, take));
            rec(rest, len, prefix, out);
            prefix.truncate(prefix.len() - take);
        }
    }
    // largest letters first so each choice is already weakly decreasing
    let items: Vec<(Letter, usize)> = pool.iter().rev().map(|(&l, &c)| (l, c)).collect();
    let mut out = Vec::new();
    rec(&items, len, &mut Vec::new(), &mut out);
    out
}

fn tableaux_of_shape(shape: &YoungShape, letters: &[Letter]) -> Vec<NovikovTableau> {
    let blocks = shape.blocks();
    let mut out = Vec::new();

    fn rec(
        shape: &YoungShape,
        blocks: &[(usize, usize)],
        pool: &mut BTreeMap<Letter, usize>,
        column: &mut Vec<Letter>,
        out: &mut Vec<NovikovTableau>,
    ) {
        let Some((&(_, count), rest)) = blocks.split_first() else {
            out.push(fill_tail(shape, column, pool));
            return;
        };
        for choice in decreasing_choices(pool, count) {
            for l in &choice {
                let c = pool.get_mut(l).expect("chosen from pool");
                *c -= 1;
                if *c == 0 {
                    pool.remove(l);
                }
            }
            column.extend(&choice);
            rec(shape, rest, pool, column, out);
            column.truncate(column.len() - choice.len());
            for &l in &choice {
                *pool.entry(l).or_insert(0) += 1;
            }
        }
    }

    rec(shape, &blocks, &mut counts(letters), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Places the first column, then the remaining letters in ascending order
/// along the tail reading word.
fn fill_tail(shape: &YoungShape, column: &[Letter], pool: &BTreeMap<Letter, usize>) -> NovikovTableau {
    let mut rest = pool.iter().flat_map(|(&l, &c)| std::iter::repeat_n(l, c));
    let mut rows: Vec<Vec<Letter>> = column.iter().map(|&l| vec![l]).collect();
    for i in (0..rows.len()).rev() {
        for _ in 1..shape.rows[i] {
            rows[i].push(rest.next().expect("letter count matches shape"));
        }
    }
    let nose = rest.next().expect("one letter left for the nose");
    NovikovTableau {
        shape: shape.clone(),
        rows,
        nose,
    }
}

/// All Novikov tableaux with content `letters` (a multiset of size `n`).
///
/// Output is grouped by shape in [`enumerate_young_shapes`] order, then
/// sorted by the row-major entries of the rows, the nose last. Tableaux with identical entries
/// appear once.
pub fn enumerate_tableaux(n: usize, letters: &[Letter]) -> Result<Vec<NovikovTableau>, DiagramError> {
    if letters.len() != n {
        return Err(DiagramError::DegreeMismatch {
            expected: n,
            actual: letters.len(),
        });
    }
    if n == 0 {
        return Err(DiagramError::EmptyDegree);
    }
    Ok(enumerate_young_shapes(n - 1)
        .iter()
        .flat_map(|shape| tableaux_of_shape(shape, letters))
        .collect())
}

/// Tableaux of one shape with content `letters`.
pub fn enumerate_tableaux_of_shape(
    shape: &YoungShape,
    letters: &[Letter],
) -> Result<Vec<NovikovTableau>, DiagramError> {
    if shape.degree() + 1 != letters.len() {
        return Err(DiagramError::DegreeMismatch {
            expected: shape.degree() + 1,
            actual: letters.len(),
        });
    }
    Ok(tableaux_of_shape(shape, letters))
}

/// Number of fillings of `shape` by `n` distinct letters:
/// `C(n, m) · m! / (m_1! m_2! …)` where `m_i` counts rows of each length.
pub fn count_fillings_per_shape(shape: &YoungShape, n: usize) -> Result<BigInt, DiagramError> {
    if shape.degree() + 1 != n {
        return Err(DiagramError::DegreeMismatch {
            expected: shape.degree() + 1,
            actual: n,
        });
    }
    let m = shape.num_rows();
    let mults: Vec<u64> = shape.blocks().iter().map(|&(_, c)| c as u64).collect();
    let arrangements = multinomial(m as u64, &mults).expect("block sizes sum to the row count");
    Ok(binomial(n as i64, m as i64) * arrangements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(s: &str) -> Vec<Letter> {
        s.bytes().map(|b| Letter((b - b'a') as u32)).collect()
    }

    fn drawn(rows: &[&str]) -> NovikovTableau {
        NovikovTableau::from_drawn_rows(rows.iter().map(|r| letters(r)).collect()).unwrap()
    }

    #[test]
    fn shapes_of_three() {
        let rows: Vec<Vec<usize>> = enumerate_young_shapes(3).iter().map(|s| s.rows().to_vec()).collect();
        assert_eq!(rows, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(enumerate_young_shapes(0), vec![YoungShape::empty()]);
        assert_eq!(enumerate_young_shapes(6).len(), 11);
    }

    #[test]
    fn shape_validation() {
        assert!(YoungShape::new(vec![2, 3]).is_err());
        assert!(YoungShape::new(vec![2, 0]).is_err());
        assert_eq!(YoungShape::new(vec![3, 3, 1]).unwrap().blocks(), vec![(3, 2), (1, 1)]);
    }

    #[test]
    fn diagram_nose() {
        let d = NovikovDiagram::new(YoungShape::new(vec![2, 1]).unwrap());
        assert_eq!(d.degree(), 4);
        assert_eq!(d.nose_position(), (1, 3));
        let d = NovikovDiagram::new(YoungShape::empty());
        assert_eq!((d.degree(), d.nose_position()), (1, (1, 1)));
    }

    #[test]
    fn twenty_tableaux_for_abcd() {
        let all = enumerate_tableaux(4, &letters("abcd")).unwrap();
        assert_eq!(all.len(), 20);
        assert!(all.iter().all(|t| t.validate().is_valid()));
    }

    #[test]
    fn column_shape_for_abcd() {
        let shape = YoungShape::new(vec![1, 1, 1]).unwrap();
        let ts = enumerate_tableaux_of_shape(&shape, &letters("abcd")).unwrap();
        let got: Vec<(Vec<Letter>, Letter)> = ts.iter().map(|t| (t.first_column(), t.nose())).collect();
        let expected = vec![
            (letters("cba"), Letter(3)),
            (letters("dba"), Letter(2)),
            (letters("dca"), Letter(1)),
            (letters("dcb"), Letter(0)),
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn one_letter_count_is_shape_count() {
        let all = enumerate_tableaux(5, &letters("aaaaa")).unwrap();
        assert_eq!(all.len(), 5);
    }

    #[test]
    fn degree_checks() {
        assert_eq!(
            enumerate_tableaux(4, &letters("abc")),
            Err(DiagramError::DegreeMismatch { expected: 4, actual: 3 })
        );
        assert_eq!(enumerate_tableaux(0, &[]), Err(DiagramError::EmptyDegree));
        let single = enumerate_tableaux(1, &letters("b")).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].nose(), Letter(1));
        assert!(single[0].rows().is_empty());
    }

    #[test]
    fn validation_examples() {
        assert!(drawn(&["cd", "b", "a"]).validate().is_valid());

        let report = drawn(&["ad", "b", "c"]).validate();
        assert!(!report.is_valid());
        assert_eq!(report.first_violation(), Some(&Violation::Block { upper: 1, lower: 2 }));
        assert!(report.violations.contains(&Violation::Block { upper: 2, lower: 3 }));

        let report = drawn(&["adc"]).validate();
        assert_eq!(
            report.violations,
            vec![Violation::Tail {
                before: (1, 2),
                after: (1, 3)
            }]
        );
    }

    #[test]
    fn block_rule_ignores_unequal_rows() {
        assert!(drawn(&["acd", "b"]).validate().is_valid());
    }

    #[test]
    fn shape_mismatch() {
        let shape = YoungShape::new(vec![2, 1]).unwrap();
        let err = NovikovTableau::new(shape, vec![letters("a"), letters("bc")], Letter(3)).unwrap_err();
        assert!(matches!(err, DiagramError::ShapeMismatch { .. }));
        assert!(NovikovTableau::from_drawn_rows(vec![letters("a"), letters("bc")]).is_err());
    }

    #[test]
    fn shape_counts_for_four() {
        for (rows, expected) in [(vec![1, 1, 1], 4), (vec![2, 1], 12), (vec![3], 4)] {
            let shape = YoungShape::new(rows).unwrap();
            assert_eq!(count_fillings_per_shape(&shape, 4).unwrap(), BigInt::from(expected));
            assert_eq!(
                enumerate_tableaux_of_shape(&shape, &letters("abcd")).unwrap().len(),
                expected
            );
        }
        let shape = YoungShape::new(vec![3]).unwrap();
        assert!(count_fillings_per_shape(&shape, 5).is_err());
    }

    #[test]
    fn json_and_csv() {
        let alphabet = Alphabet::standard(4);
        let t = drawn(&["bcd", "a"]);
        let v = t.to_json(&alphabet);
        assert_eq!(v.to_string(), r#"{"nose":"d","rows":[["b","c"],["a"]],"shape":[2,1]}"#);
        assert_eq!(NovikovTableau::from_json(&v, &alphabet).unwrap(), t);
        assert_eq!(t.to_csv_record(&alphabet), "2-1,b c;a,d");
        assert_eq!(t.render(&alphabet), "b c d\na");
    }
}
