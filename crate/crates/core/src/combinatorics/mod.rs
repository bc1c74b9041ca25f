//! Exact integer combinatorics behind the codimension formula.
//!
//! Everything here works over [`BigInt`] / [`BigRational`]; no floating point
//! is used to decide any comparison. The functions come in three groups:
//!
//! - coefficients: [`binomial`], [`multinomial`], [`factorial`];
//! - partitions in multiplicity form: [`Partition`], [`partitions_of`];
//! - the counting identities and growth bounds for `C(2n-2, n-1)`:
//!   [`lemma1_lhs`], [`multinomial_sum_identity`], [`vandermonde_check`],
//!   [`lemma2_bounds`], [`exponent_estimate`], [`gf_coefficients`].

mod series;

pub use series::PowerSeries;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("multinomial parts sum to {sum}, expected {total}")]
    MultinomialMismatch { total: u64, sum: u64 },
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient `C(n, k)`.
///
/// Zero when `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        // acc * (n - k + i) is divisible by i at every step
        acc = acc * (n - k + i) / i;
    }
    acc
}

/// Multinomial coefficient `m! / (m_1! m_2! ...)`.
pub fn multinomial(total: u64, parts: &[u64]) -> Result<BigInt, CombinatoricsError> {
    let sum: u64 = parts.iter().sum();
    if sum != total {
        return Err(CombinatoricsError::MultinomialMismatch { total, sum });
    }
    // product of binomials C(running, part) avoids the big factorial quotient
    let mut acc = BigInt::one();
    let mut running = 0i64;
    for &p in parts {
        running += p as i64;
        acc *= binomial(running, p as i64);
    }
    Ok(acc)
}

/// An integer partition stored as part size -> multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    multiplicities: BTreeMap<u64, u64>,
}

impl Partition {
    /// The empty partition of zero.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from its parts in any order; zero parts are ignored.
    pub fn from_parts(parts: &[u64]) -> Self {
        let mut multiplicities = BTreeMap::new();
        for &p in parts.iter().filter(|&&p| p > 0) {
            *multiplicities.entry(p).or_insert(0) += 1;
        }
        Partition { multiplicities }
    }

    /// `|λ| = Σ i·m_i`.
    pub fn size(&self) -> u64 {
        self.multiplicities.iter().map(|(i, m)| i * m).sum()
    }

    /// `m(λ) = Σ m_i`, the number of parts.
    pub fn num_parts(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    pub fn multiplicity(&self, part: u64) -> u64 {
        self.multiplicities.get(&part).copied().unwrap_or(0)
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.multiplicities.iter().rev().map(|(&i, &m)| (i, m))
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> Vec<u64> {
        self.multiplicities()
            .flat_map(|(i, m)| std::iter::repeat_n(i, m as usize))
            .collect()
    }

    /// `m(λ)! / Π m_i(λ)!`: the number of distinct orderings of the parts.
    pub fn arrangements(&self) -> BigInt {
        let mults: Vec<u64> = self.multiplicities.values().copied().collect();
        multinomial(self.num_parts(), &mults).expect("multiplicities sum to the part count")
    }
}

impl fmt::Display for Partition {
    /// Exponential notation, largest part first: `3^1 1^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicities.is_empty() {
            return write!(f, "∅");
        }
        let mut first = true;
        for (i, m) in self.multiplicities() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{i}^{m}")?;
        }
        Ok(())
    }
}

/// All partitions of `d`, lexicographically decreasing in their part sequences.
pub fn partitions_of(d: u64) -> Vec<Partition> {
    fn rec(remaining: u64, part: u64, current: &mut BTreeMap<u64, u64>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                multiplicities: current.clone(),
            });
            return;
        }
        if part == 0 {
            return;
        }
        for mult in (0..=remaining / part).rev() {
            if mult > 0 {
                current.insert(part, mult);
            }
            rec(remaining - mult * part, part - 1, current, out);
            current.remove(&part);
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut BTreeMap::new(), &mut out);
    out
}

/// `Σ_{|λ|=n-1} multinomial(m(λ); m_1(λ), ...) · C(n, m(λ))`.
///
/// Each summand counts the tableaux of one shape filled with `n` distinct
/// letters, so the total equals `C(2n-2, n-1)`.
pub fn lemma1_lhs(n: u64) -> BigInt {
    assert!(n >= 1, "lemma1_lhs needs n >= 1");
    partitions_of(n - 1)
        .iter()
        .map(|p| p.arrangements() * binomial(n as i64, p.num_parts() as i64))
        .sum()
}

/// Both sides of the composition count used with partitions of `n-1`:
/// `Σ_{|λ|=n-1, m(λ)=s} multinomial(s; m_1, ...)` against `C(n-2, s-1)`.
pub fn multinomial_sum_identity(n: u64, s: u64) -> (BigInt, BigInt) {
    assert!(n >= 2 && (1..n).contains(&s), "need 1 <= s <= n-1");
    let lhs = partitions_of(n - 1)
        .iter()
        .filter(|p| p.num_parts() == s)
        .map(Partition::arrangements)
        .sum();
    (lhs, binomial(n as i64 - 2, s as i64 - 1))
}

/// Both sides of `C(n+p, m) = Σ_s C(n, m-s) C(p, s)`.
pub fn vandermonde_check(n: u64, p: u64, m: u64) -> (BigInt, BigInt) {
    let (n, p, m) = (n as i64, p as i64, m as i64);
    let rhs = (0..=m).map(|s| binomial(n, m - s) * binomial(p, s)).sum();
    (binomial(n + p, m), rhs)
}

/// The sandwich `2^{2n-3}/(n-1) <= C(2n-2, n-1) <= 2^{2n-2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma2Bounds {
    pub n: u64,
    pub lower: BigRational,
    pub value: BigInt,
    pub upper: BigInt,
}

impl Lemma2Bounds {
    pub fn holds(&self) -> bool {
        let value = BigRational::from_integer(self.value.clone());
        self.lower <= value && self.value <= self.upper
    }

    /// Exact check that `lower <= estimate^n <= upper`.
    pub fn brackets(&self, estimate: &RootEstimate) -> bool {
        let power = estimate.as_rational().pow(self.n as i32);
        self.lower <= power && power <= BigRational::from_integer(self.upper.clone())
    }

    /// n-th roots of the lower and upper bound, floored at `digits` decimals.
    pub fn root_bracket(&self, digits: u32) -> (RootEstimate, RootEstimate) {
        let upper = BigRational::from_integer(self.upper.clone());
        (
            nth_root_floor(&self.lower, self.n, digits),
            nth_root_floor(&upper, self.n, digits),
        )
    }
}

pub fn lemma2_bounds(n: u64) -> Lemma2Bounds {
    assert!(n >= 2, "lemma2_bounds needs n >= 2");
    let two = BigInt::from(2);
    let lower = BigRational::new(two.pow((2 * n - 3) as u32), BigInt::from(n - 1));
    Lemma2Bounds {
        n,
        lower,
        value: central(n),
        upper: two.pow((2 * n - 2) as u32),
    }
}

/// `C(2n-2, n-1)`.
pub(crate) fn central(n: u64) -> BigInt {
    binomial(2 * n as i64 - 2, n as i64 - 1)
}

/// A non-negative real stored as `floor(x · 10^digits)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RootEstimate {
    pub scaled: BigInt,
    pub digits: u32,
}

impl RootEstimate {
    pub fn scale(&self) -> BigInt {
        BigInt::from(10).pow(self.digits)
    }

    pub fn as_rational(&self) -> BigRational {
        BigRational::new(self.scaled.clone(), self.scale())
    }

    pub fn to_f64(&self) -> f64 {
        self.scaled.to_f64().unwrap_or(f64::INFINITY) / 10f64.powi(self.digits as i32)
    }
}

impl fmt::Display for RootEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (int, frac) = self.scaled.div_rem(&self.scale());
        write!(f, "{int}.{:0width$}", frac, width = self.digits as usize)
    }
}

/// `floor(value^{1/n} · 10^digits)` by integer bisection.
///
/// Finds the largest `y` with `y^n · q <= p · 10^{digits·n}` where `value = p/q`.
pub fn nth_root_floor(value: &BigRational, n: u64, digits: u32) -> RootEstimate {
    assert!(n >= 1, "root index must be positive");
    assert!(!value.is_negative(), "root of a negative value");
    let scale_pow = BigInt::from(10).pow(digits * n as u32);
    let target = value.numer() * scale_pow;
    let denom = value.denom();
    let fits = |y: &BigInt| y.pow(n as u32) * denom <= target;

    let mut lo = BigInt::zero();
    let mut hi = BigInt::one();
    while fits(&hi) {
        lo = hi.clone();
        hi <<= 1;
    }
    // invariant: fits(lo), !fits(hi)
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if fits(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootEstimate { scaled: lo, digits }
}

/// Decimal places used by [`exponent_estimate`].
pub const EXPONENT_DIGITS: u32 = 6;

/// `C(2n-2, n-1)^{1/n}` floored to six decimals.
pub fn exponent_estimate(n: u64) -> RootEstimate {
    assert!(n >= 1, "exponent_estimate needs n >= 1");
    nth_root_floor(&BigRational::from_integer(central(n)), n, EXPONENT_DIGITS)
}

/// The series `x (1 - 4x)^{-1/2}` truncated at order `order`.
pub fn gf_coefficients(order: usize) -> PowerSeries {
    let minus_half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    let inner = PowerSeries::monomial(order, 1, BigRational::from_integer(BigInt::from(-4)));
    PowerSeries::binomial_series(minus_half, order).compose(&inner).mul_x()
}
