use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A formal power series over the rationals, truncated after `x^order`.
///
/// All arithmetic is exact up to the truncation order; operands of binary
/// operations are truncated to the smaller order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, BigRational::one())
    }

    /// `c · x^power`, or zero when `power > order`.
    pub fn monomial(order: usize, power: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn from_coefficients(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^i`; zero beyond the truncation order.
    pub fn coefficient(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Multiplication by `x`, keeping the order.
    pub fn mul_x(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        PowerSeries { coeffs }
    }

    /// `(1 + x)^alpha = Σ_k C(alpha, k) x^k` with the generalized binomial coefficient.
    pub fn binomial_series(alpha: BigRational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = BigRational::one();
        for k in 0..=order {
            coeffs.push(c.clone());
            // C(alpha, k+1) = C(alpha, k) · (alpha - k) / (k + 1)
            let k = BigInt::from(k);
            c = c * (&alpha - BigRational::from_integer(k.clone())) / BigRational::from_integer(k + 1);
        }
        PowerSeries { coeffs }
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(inner.coeffs[0].is_zero(), "inner series must vanish at 0");
        let order = self.order().min(inner.order());
        // Horner: (((c_N) inner + c_{N-1}) inner + ...) + c_0
        let mut acc = Self::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] += c;
        }
        acc
    }

    /// `self^alpha` for a series with constant term 1.
    pub fn pow_rational(&self, alpha: BigRational) -> Self {
        assert!(self.coeffs[0].is_one(), "constant term must be 1");
        let tail = self.sub(&Self::one(self.order()));
        Self::binomial_series(alpha, self.order()).compose(&tail)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn square_root_squares_back() {
        // (1 + x)^{1/2} squared is 1 + x
        let s = PowerSeries::binomial_series(q(1, 2), 12);
        let sq = s.mul(&s);
        let expected = PowerSeries::from_coefficients(vec![q(1, 1), q(1, 1)], 12);
        assert_eq!(sq, expected);
    }

    #[test]
    fn negative_integer_power_is_geometric() {
        let s = PowerSeries::binomial_series(q(-1, 1), 6);
        let alternating: Vec<_> = (0..=6).map(|k| q(if k % 2 == 0 { 1 } else { -1 }, 1)).collect();
        assert_eq!(s.coefficients(), alternating.as_slice());
    }

    #[test]
    fn pow_rational_inverts() {
        let base = PowerSeries::from_coefficients(vec![q(1, 1), q(-4, 1)], 10);
        let inv_sqrt = base.pow_rational(q(-1, 2));
        let back = inv_sqrt.mul(&inv_sqrt).mul(&base);
        assert_eq!(back, PowerSeries::one(10));
    }

    #[test]
    fn compose_with_polynomial() {
        // exp-free check: (1+x)^2 ∘ (2x) = 1 + 4x + 4x^2
        let s = PowerSeries::from_coefficients(vec![q(1, 1), q(2, 1), q(1, 1)], 4);
        let inner = PowerSeries::monomial(4, 1, q(2, 1));
        let c = s.compose(&inner);
        assert_eq!(c, PowerSeries::from_coefficients(vec![q(1, 1), q(4, 1), q(4, 1)], 4));
    }

    #[test]
    fn display() {
        let s = PowerSeries::from_coefficients(vec![q(0, 1), q(1, 1), q(0, 1), q(-1, 2)], 3);
        assert_eq!(s.to_string(), "1x + -1/2x^3 + O(x^4)");
    }
}
