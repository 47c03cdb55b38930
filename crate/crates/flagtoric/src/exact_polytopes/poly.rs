use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Univariate polynomial with integer coefficients, constant term first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![1])
    }

    /// `c·t^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as i64)
                .collect(),
        )
    }

    /// `p(t) ↦ p(t + c)` by Horner's scheme.
    pub fn shift(&self, c: i64) -> Self {
        let lin = Self::new(vec![c, 1]);
        let mut acc = Self::zero();
        for &a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::new(vec![a]);
        }
        acc
    }

    /// `p(t) ↦ p(t^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![0; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * k] = c;
        }
        Self::new(v)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        (0..c.len()).all(|i| c[i] == c[c.len() - 1 - i])
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPolynomial::new(v)
    }
}

/// Prints as `1 + 7t^2 + 11t^4 + t^6`, with `-` for negative coefficients.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, m) => write!(f, "{m}t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, m) => write!(f, "{m}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(IntPolynomial::new(vec![1, 0, 7, 0, 11, 0, 1]).to_string(), "1 + 7t^2 + 11t^4 + t^6");
        assert_eq!(IntPolynomial::new(vec![1, 0, -1, 0, 5, 0, 1]).to_string(), "1 - t^2 + 5t^4 + t^6");
        assert_eq!(IntPolynomial::new(vec![0, 1]).to_string(), "t");
        assert_eq!(IntPolynomial::new(vec![-2, 0, 0]).to_string(), "-2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn shift_matches_f_to_h() {
        // Octahedron: f = 6 + 12t + 8t^2 + t^3, h = f(t - 1) = 1 - t + 5t^2 + t^3.
        let f = IntPolynomial::new(vec![6, 12, 8, 1]);
        assert_eq!(f.shift(-1), IntPolynomial::new(vec![1, -1, 5, 1]));
        assert_eq!(f.shift(-1).shift(1), f);
    }

    #[test]
    fn arithmetic() {
        let a = IntPolynomial::new(vec![1, 1]);
        assert_eq!(&a * &a, IntPolynomial::new(vec![1, 2, 1]));
        assert_eq!((&a - &a), IntPolynomial::zero());
        assert_eq!(a.substitute_power(2), IntPolynomial::new(vec![1, 0, 1]));
        assert_eq!(IntPolynomial::new(vec![1, 4, 1]).derivative(), IntPolynomial::new(vec![4, 2]));
        assert!(IntPolynomial::new(vec![1, 4, 1]).is_palindromic());
        assert_eq!(IntPolynomial::new(vec![1, 4, 1]).eval(2), 13);
    }
}
