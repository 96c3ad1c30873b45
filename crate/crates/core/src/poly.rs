//! Dense univariate polynomials over exact coefficient fields.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactnum::{format_rational, QuadraticNumber, Rational};

/// Exact field element usable as a polynomial coefficient.
pub trait Coefficient: Clone + PartialEq + Zero + One + fmt::Display {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Rational and strictly negative (used only for pretty printing).
    fn is_plain_negative(&self) -> bool;
    /// Whether the printed form needs parentheses before an `x` power.
    fn is_compound(&self) -> bool;
}

impl Coefficient for Rational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_plain_negative(&self) -> bool {
        self.is_negative()
    }
    fn is_compound(&self) -> bool {
        !self.is_integer()
    }
}

impl Coefficient for QuadraticNumber {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_plain_negative(&self) -> bool {
        self.is_rational() && self.rational_part().is_negative()
    }
    fn is_compound(&self) -> bool {
        !self.is_rational() || !self.rational_part().is_integer()
    }
}

/// Coefficients in ascending order, trailing zeros trimmed. The zero
/// polynomial has no coefficients and degree `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

pub type RationalPolynomial = Polynomial<Rational>;
pub type QuadPolynomial = Polynomial<QuadraticNumber>;

impl<T: Coefficient> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `a x + b`
    pub fn linear(a: T, b: T) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add_ref(&rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub_ref(&rhs.coeff(i))).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul_ref(k)).collect())
    }

    /// `p(a x + b)`
    pub fn compose_linear(&self, a: &T, b: &T) -> Self {
        let inner = Self::linear(a.clone(), b.clone());
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(&inner).add(&Self::constant(c.clone()))
        })
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl RationalPolynomial {
    pub fn to_quadratic(&self) -> QuadPolynomial {
        self.map(|c| QuadraticNumber::from_rational(c.clone()))
    }

    /// Evaluates at a point of a quadratic field.
    pub fn eval_quadratic(&self, x: &QuadraticNumber) -> QuadraticNumber {
        self.coeffs.iter().rev().fold(QuadraticNumber::zero(), |acc, c| {
            let mut v = &acc * x;
            v += &QuadraticNumber::from_rational(c.clone());
            v
        })
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

impl<T: Coefficient> fmt::Display for Polynomial<T> {
    /// Descending powers, e.g. `60x^3 - 60x^2 + 12x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_plain_negative();
            let mag = if negative { c.neg_ref() } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let power = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k > 0 && mag.is_one() {
                f.write_str(&power)?;
            } else if k > 0 && mag.is_compound() {
                write!(f, "({mag}){power}")?;
            } else {
                write!(f, "{mag}{power}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn p(cs: &[i64]) -> RationalPolynomial {
        Polynomial::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.mul(&b), p(&[-1, 0, 1]));
        assert_eq!(a.sub(&a), RationalPolynomial::zero());
        assert_eq!(a.eval(&int(3)), int(4));
        // (x^2)(2x - 1) = 4x^2 - 4x + 1
        assert_eq!(p(&[0, 0, 1]).compose_linear(&int(2), &int(-1)), p(&[1, -4, 4]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 12, -60, 60]).to_string(), "60x^3 - 60x^2 + 12x");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(p(&[]).to_string(), "0");
        let half = Polynomial::new(vec![rat(-1, 2), rat(3, 2)]);
        assert_eq!(half.to_string(), "(3/2)x - 1/2");
    }

    #[test]
    fn quadratic_evaluation() {
        let x = QuadraticNumber::sqrt(5).unwrap();
        // x^2 - 5 vanishes at sqrt 5
        assert!(p(&[-5, 0, 1]).eval_quadratic(&x).is_zero());
    }
}
