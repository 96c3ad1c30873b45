//! Exact scalars: big rationals and elements of a real quadratic field.

mod quadratic;

pub use quadratic::{quad_arith, ArithOp, QuadraticNumber};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// `n / d` as a canonical rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// True when numerator and denominator are coprime and the denominator is
/// positive.
pub fn is_canonical(x: &Rational) -> bool {
    x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
}

/// Parses `"p"` or `"p/q"` (optional sign on either part). The result is
/// reduced to lowest terms.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p"` for integers, otherwise `"p/q"` with the sign
/// on the numerator.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Rising factorial `x (x+1) ... (x+n-1)`; the empty product is 1.
pub fn pochhammer(x: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `binom(x, k) = (x-k+1)_k / k!` for rational `x`.
pub fn generalized_binomial(x: &Rational, k: u32) -> Rational {
    let start = x - Rational::from_integer(BigInt::from(k)) + Rational::one();
    pochhammer(&start, k) / Rational::from_integer(factorial(k))
}

/// Square-free test for radicands. Radicands in practice are tiny, so trial
/// division is plenty.
pub fn is_square_free(m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Integer value of `x`, if it has one.
pub fn as_integer(x: &Rational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(pochhammer(&int(3), 0), int(1));
        // 7 * 8 * 9 * 10
        assert_eq!(pochhammer(&int(7), 4), int(7 * 8 * 9 * 10));
    }

    #[test]
    fn pochhammer_step() {
        for num in -7..8 {
            let x = rat(num, 3);
            for n in 0..10 {
                let lhs = pochhammer(&x, n + 1);
                let rhs = pochhammer(&x, n) * (&x + int(n as i64));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(generalized_binomial(&int(5), 2), int(10));
        // (1/2)(-1/2)/2
        assert_eq!(generalized_binomial(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(generalized_binomial(&int(3), 0), int(1));
        assert_eq!(generalized_binomial(&int(3), 5), int(0));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert_eq!(parse_rational("1/-2").unwrap(), rat(-1, 2));
        for bad in ["", "1/0", "a", "1/", "/2", "1.5", " 1", "1/2/3", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
        assert_eq!(format_rational(&rat(-3, 4)), "-3/4");
        assert_eq!(format_rational(&rat(8, 4)), "2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn square_free() {
        let sf: Vec<u64> = (1..20).filter(|&m| is_square_free(m)).collect();
        assert_eq!(sf, vec![1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19]);
        assert!(!is_square_free(0));
    }
}
