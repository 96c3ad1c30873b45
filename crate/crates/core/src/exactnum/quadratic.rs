use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{format_rational, is_canonical, is_square_free, Rational};
use crate::error::{Error, Result};

/// `a + b*sqrt(m)` with rational `a`, `b` and square-free `m >= 2`.
///
/// A value with `b == 0` is rational and combines freely with numbers over
/// any radicand. Combining two irrational values over different radicands is
/// an error ([`Error::MixedRadicands`]); the operator impls panic in that
/// case, the `checked_*` methods return it.
#[derive(Clone, Debug)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    m: u64,
}

/// Binary operation selector for [`quad_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn quad_arith(
    lhs: &QuadraticNumber,
    rhs: &QuadraticNumber,
    op: ArithOp,
) -> Result<QuadraticNumber> {
    match op {
        ArithOp::Add => lhs.checked_add(rhs),
        ArithOp::Sub => lhs.checked_sub(rhs),
        ArithOp::Mul => lhs.checked_mul(rhs),
        ArithOp::Div => lhs.checked_div(rhs),
    }
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, m: u64) -> Result<Self> {
        if b.is_zero() {
            return Ok(Self::from_rational(a));
        }
        if m < 2 || !is_square_free(m) {
            return Err(Error::InvalidRadicand(m));
        }
        Ok(Self { a, b, m })
    }

    pub fn from_rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            m: 1,
        }
    }

    /// `sqrt(m)` itself.
    pub fn sqrt(m: u64) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), m)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    /// The radicand, or `None` for a rational value.
    pub fn radicand(&self) -> Option<u64> {
        (!self.b.is_zero()).then_some(self.m)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
            m: self.m,
        }
    }

    /// Field norm `a^2 - m b^2`.
    pub fn norm(&self) -> Rational {
        if self.b.is_zero() {
            return &self.a * &self.a;
        }
        &self.a * &self.a - Rational::from_integer(self.m.into()) * &self.b * &self.b
    }

    fn radicand_with(&self, other: &Self) -> Result<u64> {
        match (self.b.is_zero(), other.b.is_zero()) {
            (false, false) if self.m != other.m => Err(Error::MixedRadicands(self.m, other.m)),
            (false, _) => Ok(self.m),
            (true, false) => Ok(other.m),
            (true, true) => Ok(1),
        }
    }

    fn assemble(a: Rational, b: Rational, m: u64) -> Self {
        debug_assert!(is_canonical(&a) && is_canonical(&b));
        if b.is_zero() {
            Self::from_rational(a)
        } else {
            Self { a, b, m }
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let m = self.radicand_with(rhs)?;
        Ok(Self::assemble(&self.a + &rhs.a, &self.b + &rhs.b, m))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        let m = self.radicand_with(rhs)?;
        Ok(Self::assemble(&self.a - &rhs.a, &self.b - &rhs.b, m))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let m = self.radicand_with(rhs)?;
        let out = match (self.b.is_zero(), rhs.b.is_zero()) {
            (true, true) => Self::from_rational(&self.a * &rhs.a),
            (true, false) => Self::assemble(&self.a * &rhs.a, &self.a * &rhs.b, m),
            (false, true) => Self::assemble(&self.a * &rhs.a, &self.b * &rhs.a, m),
            (false, false) => {
                let mq = Rational::from_integer(m.into());
                Self::assemble(
                    &self.a * &rhs.a + mq * &self.b * &rhs.b,
                    &self.a * &rhs.b + &self.b * &rhs.a,
                    m,
                )
            }
        };
        Ok(out)
    }

    /// `1/(a + b sqrt m) = (a - b sqrt m) / (a^2 - m b^2)`.
    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::assemble(&self.a / &n, -(&self.b / &n), self.m))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.b.is_zero() {
            if rhs.a.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::assemble(&self.a / &rhs.a, &self.b / &rhs.a, self.m));
        }
        self.radicand_with(rhs)?;
        self.checked_mul(&rhs.checked_inv()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::assemble(&self.a * k, &self.b * k, self.m)
    }

    /// Sign of the real number `a + b sqrt(m)`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: the larger magnitude wins. a^2 = m b^2 is impossible
        // for square-free m >= 2 and b != 0.
        let a2 = &self.a * &self.a;
        let mb2 = Rational::from_integer(self.m.into()) * &self.b * &self.b;
        if a2 > mb2 {
            sa
        } else {
            sb
        }
    }

    /// Exact real-number comparison.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum())
    }

    /// Coarse value for diagnostics only; never used in decisions.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.m as f64).sqrt()
    }
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.m == other.m)
    }
}

impl Eq for QuadraticNumber {}

impl Hash for QuadraticNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        if !self.b.is_zero() {
            self.m.hash(state);
        }
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl From<Rational> for QuadraticNumber {
    fn from(a: Rational) -> Self {
        Self::from_rational(a)
    }
}

impl From<i64> for QuadraticNumber {
    fn from(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = format_rational(&self.a);
        if self.b.is_zero() {
            return f.write_str(&a);
        }
        let mag = self.b.abs();
        let root = if mag.is_one() {
            format!("sqrt({})", self.m)
        } else {
            format!("({})*sqrt({})", format_rational(&mag), self.m)
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{root}"),
            (true, true) => write!(f, "-{root}"),
            (false, false) => write!(f, "{a} + {root}"),
            (false, true) => write!(f, "{a} - {root}"),
        }
    }
}

impl Zero for QuadraticNumber {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadraticNumber {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            m: self.m,
        }
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -(self.clone())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl AddAssign<&QuadraticNumber> for QuadraticNumber {
    fn add_assign(&mut self, rhs: &QuadraticNumber) {
        if self.b.is_zero() && rhs.b.is_zero() {
            self.a += &rhs.a;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&QuadraticNumber> for QuadraticNumber {
    fn sub_assign(&mut self, rhs: &QuadraticNumber) {
        if self.b.is_zero() && rhs.b.is_zero() {
            self.a -= &rhs.a;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&QuadraticNumber> for QuadraticNumber {
    fn mul_assign(&mut self, rhs: &QuadraticNumber) {
        *self = &*self * rhs;
    }
}

impl Sum for QuadraticNumber {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a QuadraticNumber> for QuadraticNumber {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl Product for QuadraticNumber {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}
