//! Jacobi polynomials and the renormalized zonal functions `Q_k^eps` of a
//! rank/degree geometry, with closed forms for their values at `x = 1`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{factorial, generalized_binomial, int, pochhammer, rat, Rational};
use crate::poly::RationalPolynomial;

/// Rank `rho` and degree `d` of a simple Euclidean Jordan algebra.
///
/// Admissible pairs: `rho = 2` with any `d >= 1` (spheres `Omega_{d+1}`),
/// `d` in {1, 2, 4} with `rho >= 3` (real, complex and quaternionic
/// projective spaces), and the octonion plane `(3, 8)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GeometryParams {
    rho: u32,
    degree: u32,
}

impl GeometryParams {
    pub fn new(rho: u32, degree: u32) -> Result<Self> {
        if Self::is_admissible(rho, degree) {
            Ok(Self { rho, degree })
        } else {
            Err(Error::InadmissibleGeometry { rho, degree })
        }
    }

    pub fn is_admissible(rho: u32, degree: u32) -> bool {
        match (rho, degree) {
            (2, d) => d >= 1,
            (r, 1 | 2 | 4) => r >= 3,
            (3, 8) => true,
            _ => false,
        }
    }

    pub fn rho(&self) -> u32 {
        self.rho
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `N = rho d / 2`
    pub fn big_n(&self) -> Rational {
        rat(i64::from(self.rho) * i64::from(self.degree), 2)
    }

    /// `m = d / 2`
    pub fn half_degree(&self) -> Rational {
        rat(i64::from(self.degree), 2)
    }

    pub fn is_sphere(&self) -> bool {
        self.rho == 2
    }

    /// The unit circle `Omega_2 = RP^1`.
    pub fn is_circle(&self) -> bool {
        self.rho == 2 && self.degree == 1
    }

    /// Jacobi parameters `(d(rho-1)/2 - 1, d/2 - 1 + eps)`.
    pub fn jacobi_params(&self, eps: Eps) -> (Rational, Rational) {
        let n = self.big_n();
        let m = self.half_degree();
        let alpha = &n - &m - Rational::one();
        let beta = m - Rational::one() + int(eps.value().into());
        (alpha, beta)
    }
}

impl fmt::Display for GeometryParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(rho={}, d={})", self.rho, self.degree)
    }
}

/// Whether zero belongs to the angle set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eps {
    Zero,
    One,
}

impl Eps {
    pub fn value(self) -> u32 {
        match self {
            Eps::Zero => 0,
            Eps::One => 1,
        }
    }

    pub fn from_value(v: u32) -> Result<Self> {
        match v {
            0 => Ok(Eps::Zero),
            1 => Ok(Eps::One),
            _ => Err(Error::InvalidParameter(format!("eps must be 0 or 1, got {v}"))),
        }
    }
}

impl Serialize for Eps {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.value())
    }
}

/// `P_k^{(alpha, beta)}(y)` from the explicit sum
/// `sum_j binom(k+alpha, k-j) binom(k+beta, j) ((y-1)/2)^j ((y+1)/2)^(k-j)`.
pub fn jacobi_poly(k: u32, alpha: &Rational, beta: &Rational) -> RationalPolynomial {
    let kr = int(k.into());
    let half = rat(1, 2);
    let lower = RationalPolynomial::linear(half.clone(), -&half); // (y-1)/2
    let upper = RationalPolynomial::linear(half.clone(), half); // (y+1)/2
    let mut lower_pows = vec![RationalPolynomial::constant(Rational::one())];
    let mut upper_pows = vec![RationalPolynomial::constant(Rational::one())];
    for i in 1..=k as usize {
        lower_pows.push(lower_pows[i - 1].mul(&lower));
        upper_pows.push(upper_pows[i - 1].mul(&upper));
    }
    (0..=k).fold(RationalPolynomial::zero(), |acc, j| {
        let c = generalized_binomial(&(&kr + alpha), k - j)
            * generalized_binomial(&(&kr + beta), j);
        let term = lower_pows[j as usize].mul(&upper_pows[(k - j) as usize]);
        acc.add(&term.scale(&c))
    })
}

/// Leading scalar `((N+2k+eps-1)/(N+k+eps-1)) (N)_{k+eps} / (m)_{k+eps}` of
/// `Q_k^eps`. The ratio is taken as 1 at `k = 0`, where numerator and
/// denominator coincide (and both vanish on the circle).
fn renorm_factor(k: u32, eps: Eps, geom: &GeometryParams) -> Rational {
    let n = geom.big_n();
    let m = geom.half_degree();
    let e = eps.value();
    let ratio = if k == 0 {
        Rational::one()
    } else {
        let shift = int(i64::from(e) - 1);
        (&n + int(2 * i64::from(k)) + &shift) / (&n + int(k.into()) + &shift)
    };
    ratio * pochhammer(&n, k + e) / pochhammer(&m, k + e)
}

/// `Q_k^eps(x)`, the renormalized Jacobi function as a polynomial in `x`.
pub fn renorm_q(k: u32, eps: Eps, geom: &GeometryParams) -> RationalPolynomial {
    let (alpha, beta) = geom.jacobi_params(eps);
    jacobi_poly(k, &alpha, &beta)
        .compose_linear(&int(2), &int(-1))
        .scale(&renorm_factor(k, eps, geom))
}

/// `R_n^eps(x) = sum_{i=0}^{n} Q_i^eps(x)`.
pub fn r_sum(n: u32, eps: Eps, geom: &GeometryParams) -> RationalPolynomial {
    (0..=n).fold(RationalPolynomial::zero(), |acc, i| {
        acc.add(&renorm_q(i, eps, geom))
    })
}

/// Closed form of `Q_i^0(1)`:
/// `((N+2i-1)/(N+i-1)) (N)_i (N-m)_i / ((m)_i i!)`.
pub fn q_at_one(i: u32, geom: &GeometryParams) -> Rational {
    if i == 0 {
        return Rational::one();
    }
    let n = geom.big_n();
    let m = geom.half_degree();
    let ii = int(i.into());
    let ratio = (&n + int(2) * &ii - int(1)) / (&n + &ii - int(1));
    ratio * pochhammer(&n, i) * pochhammer(&(&n - &m), i)
        / (pochhammer(&m, i) * Rational::from_integer(factorial(i)))
}

/// Closed form of `R_{s-eps}^eps(1)`:
/// `(N)_s (N-m+1)_{s-eps} / ((m)_s (s-eps)!)`.
///
/// Panics if `s < eps`.
pub fn r_at_one(s: u32, eps: Eps, geom: &GeometryParams) -> Rational {
    let top = s
        .checked_sub(eps.value())
        .expect("r_at_one needs s >= eps");
    let n = geom.big_n();
    let m = geom.half_degree();
    pochhammer(&n, s) * pochhammer(&(&n - &m + Rational::one()), top)
        / (pochhammer(&m, s) * Rational::from_integer(factorial(top)))
}

/// The ratio `Q_{i+1}^0(1) / Q_i^0(1)` as the product of three factors
/// `((N+2i+1)/(N+2i-1)) ((d(rho-1)/2 + i)/(d/2 + i)) ((N+i-1)/(i+1))`.
///
/// `None` when `N + 2i - 1 = 0`, which only happens for the circle at `i = 0`.
pub fn q_ratio(i: u32, geom: &GeometryParams) -> Option<Rational> {
    let n = geom.big_n();
    let m = geom.half_degree();
    let ii = int(i.into());
    let denom = &n + int(2) * &ii - int(1);
    if denom.is_zero() {
        return None;
    }
    let first = (&n + int(2) * &ii + int(1)) / denom;
    let second = (&n - &m + &ii) / (&m + &ii);
    let third = (&n + &ii - int(1)) / (&ii + int(1));
    Some(first * second * third)
}
