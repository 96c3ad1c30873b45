//! Design ingestion and the first half of the analysis: angle set, strength,
//! annihilator polynomial, indicator coefficients and tightness.

pub mod file;

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{int, is_square_free, rat, QuadraticNumber, Rational};
use crate::jacobi::{r_at_one, r_sum, renorm_q, Eps, GeometryParams};
use crate::matrix::Matrix;
use crate::poly::{QuadPolynomial, RationalPolynomial};

/// How a design entered the pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    SpherePoints,
    GramDirect,
}

/// A validated finite set of primitive idempotents, held as its Gram matrix
/// of Jordan inner products.
///
/// Validation covers symmetry, unit diagonal and `0 <= <x,y> < 1` off the
/// diagonal. Whether the matrix is realizable by actual primitive
/// idempotents (positive semidefiniteness, rank) is not checked; the
/// analysis only ever reads the entries.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignInstance {
    geom: GeometryParams,
    radicand: Option<u64>,
    gram: Matrix,
    source: Source,
    points: Option<Vec<Vec<QuadraticNumber>>>,
}

impl DesignInstance {
    pub fn geom(&self) -> &GeometryParams {
        &self.geom
    }

    pub fn radicand(&self) -> Option<u64> {
        self.radicand
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn points(&self) -> Option<&[Vec<QuadraticNumber>]> {
        self.points.as_deref()
    }

    /// Number of points `|X|`.
    pub fn len(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The same design with points reordered: point `i` of the result is
    /// point `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter("not a permutation".into()));
        }
        let gram = Matrix::from_fn(n, n, |r, c| self.gram.get(perm[r], perm[c]).clone());
        let points = self
            .points
            .as_ref()
            .map(|pts| perm.iter().map(|&p| pts[p].clone()).collect());
        Ok(Self {
            gram,
            points,
            ..self.clone()
        })
    }

    /// The design with one point removed (kept validated).
    pub fn without_point(&self, index: usize) -> Result<Self> {
        let n = self.len();
        if index >= n {
            return Err(Error::InvalidParameter(format!("no point {index}")));
        }
        let keep: Vec<usize> = (0..n).filter(|&i| i != index).collect();
        let gram = Matrix::from_fn(n - 1, n - 1, |r, c| self.gram.get(keep[r], keep[c]).clone());
        let mut out = validate_gram(gram, self.geom, self.radicand)?;
        if let Some(pts) = &self.points {
            out.points = Some(keep.iter().map(|&i| pts[i].clone()).collect());
            out.source = self.source;
        }
        Ok(out)
    }
}

fn check_radicand(given: Option<u64>, entries: &[QuadraticNumber]) -> Result<Option<u64>> {
    if let Some(m) = given {
        if m < 2 || !is_square_free(m) {
            return Err(Error::InvalidRadicand(m));
        }
    }
    let mut found = given;
    for v in entries {
        if let Some(m) = v.radicand() {
            match found {
                None => found = Some(m),
                Some(f) if f != m => return Err(Error::MixedRadicands(f, m)),
                Some(_) => {}
            }
        }
    }
    Ok(found)
}

/// Validates a Gram matrix of Jordan inner products.
///
/// `radicand` may be omitted, in which case it is inferred from the
/// irrational entries (all of which must then share it).
pub fn validate_gram(
    matrix: Matrix,
    geom: GeometryParams,
    radicand: Option<u64>,
) -> Result<DesignInstance> {
    let n = matrix.rows();
    if !matrix.is_square() {
        return Err(Error::NotSquare {
            rows: n,
            row: 0,
            len: matrix.cols(),
        });
    }
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    let radicand = check_radicand(radicand, matrix.entries())?;
    let one = QuadraticNumber::one();
    for i in 0..n {
        if matrix.get(i, i) != &one {
            return Err(Error::BadDiagonal {
                index: i,
                value: matrix.get(i, i).to_string(),
            });
        }
    }
    for r in 0..n {
        for c in r + 1..n {
            let (upper, lower) = (matrix.get(r, c), matrix.get(c, r));
            if upper != lower {
                return Err(Error::NotSymmetric {
                    row: r,
                    col: c,
                    upper: upper.to_string(),
                    lower: lower.to_string(),
                });
            }
            if upper == &one {
                return Err(Error::DuplicatePoint { row: r, col: c });
            }
            if upper.signum().is_lt() || upper > &one {
                return Err(Error::EntryOutOfRange {
                    row: r,
                    col: c,
                    value: upper.to_string(),
                });
            }
        }
    }
    Ok(DesignInstance {
        geom,
        radicand,
        gram: matrix,
        source: Source::GramDirect,
        points: None,
    })
}

fn dot(u: &[QuadraticNumber], v: &[QuadraticNumber]) -> QuadraticNumber {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn check_point_dims(points: &[Vec<QuadraticNumber>], geom: &GeometryParams) -> Result<Option<u64>> {
    if !geom.is_sphere() {
        return Err(Error::PointsRequireSphere(geom.rho()));
    }
    let expected = geom.degree() as usize + 1;
    for (index, p) in points.iter().enumerate() {
        if p.len() != expected {
            return Err(Error::DimensionMismatch {
                index,
                len: p.len(),
                expected,
            });
        }
    }
    let flat: Vec<QuadraticNumber> = points.iter().flatten().cloned().collect();
    check_radicand(None, &flat)
}

/// Gram matrix of unit vectors on `Omega_{d+1}`: for the rank-2 family the
/// Jordan inner product of the idempotents for `u` and `v` is `(1 + u.v)/2`.
pub fn gram_from_sphere_points(
    points: Vec<Vec<QuadraticNumber>>,
    geom: GeometryParams,
) -> Result<DesignInstance> {
    let radicand = check_point_dims(&points, &geom)?;
    let one = QuadraticNumber::one();
    for (index, p) in points.iter().enumerate() {
        let norm = dot(p, p);
        if norm != one {
            return Err(Error::NotUnitVector {
                index,
                norm: norm.to_string(),
            });
        }
    }
    let half = QuadraticNumber::from(rat(1, 2));
    let n = points.len();
    let gram = Matrix::from_fn(n, n, |r, c| {
        if r == c {
            one.clone()
        } else {
            (&one + &dot(&points[r], &points[c])) * &half
        }
    });
    let mut design = validate_gram(gram, geom, radicand)?;
    design.source = Source::SpherePoints;
    design.points = Some(points);
    Ok(design)
}

/// Gram matrix of vectors that all share one nonzero squared norm `r^2`,
/// normalized on the fly: entries `(1 + u.v / r^2)/2`.
///
/// Useful when unit coordinates would need a larger field than the Gram
/// entries do (the icosahedron is the standard example). The result is a
/// [`Source::GramDirect`] design since no unit coordinates exist.
pub fn gram_from_cospherical_points(
    points: &[Vec<QuadraticNumber>],
    geom: GeometryParams,
) -> Result<DesignInstance> {
    let radicand = check_point_dims(points, &geom)?;
    let Some(first) = points.first() else {
        return Err(Error::TooFewPoints(0));
    };
    let r2 = dot(first, first);
    if r2.is_zero() {
        return Err(Error::NotUnitVector {
            index: 0,
            norm: "0".into(),
        });
    }
    for (index, p) in points.iter().enumerate() {
        let norm = dot(p, p);
        if norm != r2 {
            return Err(Error::NotUnitVector {
                index,
                norm: (&norm / &r2).to_string(),
            });
        }
    }
    let inv = r2.checked_inv()?;
    let half = QuadraticNumber::from(rat(1, 2));
    let one = QuadraticNumber::one();
    let n = points.len();
    let gram = Matrix::from_fn(n, n, |r, c| {
        if r == c {
            one.clone()
        } else {
            (&one + &(&dot(&points[r], &points[c]) * &inv)) * &half
        }
    });
    validate_gram(gram, geom, radicand)
}

/// The angle set `A(X)` with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleProfile {
    /// Distinct off-diagonal Gram values, ascending.
    pub angles: Vec<QuadraticNumber>,
    /// Unordered pairs `{x, y}` realizing each angle.
    pub pair_counts: Vec<usize>,
    pub s: u32,
    pub eps: Eps,
    /// Filled in by [`compute_strength`].
    pub strength: Option<u32>,
    pub all_rational: bool,
}

impl AngleProfile {
    pub fn index_of(&self, angle: &QuadraticNumber) -> Option<usize> {
        self.angles.iter().position(|a| a == angle)
    }

    /// The absolute bound `2s - eps` on the strength.
    pub fn strength_bound(&self) -> u32 {
        2 * self.s - self.eps.value()
    }
}

pub fn angle_set(design: &DesignInstance) -> AngleProfile {
    let n = design.len();
    let mut counts: HashMap<&QuadraticNumber, usize> = HashMap::new();
    for r in 0..n {
        for c in r + 1..n {
            *counts.entry(design.gram.get(r, c)).or_default() += 1;
        }
    }
    let mut pairs: Vec<(QuadraticNumber, usize)> =
        counts.into_iter().map(|(a, k)| (a.clone(), k)).collect();
    pairs.sort_by(|x, y| {
        x.0.cmp_exact(&y.0)
            .expect("validated design has a single radicand")
    });
    let (angles, pair_counts): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let eps = if angles.first().is_some_and(Zero::is_zero) {
        Eps::One
    } else {
        Eps::Zero
    };
    AngleProfile {
        s: angles.len() as u32,
        all_rational: angles.iter().all(QuadraticNumber::is_rational),
        angles,
        pair_counts,
        eps,
        strength: None,
    }
}

/// `sum_x sum_y Q_k^0(<x,y>)`, grouping equal Gram entries.
pub fn strength_sum(design: &DesignInstance, profile: &AngleProfile, k: u32) -> QuadraticNumber {
    let q = renorm_q(k, Eps::Zero, design.geom());
    let n = int(design.len() as i64);
    let diagonal = QuadraticNumber::from(q.eval(&Rational::one()) * n);
    profile
        .angles
        .iter()
        .zip(&profile.pair_counts)
        .fold(diagonal, |acc, (alpha, &count)| {
            acc + q.eval_quadratic(alpha).scale(&int(2 * count as i64))
        })
}

fn strength_from_profile(design: &DesignInstance, profile: &AngleProfile) -> Result<u32> {
    let max_k = profile.strength_bound() + 1;
    for k in 1..=max_k {
        if !strength_sum(design, profile, k).is_zero() {
            return Ok(k - 1);
        }
    }
    Err(Error::BoundViolation { max_k })
}

/// The strength `t`: the largest `t` with vanishing double sums for
/// `k = 1..t`.
///
/// Sums are checked up to `k = 2s - eps + 1`; if all of them vanish the
/// input contradicts the absolute bound and [`Error::BoundViolation`] is
/// returned.
pub fn compute_strength(design: &DesignInstance) -> Result<u32> {
    strength_from_profile(design, &angle_set(design))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnihilatorResult {
    pub ann: QuadPolynomial,
    /// Coordinates `a_0..a_s` of `ann` in the `Q_i^0` basis.
    pub indicator: Vec<QuadraticNumber>,
    pub tight: bool,
    /// `x^eps R_{s-eps}^eps(x)`
    pub target: RationalPolynomial,
}

/// `x^eps R_{s-eps}^eps(x)`, the annihilator of a tight design.
pub fn tight_target(s: u32, eps: Eps, geom: &GeometryParams) -> RationalPolynomial {
    let r = r_sum(s - eps.value(), eps, geom);
    match eps {
        Eps::Zero => r,
        Eps::One => r.mul(&RationalPolynomial::linear(Rational::one(), Rational::zero())),
    }
}

fn annihilator_from_profile(
    design: &DesignInstance,
    profile: &AngleProfile,
) -> Result<AnnihilatorResult> {
    let one = QuadraticNumber::one();
    let n = QuadraticNumber::from(design.len() as i64);
    let mut product = QuadPolynomial::constant(one.clone());
    let mut at_one = one.clone();
    for alpha in &profile.angles {
        product = product.mul(&QuadPolynomial::linear(one.clone(), -alpha));
        at_one = at_one * (&one - alpha);
    }
    let ann = product.scale(&(&n / &at_one));

    if ann.eval(&one) != n || profile.angles.iter().any(|a| !ann.eval(a).is_zero()) {
        return Err(Error::Invariant("annihilator does not vanish on A(X) with ann(1) = |X|".into()));
    }

    // Back-substitution in the triangular basis deg Q_i^0 = i.
    let s = profile.s;
    let basis: Vec<QuadPolynomial> = (0..=s)
        .map(|i| renorm_q(i, Eps::Zero, design.geom()).to_quadratic())
        .collect();
    let mut rest = ann.clone();
    let mut indicator = vec![QuadraticNumber::zero(); s as usize + 1];
    for i in (0..=s as usize).rev() {
        let lead = basis[i].leading().expect("Q_i^0 has degree i");
        let a = &rest.coeff(i) / lead;
        rest = rest.sub(&basis[i].scale(&a));
        indicator[i] = a;
    }
    if !rest.is_zero() {
        return Err(Error::Invariant("indicator expansion left a remainder".into()));
    }

    let target = tight_target(s, profile.eps, design.geom());
    let tight = ann == target.to_quadratic();
    Ok(AnnihilatorResult {
        ann,
        indicator,
        tight,
        target,
    })
}

/// `ann(x) = (|X| / prod(1 - a)) prod(x - a)` over the angle set, its
/// indicator coefficients and the tightness verdict.
pub fn annihilator(design: &DesignInstance) -> Result<AnnihilatorResult> {
    annihilator_from_profile(design, &angle_set(design))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TightnessReport {
    pub tight: bool,
    pub ann: QuadPolynomial,
    pub target: RationalPolynomial,
    pub strength: u32,
    /// `2s - eps`
    pub strength_bound: u32,
    pub cardinality: usize,
    /// `R_{s-eps}^eps(1)`
    pub cardinality_bound: Rational,
}

fn tightness_from_parts(
    design: &DesignInstance,
    profile: &AngleProfile,
    ann: &AnnihilatorResult,
) -> Result<TightnessReport> {
    let strength = profile.strength.expect("strength computed");
    let report = TightnessReport {
        tight: ann.tight,
        ann: ann.ann.clone(),
        target: ann.target.clone(),
        strength,
        strength_bound: profile.strength_bound(),
        cardinality: design.len(),
        cardinality_bound: r_at_one(profile.s, profile.eps, design.geom()),
    };
    if report.tight
        && (report.strength != report.strength_bound
            || report.cardinality_bound != int(report.cardinality as i64))
    {
        return Err(Error::Invariant(format!(
            "tight annihilator but t = {} (bound {}) and |X| = {} (bound {})",
            report.strength, report.strength_bound, report.cardinality, report.cardinality_bound
        )));
    }
    Ok(report)
}

/// Exact test `ann(x) = x^eps R_{s-eps}^eps(x)`; a tight design must also
/// meet `t = 2s - eps` and `|X| = R_{s-eps}^eps(1)`.
pub fn tightness_check(design: &DesignInstance) -> Result<TightnessReport> {
    Ok(analyze(design)?.tightness)
}

/// Everything the design stage computes, from one pass over the Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignAnalysis {
    pub profile: AngleProfile,
    pub annihilator: AnnihilatorResult,
    pub tightness: TightnessReport,
}

pub fn analyze(design: &DesignInstance) -> Result<DesignAnalysis> {
    let mut profile = angle_set(design);
    profile.strength = Some(strength_from_profile(design, &profile)?);
    let annihilator = annihilator_from_profile(design, &profile)?;
    let tightness = tightness_from_parts(design, &profile, &annihilator)?;
    Ok(DesignAnalysis {
        profile,
        annihilator,
        tightness,
    })
}

#[cfg(test)]
mod tests;
