//! Exact constructions of known tight designs, each with the analysis it
//! must reproduce.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::design::{gram_from_cospherical_points, gram_from_sphere_points, validate_gram, DesignInstance};
use crate::error::{Error, Result};
use crate::exactnum::{rat, QuadraticNumber};
use crate::jacobi::{Eps, GeometryParams};
use crate::matrix::Matrix;

/// What the pipeline must report for a catalog design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub strength: u32,
    pub s: u32,
    pub eps: Eps,
    pub cardinality: usize,
    pub tight: bool,
    /// The angle set is rational.
    pub rational: bool,
    /// All idempotent ranks are distinct.
    pub certified_rational: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub design: DesignInstance,
    pub expected: Expected,
}

fn tight(strength: u32, s: u32, eps: Eps, cardinality: usize, rational: bool, certified: bool) -> Expected {
    Expected {
        strength,
        s,
        eps,
        cardinality,
        tight: true,
        rational,
        certified_rational: certified,
    }
}

fn q(n: i64, d: i64) -> QuadraticNumber {
    QuadraticNumber::from(rat(n, d))
}

fn quad(a: (i64, i64), b: (i64, i64), m: u64) -> QuadraticNumber {
    QuadraticNumber::new(rat(a.0, a.1), rat(b.0, b.1), m).expect("square-free radicand")
}

fn sphere(d: u32) -> GeometryParams {
    GeometryParams::new(2, d).expect("every sphere is admissible")
}

/// `cos(2 pi / n)` when it lies in a quadratic field.
fn base_cosine(n: u32) -> Option<QuadraticNumber> {
    Some(match n {
        2 => q(-1, 1),
        3 => q(-1, 2),
        4 => QuadraticNumber::zero(),
        5 => quad((-1, 4), (1, 4), 5),
        6 => q(1, 2),
        8 => quad((0, 1), (1, 2), 2),
        10 => quad((1, 4), (1, 4), 5),
        12 => quad((0, 1), (1, 2), 3),
        _ => return None,
    })
}

/// The regular `n`-gon on the circle, a tight `(n-1)`-design.
///
/// Built from its Gram matrix `(1 + cos(2 pi k/n))/2`: the cosines lie in
/// one quadratic field for the supported `n`, the sines in general do not.
pub fn polygon(n: u32) -> Result<CatalogEntry> {
    let c1 = base_cosine(n).ok_or(Error::UnsupportedPolygon(n))?;
    let two_c1 = &c1 + &c1;
    let mut cos = vec![QuadraticNumber::one(), c1];
    while cos.len() < n as usize {
        let k = cos.len();
        let next = &(&two_c1 * &cos[k - 1]) - &cos[k - 2];
        cos.push(next);
    }
    let half = q(1, 2);
    let size = n as usize;
    let gram = Matrix::from_fn(size, size, |r, c| {
        (&QuadraticNumber::one() + &cos[(r + size - c) % size]) * &half
    });
    let design = validate_gram(gram, sphere(1), None)?;
    let eps = if n.is_multiple_of(2) { Eps::One } else { Eps::Zero };
    Ok(CatalogEntry {
        name: format!("polygon-{n}"),
        design,
        expected: tight(
            n - 1,
            n / 2,
            eps,
            size,
            matches!(n, 2 | 3 | 4 | 6),
            n == 3,
        ),
    })
}

/// `n + 1` points of the regular simplex in `Omega_n` (`d = n - 1`).
pub fn simplex(n: u32) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("simplex needs n >= 2, got {n}")));
    }
    let size = n as usize + 1;
    let off = q(i64::from(n) - 1, 2 * i64::from(n));
    let gram = Matrix::from_fn(size, size, |r, c| if r == c { QuadraticNumber::one() } else { off.clone() });
    Ok(CatalogEntry {
        name: format!("simplex-{n}"),
        design: validate_gram(gram, sphere(n - 1), None)?,
        expected: tight(2, 1, Eps::Zero, size, true, true),
    })
}

/// The `2n` points `+-e_i` in `Omega_n`.
pub fn cross_polytope(n: u32) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("cross-polytope needs n >= 2, got {n}")));
    }
    let n_us = n as usize;
    let mut points = Vec::with_capacity(2 * n_us);
    for i in 0..n_us {
        for sign in [1, -1] {
            let mut v = vec![QuadraticNumber::zero(); n_us];
            v[i] = QuadraticNumber::from(sign);
            points.push(v);
        }
    }
    Ok(CatalogEntry {
        name: format!("cross-polytope-{n}"),
        design: gram_from_sphere_points(points, sphere(n - 1))?,
        expected: tight(3, 2, Eps::One, 2 * n_us, true, n >= 3),
    })
}

/// The 12 vertices of the regular icosahedron in `Omega_3`: cyclic
/// permutations of `(0, +-1, +-phi)`, normalized through the Gram matrix so
/// that everything stays in `Q(sqrt 5)`.
pub fn icosahedron() -> Result<CatalogEntry> {
    let phi = quad((1, 2), (1, 2), 5);
    let one = QuadraticNumber::one();
    let zero = QuadraticNumber::zero();
    let mut points = Vec::with_capacity(12);
    for a in [1i64, -1] {
        for b in [1i64, -1] {
            let base = [
                zero.clone(),
                one.scale(&rat(a, 1)),
                phi.scale(&rat(b, 1)),
            ];
            for shift in 0..3 {
                points.push((0..3).map(|k| base[(k + 3 - shift) % 3].clone()).collect());
            }
        }
    }
    Ok(CatalogEntry {
        name: "icosahedron".into(),
        design: gram_from_cospherical_points(&points, sphere(2))?,
        expected: tight(5, 3, Eps::One, 12, false, false),
    })
}

/// The 240 roots of E8 in `Omega_8`, from doubled integer coordinates:
/// `+-2e_i +-2e_j` and `(+-1)^8` with an even number of minus signs.
pub fn e8_roots() -> Result<CatalogEntry> {
    let mut roots: Vec<[i64; 8]> = Vec::with_capacity(240);
    for i in 0..8 {
        for j in i + 1..8 {
            for si in [2, -2] {
                for sj in [2, -2] {
                    let mut v = [0; 8];
                    v[i] = si;
                    v[j] = sj;
                    roots.push(v);
                }
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let mut v = [1; 8];
            for (k, x) in v.iter_mut().enumerate() {
                if mask >> k & 1 == 1 {
                    *x = -1;
                }
            }
            roots.push(v);
        }
    }
    let n = roots.len();
    let dot = |a: &[i64; 8], b: &[i64; 8]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    // Squared norm 8: Gram entry (1 + u.v/8)/2 = (8 + u.v)/16.
    let gram = Matrix::from_fn(n, n, |r, c| q(8 + dot(&roots[r], &roots[c]), 16));
    Ok(CatalogEntry {
        name: "e8".into(),
        design: validate_gram(gram, sphere(7), None)?,
        expected: tight(7, 4, Eps::One, 240, true, true),
    })
}

/// `rho` mutually orthogonal primitive idempotents: Gram matrix `I`.
pub fn jordan_frame(geom: GeometryParams) -> Result<CatalogEntry> {
    let rho = geom.rho();
    Ok(CatalogEntry {
        name: format!("jordan-frame-{rho}-{}", geom.degree()),
        design: validate_gram(Matrix::identity(rho as usize), geom, None)?,
        expected: tight(1, 1, Eps::One, rho as usize, true, rho >= 3),
    })
}

/// `rho^2` points in the complex projective space of rank `rho`, all at
/// squared overlap `1/(rho + 1)`. Taken as an abstract Gram matrix.
pub fn sic_gram(rho: u32) -> Result<CatalogEntry> {
    if rho < 2 {
        return Err(Error::InvalidParameter(format!("SIC needs rank >= 2, got {rho}")));
    }
    let size = (rho * rho) as usize;
    let off = q(1, i64::from(rho) + 1);
    let gram = Matrix::from_fn(size, size, |r, c| if r == c { QuadraticNumber::one() } else { off.clone() });
    Ok(CatalogEntry {
        name: format!("sic-{rho}"),
        design: validate_gram(gram, GeometryParams::new(rho, 2)?, None)?,
        expected: tight(2, 1, Eps::Zero, size, true, true),
    })
}

fn parse_u32(text: &str, name: &str) -> Result<u32> {
    text.parse()
        .map_err(|_| Error::UnknownCatalogEntry(name.to_string()))
}

/// Looks up `polygon-N`, `simplex-N`, `cross-polytope-N`, `icosahedron`,
/// `e8`, `jordan-frame-RHO-D` or `sic-RHO`.
pub fn by_name(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownCatalogEntry(name.to_string());
    match name {
        "icosahedron" => return icosahedron(),
        "e8" => return e8_roots(),
        _ => {}
    }
    if let Some(n) = name.strip_prefix("polygon-") {
        return polygon(parse_u32(n, name)?);
    }
    if let Some(n) = name.strip_prefix("simplex-") {
        return simplex(parse_u32(n, name)?);
    }
    if let Some(n) = name.strip_prefix("cross-polytope-") {
        return cross_polytope(parse_u32(n, name)?);
    }
    if let Some(n) = name.strip_prefix("sic-") {
        return sic_gram(parse_u32(n, name)?);
    }
    if let Some(rest) = name.strip_prefix("jordan-frame-") {
        let (rho, d) = rest.split_once('-').ok_or_else(unknown)?;
        return jordan_frame(GeometryParams::new(parse_u32(rho, name)?, parse_u32(d, name)?)?);
    }
    Err(unknown())
}

/// Names of a representative set of catalog entries, E8 excluded.
pub fn small_entry_names() -> Vec<String> {
    let mut names: Vec<String> = [2, 3, 4, 5, 6, 8, 10, 12]
        .iter()
        .map(|n| format!("polygon-{n}"))
        .collect();
    names.extend((2..=6).map(|n| format!("simplex-{n}")));
    names.extend((2..=8).map(|n| format!("cross-polytope-{n}")));
    names.push("icosahedron".into());
    names.extend(
        ["2-1", "2-5", "3-1", "3-2", "3-4", "3-8", "5-2"]
            .iter()
            .map(|g| format!("jordan-frame-{g}")),
    );
    names.extend((2..=4).map(|r| format!("sic-{r}")));
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::angle_set;

    #[test]
    fn names_resolve() {
        for name in small_entry_names() {
            assert_eq!(by_name(&name).unwrap().name, name);
        }
        for bad in ["polygon-7", "polygon-x", "cube", "jordan-frame-3", "jordan-frame-3-3"] {
            assert!(by_name(bad).is_err(), "{bad}");
        }
        assert_eq!(by_name("polygon-7").unwrap_err(), Error::UnsupportedPolygon(7));
    }

    #[test]
    fn polygon_angle_sets() {
        let a = angle_set(&polygon(6).unwrap().design);
        assert_eq!(a.angles, vec![q(0, 1), q(1, 4), q(3, 4)]);
        let a = angle_set(&polygon(5).unwrap().design);
        assert_eq!(a.angles, vec![quad((3, 8), (-1, 8), 5), quad((3, 8), (1, 8), 5)]);
        let a = angle_set(&polygon(8).unwrap().design);
        assert_eq!(
            a.angles,
            vec![q(0, 1), quad((1, 2), (-1, 4), 2), q(1, 2), quad((1, 2), (1, 4), 2)]
        );
    }

    #[test]
    fn coincident_constructions() {
        assert_eq!(simplex(2).unwrap().design.gram(), polygon(3).unwrap().design.gram());
        let square = polygon(4).unwrap();
        let cross = cross_polytope(2).unwrap();
        assert_eq!(angle_set(&square.design), angle_set(&cross.design));
        let frame = jordan_frame(sphere(1)).unwrap();
        assert_eq!(frame.design.gram(), polygon(2).unwrap().design.gram());
    }

    #[test]
    fn icosahedron_angles() {
        let a = angle_set(&icosahedron().unwrap().design);
        assert_eq!(
            a.angles,
            vec![q(0, 1), quad((1, 2), (-1, 10), 5), quad((1, 2), (1, 10), 5)]
        );
        assert_eq!(a.pair_counts, vec![6, 30, 30]);
    }

    #[test]
    fn e8_angles() {
        let a = angle_set(&e8_roots().unwrap().design);
        assert_eq!(a.angles, vec![q(0, 1), q(1, 4), q(1, 2), q(3, 4)]);
        assert_eq!(a.pair_counts, vec![120, 6720, 15120, 6720]);
    }
}
