//! Closed-form idempotent ranks for tight designs, independent of any
//! concrete point set, and the exhaustive parameter scan over them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{int, rat, Rational};
use crate::jacobi::{q_at_one, q_ratio, r_at_one, Eps, GeometryParams};

/// Ranks of `L_0..L_s` predicted for a tight design with parameters
/// `(geom, s, eps)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RankProfile {
    pub geom: GeometryParams,
    pub s: u32,
    pub eps: Eps,
    pub ranks: Vec<Rational>,
    /// Pairs `(i, j)`, `i < j`, with equal ranks, in lexicographic order.
    pub collisions: Vec<(usize, usize)>,
    /// Indices whose rank is not a positive integer. Nonempty means no
    /// tight design with these parameters exists.
    pub nonintegral: Vec<usize>,
    /// `rank L_1` differs from every other rank.
    pub first_idempotent_unique: bool,
}

impl RankProfile {
    pub fn ranks_distinct(&self) -> bool {
        self.collisions.is_empty()
    }

    /// Rationality of the angle set follows from the ranks alone: either
    /// `L_1 = E_1` has a rank no other idempotent shares (its entries are
    /// an injective rational function of the angles, so any field
    /// automorphism fixing it fixes every angle), or `A = {0}`.
    pub fn rationality_certified(&self) -> bool {
        let trivial = self.s == 1 && self.eps == Eps::One;
        let l1_is_e1 = self.s >= 2 || self.eps == Eps::Zero;
        trivial || (l1_is_e1 && self.first_idempotent_unique)
    }

    /// The ranks as integers, or [`Error::NonIntegralRank`] at the first
    /// offending index.
    pub fn integral_ranks(&self) -> Result<Vec<BigInt>> {
        self.ranks
            .iter()
            .enumerate()
            .map(|(index, r)| {
                positive_integer(r).ok_or_else(|| Error::NonIntegralRank {
                    index,
                    value: crate::exactnum::format_rational(r),
                })
            })
            .collect()
    }
}

fn positive_integer(r: &Rational) -> Option<BigInt> {
    (r.is_integer() && r.is_positive()).then(|| r.to_integer())
}

/// `[Q_0^0(1), ..., Q_{s-1}^0(1), R_{s-eps}^eps(1) - R_{s-1}^0(1)]`.
pub fn closed_form_ranks(geom: &GeometryParams, s: u32, eps: Eps) -> Vec<Rational> {
    let mut ranks: Vec<Rational> = (0..s).map(|i| q_at_one(i, geom)).collect();
    let below: Rational = ranks.iter().sum();
    ranks.push(r_at_one(s, eps, geom) - below);
    ranks
}

fn profile_from_ranks(geom: GeometryParams, s: u32, eps: Eps, ranks: Vec<Rational>) -> RankProfile {
    let mut groups: BTreeMap<&Rational, Vec<usize>> = BTreeMap::new();
    for (i, r) in ranks.iter().enumerate() {
        groups.entry(r).or_default().push(i);
    }
    let mut collisions = Vec::new();
    for idx in groups.values() {
        for (a, &i) in idx.iter().enumerate() {
            collisions.extend(idx[a + 1..].iter().map(|&j| (i, j)));
        }
    }
    collisions.sort_unstable();
    let nonintegral = (0..ranks.len())
        .filter(|&i| positive_integer(&ranks[i]).is_none())
        .collect();
    let first_idempotent_unique = ranks.len() > 1 && groups[&ranks[1]].len() == 1;
    RankProfile {
        geom,
        s,
        eps,
        ranks,
        collisions,
        nonintegral,
        first_idempotent_unique,
    }
}

/// Closed-form rank profile for `s >= 1`.
///
/// Non-integral ranks are recorded rather than rejected; see
/// [`RankProfile::integral_ranks`] for the strict form.
pub fn rank_profile(geom: &GeometryParams, s: u32, eps: Eps) -> Result<RankProfile> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    Ok(profile_from_ranks(*geom, s, eps, closed_form_ranks(geom, s, eps)))
}

/// All profiles for `s = 1..=s_max` and both `eps`, sharing one table of
/// `Q_i^0(1)` values.
fn profiles_upto(geom: &GeometryParams, s_max: u32) -> Vec<RankProfile> {
    let q: Vec<Rational> = (0..s_max).map(|i| q_at_one(i, geom)).collect();
    let mut out = Vec::with_capacity(2 * s_max as usize);
    let mut below = Rational::zero();
    for s in 1..=s_max {
        below += &q[s as usize - 1];
        for eps in [Eps::Zero, Eps::One] {
            let mut ranks = q[..s as usize].to_vec();
            ranks.push(r_at_one(s, eps, geom) - &below);
            out.push(profile_from_ranks(*geom, s, eps, ranks));
        }
    }
    out
}

/// Outcome of the two independent monotonicity checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AscendingCheck {
    /// `Q_0^0(1) < ... < Q_{s_max}^0(1)` by direct comparison.
    pub by_values: bool,
    /// Every consecutive ratio from the three-factor recurrence exceeds 1
    /// and reproduces the direct quotient.
    pub by_ratio: bool,
}

impl AscendingCheck {
    pub fn holds(&self) -> bool {
        self.by_values && self.by_ratio
    }
}

/// Strict increase of `Q_i^0(1)` for `i <= s_max`. The circle, where all
/// middle ranks equal 2, is rejected.
pub fn ascending_check(geom: &GeometryParams, s_max: u32) -> Result<AscendingCheck> {
    if geom.is_circle() {
        return Err(Error::InvalidParameter(
            "the circle (2, 1) has constant ranks 2 and is excluded".into(),
        ));
    }
    let values: Vec<Rational> = (0..=s_max).map(|i| q_at_one(i, geom)).collect();
    let by_values = values.windows(2).all(|w| w[0] < w[1]);
    let by_ratio = (0..s_max as usize).all(|i| match q_ratio(i as u32, geom) {
        Some(r) => r > Rational::one() && &values[i] * &r == values[i + 1],
        None => false,
    });
    Ok(AscendingCheck { by_values, by_ratio })
}

/// `f_d(rho) = rho^2 d^2 - 2 rho d^2 - 2d - 4`. Meaningful for strictly
/// projective geometries, but evaluated for any input.
pub fn f_poly(d: u32, rho: u32) -> Rational {
    let (d, rho) = (int(d.into()), int(rho.into()));
    &rho * &rho * &d * &d - int(2) * &rho * &d * &d - int(2) * &d - int(4)
}

/// Both sides of `(2/(N+3)) Q_2^0(1) - Q_1^0(1) = (1/2) (d(rho-1)/(d(d+2))) f_d(rho)`.
pub fn rank_gap_identity(geom: &GeometryParams) -> (Rational, Rational) {
    let n = geom.big_n();
    let lhs = int(2) / (&n + int(3)) * q_at_one(2, geom) - q_at_one(1, geom);
    let d = int(geom.degree().into());
    let rho = int(geom.rho().into());
    let rhs = rat(1, 2) * (&d * (&rho - int(1))) / (&d * (&d + int(2)))
        * f_poly(geom.degree(), geom.rho());
    (lhs, rhs)
}

/// `(3/(N+5)) Q_3^0(1) - Q_1^0(1)` at `(rho, d) = (3, 1)`; equals 1.
pub fn special_case_31() -> Rational {
    let geom = GeometryParams::new(3, 1).expect("(3, 1) is admissible");
    int(3) / (geom.big_n() + int(5)) * q_at_one(3, &geom) - q_at_one(1, &geom)
}

/// Where a colliding cell sits relative to the known exceptions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellClass {
    /// No two ranks coincide.
    Distinct,
    /// The circle `(2, 1)`.
    Circle,
    /// `(2, 2)` with `s = 3`, `eps = 1`: the icosahedron cell.
    Icosahedral,
    /// `s = 1`, `eps = 1` on a sphere: the antipodal pair, `A = {0}`.
    AntipodalPair,
    /// Any other colliding cell.
    Other,
}

impl CellClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CellClass::Distinct => "distinct",
            CellClass::Circle => "circle",
            CellClass::Icosahedral => "icosahedral",
            CellClass::AntipodalPair => "antipodal_pair",
            CellClass::Other => "other",
        }
    }
}

fn classify(p: &RankProfile) -> CellClass {
    let (rho, d) = (p.geom.rho(), p.geom.degree());
    if p.collisions.is_empty() {
        CellClass::Distinct
    } else if (rho, d) == (2, 1) {
        CellClass::Circle
    } else if (rho, d, p.s, p.eps) == (2, 2, 3, Eps::One) {
        CellClass::Icosahedral
    } else if rho == 2 && p.s == 1 && p.eps == Eps::One {
        CellClass::AntipodalPair
    } else {
        CellClass::Other
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanCell {
    pub rho: u32,
    pub degree: u32,
    pub s: u32,
    pub eps: Eps,
    pub collisions: Vec<(usize, usize)>,
    pub nonintegral: Vec<usize>,
    pub first_idempotent_unique: bool,
    pub certified_rational: bool,
    pub class: CellClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub cells: usize,
    pub collision_cells: usize,
    pub circle: usize,
    pub icosahedral: usize,
    pub antipodal_pair: usize,
    pub other: usize,
    /// Cells whose ranks do not certify rationality even through `L_1`.
    pub uncertified: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub cells: Vec<ScanCell>,
    pub summary: ScanSummary,
}

impl ScanResult {
    /// Cells with at least one rank collision.
    pub fn exceptions_found(&self) -> impl Iterator<Item = &ScanCell> {
        self.cells.iter().filter(|c| c.class != CellClass::Distinct)
    }
}

/// Every admissible `(rho, d)` with `d` in `degrees` and `2 <= rho <= rho_max`,
/// in `(rho, d)` order.
pub fn admissible_geometries(degrees: &[u32], rho_max: u32) -> Vec<GeometryParams> {
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    (2..=rho_max)
        .flat_map(|rho| degrees.iter().filter_map(move |&d| GeometryParams::new(rho, d).ok()))
        .collect()
}

/// Rank profiles for every geometry in `geoms`, every `1 <= s <= s_max`
/// and both `eps`, sorted by `(rho, d, s, eps)`.
pub fn scan_geometries(geoms: &[GeometryParams], s_max: u32) -> ScanResult {
    let mut geoms = geoms.to_vec();
    geoms.sort_unstable();
    geoms.dedup();
    let mut cells = Vec::new();
    for geom in &geoms {
        for p in profiles_upto(geom, s_max) {
            cells.push(ScanCell {
                rho: geom.rho(),
                degree: geom.degree(),
                s: p.s,
                eps: p.eps,
                class: classify(&p),
                certified_rational: p.rationality_certified(),
                first_idempotent_unique: p.first_idempotent_unique,
                nonintegral: p.nonintegral,
                collisions: p.collisions,
            });
        }
    }
    let count = |class| cells.iter().filter(|c| c.class == class).count();
    let summary = ScanSummary {
        cells: cells.len(),
        collision_cells: cells.len() - count(CellClass::Distinct),
        circle: count(CellClass::Circle),
        icosahedral: count(CellClass::Icosahedral),
        antipodal_pair: count(CellClass::AntipodalPair),
        other: count(CellClass::Other),
        uncertified: cells.iter().filter(|c| !c.certified_rational).count(),
    };
    ScanResult { cells, summary }
}

/// [`scan_geometries`] over [`admissible_geometries`].
pub fn scan_collisions(degrees: &[u32], rho_max: u32, s_max: u32) -> ScanResult {
    scan_geometries(&admissible_geometries(degrees, rho_max), s_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::generalized_binomial;

    fn g(rho: u32, d: u32) -> GeometryParams {
        GeometryParams::new(rho, d).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn printed_profiles() {
        let p = rank_profile(&g(2, 2), 3, Eps::One).unwrap();
        assert_eq!(p.ranks, ints(&[1, 3, 5, 3]));
        assert_eq!(p.collisions, vec![(1, 3)]);
        assert!(!p.rationality_certified());

        let p = rank_profile(&g(2, 1), 3, Eps::One).unwrap();
        assert_eq!(p.ranks, ints(&[1, 2, 2, 1]));
        assert_eq!(p.collisions, vec![(0, 3), (1, 2)]);

        let p = rank_profile(&g(2, 7), 4, Eps::One).unwrap();
        assert_eq!(p.ranks, ints(&[1, 8, 35, 112, 84]));
        assert!(p.ranks_distinct());

        let p = rank_profile(&g(3, 8), 2, Eps::One).unwrap();
        assert!(p.ranks_distinct());
    }

    #[test]
    fn integrality() {
        // No tight 3-design in the octonion plane: rank L_2 = 216/5.
        let p = rank_profile(&g(3, 8), 2, Eps::One).unwrap();
        assert_eq!(p.ranks[2], rat(216, 5));
        assert_eq!(p.nonintegral, vec![2]);
        assert!(matches!(p.integral_ranks(), Err(Error::NonIntegralRank { index: 2, .. })));
        // Ranks far beyond 64 bits stay integral.
        let p = rank_profile(&g(17, 2), 25, Eps::One).unwrap();
        assert!(p.nonintegral.is_empty());
        assert!(p.ranks[24] > int(i64::MAX));
        assert_eq!(p.collisions, vec![(24, 25)]);
        assert!(matches!(
            rank_profile(&g(2, 2), 0, Eps::Zero),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn sphere_top_rank_is_binomial() {
        for d in 1..=12u32 {
            for s in 1..=12u32 {
                let p = rank_profile(&g(2, d), s, Eps::One).unwrap();
                let b = generalized_binomial(&int((d + s - 2).into()), s - 1);
                assert_eq!(p.ranks[s as usize], b, "d={d} s={s}");
                if s >= 2 {
                    let gap = &p.ranks[s as usize] - &p.ranks[1];
                    match (s, d) {
                        (_, 1) | (2, _) => assert_eq!(gap, int(-1)),
                        (3, 2) => assert!(gap.is_zero()),
                        _ => assert!(gap.is_positive(), "d={d} s={s}"),
                    }
                }
            }
        }
    }

    #[test]
    fn profiles_table_matches_single_profiles() {
        for geom in [g(2, 1), g(2, 5), g(3, 1), g(5, 4), g(3, 8)] {
            for p in profiles_upto(&geom, 8) {
                assert_eq!(p, rank_profile(&geom, p.s, p.eps).unwrap());
            }
        }
    }

    #[test]
    fn ascending() {
        let c = ascending_check(&g(3, 1), 10).unwrap();
        assert!(c.holds());
        let n = g(3, 1).big_n();
        for i in 0..10 {
            let ii = int(i);
            let first = (&n + int(2) * &ii + int(1)) / (&n + int(2) * &ii - int(1));
            assert_eq!(first, (int(2) * &ii + rat(5, 2)) / (int(2) * &ii + rat(1, 2)));
        }
        assert!(ascending_check(&g(2, 7), 6).unwrap().holds());
        assert!(ascending_check(&g(2, 1), 4).is_err());
        for geom in [g(2, 2), g(3, 2), g(4, 4), g(3, 8), g(9, 1)] {
            assert!(ascending_check(&geom, 12).unwrap().holds());
        }
    }

    #[test]
    fn f_values() {
        assert_eq!(f_poly(1, 3), int(-3));
        assert_eq!(f_poly(2, 3), int(4));
        assert_eq!(f_poly(4, 3), int(36));
        assert_eq!(f_poly(8, 3), int(172));
        for rho in 3..30 {
            assert_eq!(f_poly(2, rho), int(4 * (rho * rho) as i64 - 8 * rho as i64 - 8));
            assert_eq!(f_poly(1, rho).is_positive(), rho > 3);
        }
    }

    #[test]
    fn gap_identity_holds() {
        for (rho, d) in [(3, 1), (3, 2), (3, 4), (3, 8), (7, 1), (10, 2), (20, 4)] {
            let (lhs, rhs) = rank_gap_identity(&g(rho, d));
            assert_eq!(lhs, rhs, "({rho}, {d})");
        }
    }

    #[test]
    fn real_projective_plane_special_case() {
        assert_eq!(special_case_31(), int(1));
        assert_eq!(q_at_one(1, &g(3, 1)), int(5));
        assert_eq!(q_at_one(3, &g(3, 1)), int(13));
    }

    #[test]
    fn scan_small_sphere_cells() {
        // On the 2-sphere rank L_s = s for eps = 1, so every odd s collides
        // with rank L_{(s-1)/2} = s. Only s = 3 hits L_1.
        let r = scan_collisions(&[2], 2, 50);
        let found: Vec<_> = r
            .exceptions_found()
            .filter(|c| c.s >= 2)
            .map(|c| (c.s, c.eps))
            .collect();
        let odd: Vec<_> = (3..=49).step_by(2).map(|s| (s, Eps::One)).collect();
        assert_eq!(found, odd);
        let uncertified: Vec<_> = r
            .cells
            .iter()
            .filter(|c| !c.certified_rational)
            .map(|c| (c.s, c.eps))
            .collect();
        assert_eq!(uncertified, vec![(3, Eps::One)]);

        let circle = scan_collisions(&[1], 2, 20);
        assert!(circle
            .cells
            .iter()
            .filter(|c| c.s >= 2)
            .all(|c| c.class == CellClass::Circle));
    }

    #[test]
    fn scan_order_is_deterministic() {
        let geoms = admissible_geometries(&[8, 1, 4, 2, 2], 6);
        assert_eq!(geoms.len(), 5 * 3 + 2);
        let r = scan_collisions(&[8, 1, 4, 2, 2], 6, 5);
        let keys: Vec<_> = r.cells.iter().map(|c| (c.rho, c.degree, c.s, c.eps)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        // (3, 8) is the only admissible octonion cell.
        assert!(r.cells.iter().all(|c| c.degree != 8 || c.rho <= 3));
    }
}
