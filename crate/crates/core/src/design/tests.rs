use super::*;
use crate::jacobi::q_at_one;

fn q(a: Rational) -> QuadraticNumber {
    QuadraticNumber::from(a)
}

fn circle() -> GeometryParams {
    GeometryParams::new(2, 1).unwrap()
}

fn square_points() -> Vec<Vec<QuadraticNumber>> {
    [(1, 0), (0, 1), (-1, 0), (0, -1)]
        .iter()
        .map(|&(x, y)| vec![QuadraticNumber::from(x), QuadraticNumber::from(y)])
        .collect()
}

fn hexagon_points() -> Vec<Vec<QuadraticNumber>> {
    let h = QuadraticNumber::new(Rational::zero(), rat(1, 2), 3).unwrap();
    let half = q(rat(1, 2));
    let one = QuadraticNumber::one();
    let zero = QuadraticNumber::zero();
    vec![
        vec![one.clone(), zero.clone()],
        vec![half.clone(), h.clone()],
        vec![-&half, h.clone()],
        vec![-&one, zero.clone()],
        vec![-&half, -&h],
        vec![half, -h],
    ]
}

// Pentagon Gram from cos(2 pi k / 5): cos72 = (sqrt5 - 1)/4, cos144 = -(sqrt5 + 1)/4.
fn pentagon() -> DesignInstance {
    let c1 = QuadraticNumber::new(rat(-1, 4), rat(1, 4), 5).unwrap();
    let c2 = QuadraticNumber::new(rat(-1, 4), rat(-1, 4), 5).unwrap();
    let half = q(rat(1, 2));
    let one = QuadraticNumber::one();
    let cos = |k: usize| match k % 5 {
        0 => one.clone(),
        1 | 4 => c1.clone(),
        _ => c2.clone(),
    };
    let g = Matrix::from_fn(5, 5, |r, c| (&one + &cos(r + 5 - c)) * &half);
    validate_gram(g, circle(), None).unwrap()
}

fn cross_polytope(n: usize) -> DesignInstance {
    let mut pts = Vec::new();
    for i in 0..n {
        for sign in [1, -1] {
            let mut v = vec![QuadraticNumber::zero(); n];
            v[i] = QuadraticNumber::from(sign);
            pts.push(v);
        }
    }
    gram_from_sphere_points(pts, GeometryParams::new(2, n as u32 - 1).unwrap()).unwrap()
}

fn sic(rho: u32) -> DesignInstance {
    let n = (rho * rho) as usize;
    let off = q(rat(1, rho as i64 + 1));
    let g = Matrix::from_fn(n, n, |r, c| if r == c { QuadraticNumber::one() } else { off.clone() });
    validate_gram(g, GeometryParams::new(rho, 2).unwrap(), None).unwrap()
}

// Independent oracle: ungrouped double sum over all ordered pairs.
fn naive_strength(d: &DesignInstance) -> u32 {
    let n = d.len();
    (1..)
        .find(|&k| {
            let qk = renorm_q(k, Eps::Zero, d.geom());
            let mut sum = QuadraticNumber::zero();
            for x in 0..n {
                for y in 0..n {
                    sum += &qk.eval_quadratic(d.gram().get(x, y));
                }
            }
            !sum.is_zero()
        })
        .unwrap()
        - 1
}

#[test]
fn square_gram_entries() {
    let d = gram_from_sphere_points(square_points(), circle()).unwrap();
    let p = angle_set(&d);
    assert_eq!(p.angles, vec![QuadraticNumber::zero(), q(rat(1, 2))]);
    assert_eq!(p.pair_counts, vec![2, 4]);
    assert_eq!(p.eps, Eps::One);
    assert!(p.all_rational);
}

#[test]
fn antipodal_pair_is_zero() {
    let pts = vec![square_points()[0].clone(), square_points()[2].clone()];
    let d = gram_from_sphere_points(pts, circle()).unwrap();
    assert!(d.gram().get(0, 1).is_zero());
    let a = analyze(&d).unwrap();
    assert_eq!(a.profile.strength, Some(1));
    assert!(a.tightness.tight);
}

#[test]
fn hexagon_is_tight_five_design() {
    let d = gram_from_sphere_points(hexagon_points(), circle()).unwrap();
    assert_eq!(d.radicand(), Some(3));
    let a = analyze(&d).unwrap();
    assert_eq!(
        a.profile.angles,
        vec![QuadraticNumber::zero(), q(rat(1, 4)), q(rat(3, 4))]
    );
    assert_eq!(a.profile.pair_counts, vec![3, 6, 6]);
    assert!(a.profile.all_rational);
    assert_eq!(a.profile.strength, Some(5));
    assert!(a.tightness.tight);
    assert_eq!(a.tightness.cardinality_bound, int(6));
}

#[test]
fn pentagon_is_tight_four_design() {
    let d = pentagon();
    let a = analyze(&d).unwrap();
    assert_eq!((a.profile.s, a.profile.eps), (2, Eps::Zero));
    assert!(!a.profile.all_rational);
    assert_eq!(a.profile.strength, Some(4));
    assert!(a.tightness.tight);
    assert_eq!(naive_strength(&d), 4);
}

#[test]
fn cross_polytope_is_tight_three_design() {
    for n in 2..=5 {
        let d = cross_polytope(n);
        let a = analyze(&d).unwrap();
        assert_eq!(a.profile.angles, vec![QuadraticNumber::zero(), q(rat(1, 2))]);
        assert_eq!(a.profile.strength, Some(3), "n = {n}");
        assert!(a.tightness.tight);
        // ann = x R_1^1
        assert_eq!(a.annihilator.target, tight_target(2, Eps::One, d.geom()));
    }
}

#[test]
fn sic_indicator_is_all_ones() {
    for rho in 2..=4 {
        let d = sic(rho);
        let a = analyze(&d).unwrap();
        assert_eq!(a.profile.strength, Some(2));
        assert!(a.tightness.tight);
        assert_eq!(a.annihilator.indicator, vec![QuadraticNumber::one(); 2]);
        assert_eq!(q_at_one(1, d.geom()) + int(1), int((rho * rho) as i64));
    }
}

#[test]
fn deleting_a_point_breaks_tightness() {
    let d = pentagon().without_point(0).unwrap();
    let a = analyze(&d).unwrap();
    assert!(!a.tightness.tight);
    assert_eq!(a.tightness.cardinality, 4);
    let d = gram_from_sphere_points(hexagon_points(), circle())
        .unwrap()
        .without_point(2)
        .unwrap();
    assert!(!tightness_check(&d).unwrap().tight);
}

#[test]
fn indicator_reconstructs_annihilator() {
    for d in [pentagon(), cross_polytope(3), sic(3), pentagon().without_point(1).unwrap()] {
        let a = annihilator(&d).unwrap();
        let rebuilt = a
            .indicator
            .iter()
            .enumerate()
            .fold(QuadPolynomial::zero(), |acc, (i, c)| {
                acc.add(&renorm_q(i as u32, Eps::Zero, d.geom()).to_quadratic().scale(c))
            });
        assert_eq!(rebuilt, a.ann);
    }
}

#[test]
fn grouped_strength_matches_naive_sum() {
    let designs = [
        pentagon(),
        pentagon().without_point(3).unwrap(),
        cross_polytope(4),
        sic(2),
        gram_from_sphere_points(hexagon_points(), circle()).unwrap(),
    ];
    for d in designs {
        assert_eq!(compute_strength(&d).unwrap(), naive_strength(&d));
    }
}

#[test]
fn strength_invariant_under_permutation() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let d = gram_from_sphere_points(hexagon_points(), circle()).unwrap();
    for _ in 0..20 {
        let mut perm: Vec<usize> = (0..d.len()).collect();
        perm.shuffle(&mut rng);
        let p = d.permuted(&perm).unwrap();
        assert_eq!(compute_strength(&p).unwrap(), 5);
        assert_eq!(angle_set(&p), angle_set(&d));
    }
    assert!(d.permuted(&[0, 0, 1, 2, 3, 4]).is_err());
}

#[test]
fn validation_errors() {
    let g = circle();
    let one = QuadraticNumber::one();
    let mk = |entries: [[i64; 2]; 2], den: i64| {
        Matrix::from_fn(2, 2, |r, c| q(rat(entries[r][c], den)))
    };
    assert!(matches!(
        validate_gram(mk([[3, 1], [1, 3]], 2), g, None),
        Err(Error::BadDiagonal { index: 0, .. })
    ));
    assert!(matches!(
        validate_gram(mk([[2, -1], [-1, 2]], 2), g, None),
        Err(Error::EntryOutOfRange { row: 0, col: 1, .. })
    ));
    assert!(matches!(
        validate_gram(mk([[1, 1], [1, 1]], 1), g, None),
        Err(Error::DuplicatePoint { row: 0, col: 1 })
    ));
    assert!(matches!(
        validate_gram(mk([[4, 1], [2, 4]], 4), g, None),
        Err(Error::NotSymmetric { row: 0, col: 1, .. })
    ));
    assert!(matches!(
        validate_gram(Matrix::identity(1), g, None),
        Err(Error::TooFewPoints(1))
    ));
    assert!(matches!(
        validate_gram(Matrix::zeros(2, 3), g, None),
        Err(Error::NotSquare { .. })
    ));
    let r2 = QuadraticNumber::new(Rational::zero(), rat(1, 4), 2).unwrap();
    let r3 = QuadraticNumber::new(Rational::zero(), rat(1, 4), 3).unwrap();
    let mixed = Matrix::from_fn(3, 3, |r, c| match (r.min(c), r.max(c)) {
        _ if r == c => one.clone(),
        (0, 1) => r2.clone(),
        _ => r3.clone(),
    });
    assert!(matches!(
        validate_gram(mixed, g, None),
        Err(Error::MixedRadicands(2, 3))
    ));
    // An entry just above 1 in Q(sqrt 2): 1/4 + (1/2)sqrt2 ~ 0.957 is fine, 1/2 + (1/2)sqrt2 is not.
    let ok = QuadraticNumber::new(rat(1, 4), rat(1, 2), 2).unwrap();
    let big = QuadraticNumber::new(rat(1, 2), rat(1, 2), 2).unwrap();
    let pair = |v: &QuadraticNumber| {
        Matrix::from_fn(2, 2, |r, c| if r == c { one.clone() } else { v.clone() })
    };
    assert!(validate_gram(pair(&ok), g, None).is_ok());
    assert!(matches!(
        validate_gram(pair(&big), g, None),
        Err(Error::EntryOutOfRange { .. })
    ));
}

#[test]
fn sic_gram_validates() {
    let d = sic(3);
    assert_eq!(d.len(), 9);
    assert_eq!(d.source(), Source::GramDirect);
    assert_eq!(angle_set(&d).angles, vec![q(rat(1, 4))]);
}

#[test]
fn points_require_rank_two() {
    let err = gram_from_sphere_points(square_points(), GeometryParams::new(3, 2).unwrap());
    assert_eq!(err.unwrap_err(), Error::PointsRequireSphere(3));
}
