//! Association-scheme view of a design: adjacency classes, the orthogonal
//! idempotent basis `L_0..L_s` of a tight design, exact ranks and the
//! rank-based rationality verdict.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::design::{angle_set, AngleProfile, AnnihilatorResult, DesignInstance};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, QuadraticNumber, Rational};
use crate::jacobi::{r_sum, renorm_q, Eps, GeometryParams};
use crate::matrix::Matrix;
use crate::rankforms::closed_form_ranks;

/// The Gram matrix split by angle. Class 0 is the identity, class `k >= 1`
/// is the graph of pairs at angle `angles[k - 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjacencyDecomposition {
    n: usize,
    angles: Vec<QuadraticNumber>,
    labels: Vec<u32>,
}

impl AdjacencyDecomposition {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn angles(&self) -> &[QuadraticNumber] {
        &self.angles
    }

    /// Class of the pair `(x, y)`: 0 on the diagonal, else `1 + ` angle index.
    pub fn label(&self, x: usize, y: usize) -> u32 {
        self.labels[x * self.n + y]
    }

    /// `D_alpha` for `alpha = angles[k]` as a 0/1 matrix.
    pub fn class_matrix(&self, k: usize) -> Matrix {
        let want = k as u32 + 1;
        Matrix::from_fn(self.n, self.n, |r, c| {
            QuadraticNumber::from(i64::from(self.label(r, c) == want))
        })
    }

    /// Number of ones in each `D_alpha` (twice the number of pairs).
    pub fn edge_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.angles.len()];
        for &l in &self.labels {
            if l > 0 {
                counts[l as usize - 1] += 1;
            }
        }
        counts
    }

    /// `I + sum_alpha alpha D_alpha`.
    pub fn reconstruct_gram(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |r, c| match self.label(r, c) {
            0 => QuadraticNumber::one(),
            l => self.angles[l as usize - 1].clone(),
        })
    }

    /// Fills an `n x n` matrix with one value per class.
    fn class_function(&self, values: &[QuadraticNumber]) -> Matrix {
        Matrix::from_fn(self.n, self.n, |r, c| {
            values[self.label(r, c) as usize].clone()
        })
    }
}

pub fn adjacency_matrices(design: &DesignInstance) -> AdjacencyDecomposition {
    decomposition_from_profile(design, &angle_set(design))
}

fn decomposition_from_profile(design: &DesignInstance, profile: &AngleProfile) -> AdjacencyDecomposition {
    let n = design.len();
    let g = design.gram();
    let mut labels = vec![0u32; n * n];
    for r in 0..n {
        for c in r + 1..n {
            let k = profile.index_of(g.get(r, c)).expect("angle set covers the gram") as u32 + 1;
            labels[r * n + c] = k;
            labels[c * n + r] = k;
        }
    }
    AdjacencyDecomposition {
        n,
        angles: profile.angles.clone(),
        labels,
    }
}

/// Intersection numbers `p[gamma][a][b]`: for any pair `(x, y)` in class
/// `gamma`, the number of `z` with `(x, z)` in class `a` and `(z, y)` in
/// class `b`. Equivalently `D_a D_b = sum_gamma p[gamma][a][b] D_gamma`.
pub type StructureConstants = Vec<Vec<Vec<u64>>>;

/// The intersection numbers, or `None` if some product `D_a D_b` is not a
/// combination of the classes (the counts differ between two pairs of the
/// same class).
///
/// One representative pair per class fixes the constants; every other pair
/// is then checked against them.
pub fn structure_constants(dec: &AdjacencyDecomposition) -> Option<StructureConstants> {
    let n = dec.n;
    let k = dec.angles.len() + 1;
    let mut table: Vec<Option<Vec<u64>>> = vec![None; k];
    let mut counts = vec![0u64; k * k];
    for x in 0..n {
        let row_x = &dec.labels[x * n..(x + 1) * n];
        for y in 0..n {
            counts.iter_mut().for_each(|c| *c = 0);
            for (z, &a) in row_x.iter().enumerate() {
                let b = dec.labels[z * n + y];
                counts[a as usize * k + b as usize] += 1;
            }
            let gamma = dec.label(x, y) as usize;
            match &table[gamma] {
                Some(expected) if expected != &counts => return None,
                Some(_) => {}
                None => table[gamma] = Some(counts.clone()),
            }
        }
    }
    Some(
        table
            .into_iter()
            .map(|t| {
                t.expect("every class occurs")
                    .chunks(k)
                    .map(<[u64]>::to_vec)
                    .collect()
            })
            .collect(),
    )
}

/// Whether the classes close under multiplication, i.e. form an
/// association scheme.
pub fn scheme_axioms_check(dec: &AdjacencyDecomposition) -> bool {
    structure_constants(dec).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// `eps = 0`: every `L_i` is `E_i`.
    AllE,
    /// `eps = 1`: `L_s = (ann - R_{s-1}^0)/|X|` replaces `E_s`.
    RepairedLs,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentBasis {
    pub mats: Vec<Matrix>,
    /// Ranks by exact elimination.
    pub ranks: Vec<usize>,
    pub construction: Construction,
}

impl IdempotentBasis {
    pub fn s(&self) -> u32 {
        self.mats.len() as u32 - 1
    }
}

/// `E_i`, entries `Q_i^0(<x, y>)/|X|`, for any design and any `i`.
pub fn naive_idempotent(design: &DesignInstance, dec: &AdjacencyDecomposition, i: u32) -> Matrix {
    let q = renorm_q(i, Eps::Zero, design.geom());
    let inv_n = int(1) / int(design.len() as i64);
    dec.class_function(&class_values(dec, |x| q.eval_quadratic(x).scale(&inv_n)))
}

/// `[f(1), f(alpha_1), ..., f(alpha_s)]`, indexed like the class labels.
fn class_values(
    dec: &AdjacencyDecomposition,
    f: impl Fn(&QuadraticNumber) -> QuadraticNumber,
) -> Vec<QuadraticNumber> {
    std::iter::once(QuadraticNumber::one())
        .chain(dec.angles.iter().cloned())
        .map(|x| f(&x))
        .collect()
}

/// The orthogonal idempotents `L_0..L_s` of a tight design, built from the
/// closed formulas and not yet verified (see [`verify_basis`]).
pub fn build_idempotents(design: &DesignInstance, ann: &AnnihilatorResult) -> Result<IdempotentBasis> {
    build_from_decomposition(design, &adjacency_matrices(design), ann)
}

pub fn build_from_decomposition(
    design: &DesignInstance,
    dec: &AdjacencyDecomposition,
    ann: &AnnihilatorResult,
) -> Result<IdempotentBasis> {
    if !ann.tight {
        return Err(Error::NotTight(format!(
            "annihilator {} differs from x^eps R(x) = {}",
            ann.ann, ann.target
        )));
    }
    let s = dec.angles.len() as u32;
    // A tight annihilator vanishes at 0 exactly when 0 is an angle.
    let eps = if ann.ann.eval(&QuadraticNumber::zero()).is_zero() {
        Eps::One
    } else {
        Eps::Zero
    };
    let geom = design.geom();
    let inv_n = int(1) / int(design.len() as i64);
    let mut mats: Vec<Matrix> = (0..s).map(|i| naive_idempotent(design, dec, i)).collect();
    let (last, construction) = match eps {
        Eps::Zero => (naive_idempotent(design, dec, s), Construction::AllE),
        Eps::One => {
            let below = r_sum(s - 1, Eps::Zero, geom);
            let values = class_values(dec, |x| {
                (&ann.ann.eval(x) - &below.eval_quadratic(x)).scale(&inv_n)
            });
            (dec.class_function(&values), Construction::RepairedLs)
        }
    };
    mats.push(last);
    let ranks = mats.iter().map(Matrix::rank).collect();
    Ok(IdempotentBasis {
        mats,
        ranks,
        construction,
    })
}

/// Outcome of the algebra axioms on a candidate basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisCheck {
    /// `L_i L_j = delta_ij L_i` for all `i, j`.
    pub orthogonal_idempotents: bool,
    /// `sum L_i = I`.
    pub resolves_identity: bool,
    pub symmetric: bool,
}

impl BasisCheck {
    pub fn holds(&self) -> bool {
        self.orthogonal_idempotents && self.resolves_identity && self.symmetric
    }
}

pub fn verify_basis(basis: &IdempotentBasis) -> BasisCheck {
    let n = basis.mats[0].rows();
    let mut orthogonal_idempotents = true;
    'outer: for (i, a) in basis.mats.iter().enumerate() {
        for (j, b) in basis.mats.iter().enumerate().skip(i) {
            let p = a.mul(b);
            let ok = if i == j { &p == a } else { p.is_zero() };
            if !ok {
                orthogonal_idempotents = false;
                break 'outer;
            }
        }
    }
    let sum = basis
        .mats
        .iter()
        .fold(Matrix::zeros(n, n), |acc, m| acc.add(m));
    BasisCheck {
        orthogonal_idempotents,
        resolves_identity: sum == Matrix::identity(n),
        symmetric: basis.mats.iter().all(Matrix::is_symmetric),
    }
}

/// The three independent rank values for one idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTriple {
    pub closed_form: Rational,
    pub trace: QuadraticNumber,
    pub elimination: usize,
}

/// Closed form, trace and elimination rank of every `L_i`; all three must
/// agree.
pub fn rank_report(
    basis: &IdempotentBasis,
    geom: &GeometryParams,
    s: u32,
    eps: Eps,
) -> Result<Vec<RankTriple>> {
    if basis.mats.len() != s as usize + 1 {
        return Err(Error::Invariant(format!(
            "basis has {} idempotents, expected {}",
            basis.mats.len(),
            s + 1
        )));
    }
    let closed = closed_form_ranks(geom, s, eps);
    let mut out = Vec::with_capacity(closed.len());
    for (index, (closed_form, m)) in closed.into_iter().zip(&basis.mats).enumerate() {
        let integral = closed_form.is_integer() && closed_form > Rational::zero();
        if !integral {
            return Err(Error::NonIntegralRank {
                index,
                value: format_rational(&closed_form),
            });
        }
        let triple = RankTriple {
            trace: m.trace(),
            elimination: basis.ranks[index],
            closed_form,
        };
        let as_quad = QuadraticNumber::from(triple.closed_form.clone());
        let elim = QuadraticNumber::from(triple.elimination as i64);
        if triple.trace != as_quad || elim != as_quad {
            return Err(Error::RankMismatch {
                index,
                closed_form: format_rational(&triple.closed_form),
                trace: triple.trace.to_string(),
                elimination: triple.elimination,
            });
        }
        out.push(triple);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalityVerdict {
    pub ranks_distinct: bool,
    pub collision_pairs: Vec<(usize, usize)>,
    /// Rank-distinctness over all of `L_0..L_s`.
    pub certified_rational: bool,
    pub observed_rational: bool,
    /// `false` only if certified but observed irrational.
    pub consistent: bool,
    /// `rank L_1` is shared with no other idempotent.
    pub first_idempotent_unique: bool,
    /// Rationality certified by `L_1` alone (or `A = {0}`).
    pub first_idempotent_certified: bool,
    pub first_idempotent_consistent: bool,
}

pub fn rationality_verdict(basis: &IdempotentBasis, profile: &AngleProfile) -> RationalityVerdict {
    let r = &basis.ranks;
    let mut collision_pairs = Vec::new();
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            if r[i] == r[j] {
                collision_pairs.push((i, j));
            }
        }
    }
    let ranks_distinct = collision_pairs.is_empty();
    let observed_rational = profile.all_rational;
    let first_idempotent_unique =
        r.len() > 1 && collision_pairs.iter().all(|&(i, j)| i != 1 && j != 1);
    let s = basis.s();
    let trivial = s == 1 && profile.eps == Eps::One;
    let l1_is_e1 = s >= 2 || profile.eps == Eps::Zero;
    let first_idempotent_certified = trivial || (l1_is_e1 && first_idempotent_unique);
    RationalityVerdict {
        certified_rational: ranks_distinct,
        consistent: !(ranks_distinct && !observed_rational),
        first_idempotent_consistent: !(first_idempotent_certified && !observed_rational),
        ranks_distinct,
        collision_pairs,
        observed_rational,
        first_idempotent_unique,
        first_idempotent_certified,
    }
}

/// Everything the scheme stage computes for a tight design.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeAnalysis {
    pub decomposition: AdjacencyDecomposition,
    pub closes: bool,
    pub basis: IdempotentBasis,
    pub check: BasisCheck,
    pub ranks: Vec<RankTriple>,
    pub verdict: RationalityVerdict,
}

/// Builds and verifies the idempotent basis. A basis failing the algebra
/// axioms is an internal error.
pub fn analyze_scheme(
    design: &DesignInstance,
    profile: &AngleProfile,
    ann: &AnnihilatorResult,
) -> Result<SchemeAnalysis> {
    let decomposition = decomposition_from_profile(design, profile);
    let basis = build_from_decomposition(design, &decomposition, ann)?;
    let check = verify_basis(&basis);
    if !check.holds() {
        return Err(Error::Invariant(format!("idempotent basis fails the algebra axioms: {check:?}")));
    }
    let ranks = rank_report(&basis, design.geom(), profile.s, profile.eps)?;
    let verdict = rationality_verdict(&basis, profile);
    Ok(SchemeAnalysis {
        closes: scheme_axioms_check(&decomposition),
        decomposition,
        basis,
        check,
        ranks,
        verdict,
    })
}
