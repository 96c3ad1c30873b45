//! Serializable report model. JSON is the canonical form; the text output
//! is rendered from the same structs.

use std::fmt::Write as _;

use angleset_core::design::{DesignAnalysis, DesignInstance};
use angleset_core::exactnum::{format_rational, QuadraticNumber, Rational};
use angleset_core::jacobi::{Eps, GeometryParams};
use angleset_core::poly::{QuadPolynomial, RationalPolynomial};
use angleset_core::rankforms::{CellClass, RankProfile, ScanCell, ScanResult, ScanSummary};
use angleset_core::scheme::{BasisCheck, Construction, RationalityVerdict, SchemeAnalysis};
use serde::Serialize;

/// An exact number: `"p/q"` when rational, else `{"a": .., "b": ..}` over
/// the report's radicand.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Exact {
    Rational(String),
    Quadratic { a: String, b: String },
}

impl Exact {
    fn text(&self, radicand: Option<u64>) -> String {
        match self {
            Exact::Rational(s) => s.clone(),
            Exact::Quadratic { a, b } => {
                let m = radicand.unwrap_or_default();
                format!("{a} + ({b})*sqrt({m})")
            }
        }
    }
}

impl From<&QuadraticNumber> for Exact {
    fn from(v: &QuadraticNumber) -> Self {
        if v.is_rational() {
            Exact::Rational(format_rational(v.rational_part()))
        } else {
            Exact::Quadratic {
                a: format_rational(v.rational_part()),
                b: format_rational(v.irrational_part()),
            }
        }
    }
}

impl From<&Rational> for Exact {
    fn from(v: &Rational) -> Self {
        Exact::Rational(format_rational(v))
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Geometry {
    pub rank: u32,
    pub degree: u32,
}

impl From<&GeometryParams> for Geometry {
    fn from(g: &GeometryParams) -> Self {
        Self {
            rank: g.rho(),
            degree: g.degree(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolynomialReport {
    pub text: String,
    /// Ascending powers.
    pub coefficients: Vec<Exact>,
}

impl From<&QuadPolynomial> for PolynomialReport {
    fn from(p: &QuadPolynomial) -> Self {
        Self {
            text: p.to_string(),
            coefficients: p.coeffs().iter().map(Exact::from).collect(),
        }
    }
}

impl From<&RationalPolynomial> for PolynomialReport {
    fn from(p: &RationalPolynomial) -> Self {
        Self {
            text: p.to_string(),
            coefficients: p.coeffs().iter().map(Exact::from).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AngleReport {
    pub value: Exact,
    /// Unordered pairs of points at this angle.
    pub pairs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub angle: Exact,
    /// Ones in the adjacency matrix.
    pub edges: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankTripleReport {
    pub index: usize,
    pub closed_form: String,
    pub trace: Exact,
    pub elimination: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemeReport {
    pub classes: Vec<ClassReport>,
    pub closes: bool,
    pub construction: Construction,
    pub axioms: BasisCheck,
    pub ranks: Vec<RankTripleReport>,
    pub verdict: RationalityVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub geometry: Geometry,
    pub radicand: Option<u64>,
    pub cardinality: usize,
    pub angles: Vec<AngleReport>,
    pub s: u32,
    pub eps: Eps,
    pub strength: u32,
    pub strength_bound: u32,
    pub tight: bool,
    pub cardinality_bound: String,
    pub annihilator: PolynomialReport,
    pub tight_target: PolynomialReport,
    pub indicator: Vec<Exact>,
    /// Observed: every angle is rational.
    pub rational: bool,
    pub scheme: Option<SchemeReport>,
}

impl AnalysisReport {
    pub fn new(design: &DesignInstance, a: &DesignAnalysis, scheme: Option<&SchemeAnalysis>) -> Self {
        let p = &a.profile;
        Self {
            geometry: design.geom().into(),
            radicand: design.radicand(),
            cardinality: design.len(),
            angles: p
                .angles
                .iter()
                .zip(&p.pair_counts)
                .map(|(v, &pairs)| AngleReport {
                    value: v.into(),
                    pairs,
                })
                .collect(),
            s: p.s,
            eps: p.eps,
            strength: a.tightness.strength,
            strength_bound: a.tightness.strength_bound,
            tight: a.tightness.tight,
            cardinality_bound: format_rational(&a.tightness.cardinality_bound),
            annihilator: (&a.annihilator.ann).into(),
            tight_target: (&a.annihilator.target).into(),
            indicator: a.annihilator.indicator.iter().map(Exact::from).collect(),
            rational: p.all_rational,
            scheme: scheme.map(scheme_report),
        }
    }

    pub fn to_text(&self) -> String {
        let m = self.radicand;
        let mut out = String::new();
        let _ = writeln!(out, "geometry      rank {} degree {}", self.geometry.rank, self.geometry.degree);
        if let Some(m) = m {
            let _ = writeln!(out, "field         Q(sqrt({m}))");
        }
        let _ = writeln!(out, "points        {}", self.cardinality);
        let _ = writeln!(out, "angles        s = {}, eps = {}", self.s, self.eps.value());
        for a in &self.angles {
            let _ = writeln!(out, "  {:<28} {} pairs", a.value.text(m), a.pairs);
        }
        let _ = writeln!(out, "strength      t = {} (bound 2s - eps = {})", self.strength, self.strength_bound);
        let _ = writeln!(out, "annihilator   {}", self.annihilator.text);
        let _ = writeln!(out, "tight target  {}", self.tight_target.text);
        let ind: Vec<String> = self.indicator.iter().map(|e| e.text(m)).collect();
        let _ = writeln!(out, "indicator     [{}]", ind.join(", "));
        let _ = writeln!(
            out,
            "tight         {} (|X| = {}, bound {})",
            self.tight, self.cardinality, self.cardinality_bound
        );
        let _ = writeln!(out, "rational      {} (observed)", self.rational);
        if let Some(s) = &self.scheme {
            s.render(&mut out, m);
        }
        out
    }
}

fn scheme_report(s: &SchemeAnalysis) -> SchemeReport {
    SchemeReport {
        classes: s
            .decomposition
            .angles()
            .iter()
            .zip(s.decomposition.edge_counts())
            .map(|(a, edges)| ClassReport {
                angle: a.into(),
                edges,
            })
            .collect(),
        closes: s.closes,
        construction: s.basis.construction,
        axioms: s.check.clone(),
        ranks: s
            .ranks
            .iter()
            .enumerate()
            .map(|(index, t)| RankTripleReport {
                index,
                closed_form: format_rational(&t.closed_form),
                trace: (&t.trace).into(),
                elimination: t.elimination,
            })
            .collect(),
        verdict: s.verdict.clone(),
    }
}

impl SchemeReport {
    fn render(&self, out: &mut String, m: Option<u64>) {
        let _ = writeln!(out, "scheme        closes = {}", self.closes);
        for c in &self.classes {
            let _ = writeln!(out, "  D[{}] has {} ones", c.angle.text(m), c.edges);
        }
        let construction = match self.construction {
            Construction::AllE => "L_i = E_i",
            Construction::RepairedLs => "L_i = E_i for i < s, repaired L_s",
        };
        let _ = writeln!(out, "idempotents   {construction}");
        let _ = writeln!(
            out,
            "  L_i L_j = delta L_i: {}, sum = I: {}, symmetric: {}",
            self.axioms.orthogonal_idempotents, self.axioms.resolves_identity, self.axioms.symmetric
        );
        let _ = writeln!(out, "ranks         closed / trace / elimination");
        for r in &self.ranks {
            let _ = writeln!(
                out,
                "  L_{:<3} {} / {} / {}",
                r.index,
                r.closed_form,
                r.trace.text(m),
                r.elimination
            );
        }
        let v = &self.verdict;
        let _ = writeln!(out, "verdict       ranks distinct: {}", v.ranks_distinct);
        if !v.collision_pairs.is_empty() {
            let _ = writeln!(out, "  collisions {}", pairs_text(&v.collision_pairs));
        }
        let _ = writeln!(out, "  certified rational (all ranks distinct): {}", v.certified_rational);
        let _ = writeln!(
            out,
            "  certified rational (rank of L_1 unique): {}",
            v.first_idempotent_certified
        );
        let _ = writeln!(out, "  observed rational: {}", v.observed_rational);
        let _ = writeln!(out, "  consistent: {}", v.consistent && v.first_idempotent_consistent);
    }
}

fn pairs_text(pairs: &[(usize, usize)]) -> String {
    let parts: Vec<String> = pairs.iter().map(|(i, j)| format!("({i},{j})")).collect();
    parts.join(" ")
}

#[derive(Clone, Debug, Serialize)]
pub struct RanksReport {
    pub geometry: Geometry,
    pub s: u32,
    pub eps: Eps,
    pub ranks: Vec<String>,
    pub collisions: Vec<(usize, usize)>,
    pub nonintegral: Vec<usize>,
    pub ranks_distinct: bool,
    pub first_idempotent_unique: bool,
    pub first_idempotent_certified: bool,
}

impl From<&RankProfile> for RanksReport {
    fn from(p: &RankProfile) -> Self {
        Self {
            geometry: (&p.geom).into(),
            s: p.s,
            eps: p.eps,
            ranks: p.ranks.iter().map(format_rational).collect(),
            collisions: p.collisions.clone(),
            nonintegral: p.nonintegral.clone(),
            ranks_distinct: p.ranks_distinct(),
            first_idempotent_unique: p.first_idempotent_unique,
            first_idempotent_certified: p.rationality_certified(),
        }
    }
}

impl RanksReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "rank {} degree {} s = {} eps = {}\nranks [{}]\n",
            self.geometry.rank,
            self.geometry.degree,
            self.s,
            self.eps.value(),
            self.ranks.join(", ")
        );
        if self.collisions.is_empty() {
            out += "collisions none\n";
        } else {
            out += &format!("collisions {}\n", pairs_text(&self.collisions));
        }
        if !self.nonintegral.is_empty() {
            let idx: Vec<String> = self.nonintegral.iter().map(ToString::to_string).collect();
            out += &format!("non-integral ranks at {} (no tight design)\n", idx.join(", "));
        }
        out += &format!(
            "ranks distinct {}\nrank of L_1 unique {}\nrationality certified {}\n",
            self.ranks_distinct, self.first_idempotent_unique, self.first_idempotent_certified
        );
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub degrees: Vec<u32>,
    pub max_rank: u32,
    pub max_s: u32,
    pub cells: Vec<ScanCell>,
    pub summary: ScanSummary,
    /// `[rho, d, s, eps]` of every cell with a rank collision.
    pub exceptions: Vec<[u32; 4]>,
}

impl ScanReport {
    pub fn new(degrees: Vec<u32>, max_rank: u32, max_s: u32, scan: ScanResult) -> Self {
        let exceptions = scan
            .exceptions_found()
            .map(|c| [c.rho, c.degree, c.s, c.eps.value()])
            .collect();
        Self {
            degrees,
            max_rank,
            max_s,
            cells: scan.cells,
            summary: scan.summary,
            exceptions,
        }
    }

    pub fn to_text(&self) -> String {
        let s = &self.summary;
        let degrees: Vec<String> = self.degrees.iter().map(ToString::to_string).collect();
        let mut out = format!(
            "degrees {{{}}}, rank <= {}, s <= {}\ncells {}\ncells with rank collisions {}\n  circle {}\n  icosahedral {}\n  antipodal pair {}\n  other {}\nnot certified even by L_1 {}\n",
            degrees.join(","),
            self.max_rank,
            self.max_s,
            s.cells,
            s.collision_cells,
            s.circle,
            s.icosahedral,
            s.antipodal_pair,
            s.other,
            s.uncertified
        );
        for c in self
            .cells
            .iter()
            .filter(|c| !matches!(c.class, CellClass::Distinct | CellClass::Circle))
        {
            let _ = writeln!(
                out,
                "  ({}, {}) s = {} eps = {}: {} {}{}",
                c.rho,
                c.degree,
                c.s,
                c.eps.value(),
                c.class.as_str(),
                pairs_text(&c.collisions),
                if c.certified_rational { "" } else { " (uncertified)" }
            );
        }
        out
    }
}
