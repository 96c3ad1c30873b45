//! JSON design files.
//!
//! ```text
//! { "geometry": {"rank": R, "degree": D},
//!   "radicand": m,                 (optional)
//!   "points": [[entry, ...], ...]  (rank 2 only)
//!   "gram":   [[entry, ...], ...] }
//! ```
//!
//! Exactly one of `points` and `gram` is present. An entry is `"p/q"` or
//! `{"a": "p/q", "b": "p/q"}` meaning `a + b sqrt(m)`.

use std::fs;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{gram_from_sphere_points, validate_gram, DesignInstance, Source};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, QuadraticNumber};
use crate::jacobi::GeometryParams;
use crate::matrix::Matrix;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometrySpec {
    rank: u32,
    degree: u32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Plain(String),
    Quadratic { a: String, b: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DesignFile {
    geometry: GeometrySpec,
    #[serde(default)]
    radicand: Option<u64>,
    #[serde(default)]
    points: Option<Vec<Vec<Entry>>>,
    #[serde(default)]
    gram: Option<Vec<Vec<Entry>>>,
}

fn parse_entry(entry: &Entry, radicand: Option<u64>, location: impl Fn() -> String) -> Result<QuadraticNumber> {
    match entry {
        Entry::Plain(s) => Ok(QuadraticNumber::from_rational(parse_rational(s)?)),
        Entry::Quadratic { a, b } => {
            let (a, b) = (parse_rational(a)?, parse_rational(b)?);
            if b.is_zero() {
                return Ok(QuadraticNumber::from_rational(a));
            }
            match radicand {
                Some(m) => QuadraticNumber::new(a, b, m),
                None => Err(Error::MissingRadicand {
                    location: location(),
                }),
            }
        }
    }
}

fn parse_rows(
    rows: &[Vec<Entry>],
    radicand: Option<u64>,
    what: &str,
) -> Result<Vec<Vec<QuadraticNumber>>> {
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, e)| parse_entry(e, radicand, || format!("{what}[{r}][{c}]")))
                .collect()
        })
        .collect()
}

/// Parses and validates a design from JSON text.
pub fn parse_design(text: &str) -> Result<DesignInstance> {
    let file: DesignFile =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let geom = GeometryParams::new(file.geometry.rank, file.geometry.degree)?;
    if let Some(m) = file.radicand {
        // Validates the radicand even when every entry is rational.
        QuadraticNumber::new(Zero::zero(), num_traits::One::one(), m)?;
    }
    match (file.points, file.gram) {
        (Some(points), None) => {
            if !geom.is_sphere() {
                return Err(Error::PointsRequireSphere(geom.rho()));
            }
            let points = parse_rows(&points, file.radicand, "points")?;
            let mut design = gram_from_sphere_points(points, geom)?;
            design.radicand = design.radicand.or(file.radicand);
            Ok(design)
        }
        (None, Some(gram)) => {
            let rows = parse_rows(&gram, file.radicand, "gram")?;
            let n = rows.len();
            if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
                return Err(Error::NotSquare {
                    rows: n,
                    row,
                    len: r.len(),
                });
            }
            let data = rows.into_iter().flatten().collect();
            validate_gram(Matrix::new(n, n, data), geom, file.radicand)
        }
        (Some(_), Some(_)) => Err(Error::Format("both \"points\" and \"gram\" given".into())),
        (None, None) => Err(Error::Format("one of \"points\" or \"gram\" is required".into())),
    }
}

pub fn read_design_file(path: impl AsRef<Path>) -> Result<DesignInstance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    parse_design(&text)
}

fn entry_json(v: &QuadraticNumber) -> String {
    let entry = if v.is_rational() {
        Entry::Plain(format_rational(v.rational_part()))
    } else {
        Entry::Quadratic {
            a: format_rational(v.rational_part()),
            b: format_rational(v.irrational_part()),
        }
    };
    serde_json::to_string(&entry).expect("entries serialize")
}

fn rows_json(rows: impl Iterator<Item = Vec<String>>) -> String {
    let lines: Vec<String> = rows.map(|r| format!("    [{}]", r.join(", "))).collect();
    format!("[\n{}\n  ]", lines.join(",\n"))
}

/// Canonical JSON text: coordinates for sphere-point designs, otherwise the
/// Gram matrix. One matrix row per line.
pub fn design_to_json(design: &DesignInstance) -> String {
    let geom = design.geom();
    let mut out = format!(
        "{{\n  \"geometry\": {{\"rank\": {}, \"degree\": {}}},\n",
        geom.rho(),
        geom.degree()
    );
    if let Some(m) = design.radicand() {
        out += &format!("  \"radicand\": {m},\n");
    }
    match (design.source(), design.points()) {
        (Source::SpherePoints, Some(points)) => {
            let rows = points.iter().map(|p| p.iter().map(entry_json).collect());
            out += &format!("  \"points\": {}\n", rows_json(rows));
        }
        _ => {
            let g = design.gram();
            let rows = (0..g.rows()).map(|r| g.row(r).iter().map(entry_json).collect());
            out += &format!("  \"gram\": {}\n", rows_json(rows));
        }
    }
    out.push_str("}\n");
    out
}

pub fn write_design_file(design: &DesignInstance, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, design_to_json(design))
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}
