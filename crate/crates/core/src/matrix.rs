//! Dense matrices over a real quadratic field.
//!
//! Products and ranks of rational matrices run through scaled `i128`
//! integer kernels when the entries are small enough that no intermediate
//! value can overflow; otherwise they fall back to exact field arithmetic.
//! Both routes are exact and return identical results.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::{QuadraticNumber, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<QuadraticNumber>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<QuadraticNumber>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> QuadraticNumber) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![QuadraticNumber::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                QuadraticNumber::one()
            } else {
                QuadraticNumber::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &QuadraticNumber {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: QuadraticNumber) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[QuadraticNumber] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[QuadraticNumber] {
        &self.data
    }

    /// Radicand shared by the irrational entries, if any.
    pub fn radicand(&self) -> Option<u64> {
        self.data.iter().find_map(QuadraticNumber::radicand)
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(QuadraticNumber::is_rational)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn trace(&self) -> QuadraticNumber {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Self::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Self::new(self.rows, self.cols, data)
    }

    pub fn scale(&self, k: &QuadraticNumber) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(|a| a * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix dimensions do not chain");
        if let (Some(a), Some(b)) = (ScaledInts::from_matrix(self), ScaledInts::from_matrix(rhs)) {
            if let Some(product) = a.mul(&b, self.rows, self.cols, rhs.cols) {
                return product;
            }
        }
        self.mul_field(rhs)
    }

    /// Schoolbook product in field arithmetic.
    pub fn mul_field(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix dimensions do not chain");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination; the pivot is the first nonzero entry
    /// of the current column among the unreduced rows.
    pub fn rank(&self) -> usize {
        if self.is_rational() {
            if let Some(r) = rank_scaled_rational(self) {
                return r;
            }
        }
        self.rank_field()
    }

    /// Rank by elimination in field arithmetic (no integer fast path).
    pub fn rank_field(&self) -> usize {
        let mut rows: Vec<Vec<QuadraticNumber>> =
            (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = rows[rank][col]
                .checked_inv()
                .expect("pivot is nonzero");
            let pivot: Vec<QuadraticNumber> = rows[rank].iter().map(|v| v * &inv).collect();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for c in col..self.cols {
                    if !pivot[c].is_zero() {
                        row[c] -= &(&f * &pivot[c]);
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}

/// `(a + b sqrt m) / denom` with integer matrices `a`, `b`.
struct ScaledInts {
    denom: BigInt,
    a: Vec<i128>,
    b: Option<Vec<i128>>,
    m: i128,
    max_abs: u128,
}

impl ScaledInts {
    fn from_matrix(mat: &Matrix) -> Option<Self> {
        let mut denom = BigInt::one();
        for v in &mat.data {
            denom = denom.lcm(v.rational_part().denom());
            denom = denom.lcm(v.irrational_part().denom());
        }
        let to_int = |x: &Rational| -> Option<i128> {
            (x.numer() * (&denom / x.denom())).to_i128()
        };
        let a: Vec<i128> = mat.data.iter().map(|v| to_int(v.rational_part())).collect::<Option<_>>()?;
        let b = if mat.is_rational() {
            None
        } else {
            Some(
                mat.data
                    .iter()
                    .map(|v| to_int(v.irrational_part()))
                    .collect::<Option<Vec<_>>>()?,
            )
        };
        let max_abs = a
            .iter()
            .chain(b.iter().flatten())
            .map(|x| x.unsigned_abs())
            .max()
            .unwrap_or(0);
        let m = mat.radicand().map_or(1, i128::from);
        Some(Self { denom, a, b, m, max_abs })
    }

    fn mul(&self, rhs: &Self, n: usize, k: usize, p: usize) -> Option<Matrix> {
        if self.b.is_some() && rhs.b.is_some() && self.m != rhs.m {
            return None;
        }
        let m = self.m.max(rhs.m);
        // Every output accumulator is a sum of at most 2k products.
        let bound = BigInt::from(self.max_abs)
            * BigInt::from(rhs.max_abs)
            * BigInt::from(2 * k as u64 + 1)
            * BigInt::from(m);
        if bound.bits() > 125 {
            return None;
        }
        let zeros = vec![0i128; self.a.len().max(rhs.a.len())];
        let sb = self.b.as_deref().unwrap_or(&zeros[..self.a.len()]);
        let rb = rhs.b.as_deref().unwrap_or(&zeros[..rhs.a.len()]);
        let has_b = self.b.is_some() || rhs.b.is_some();
        let mut out_a = vec![0i128; n * p];
        let mut out_b = vec![0i128; if has_b { n * p } else { 0 }];
        for i in 0..n {
            for t in 0..k {
                let (x, y) = (self.a[i * k + t], sb[i * k + t]);
                if x == 0 && y == 0 {
                    continue;
                }
                let ra = &rhs.a[t * p..(t + 1) * p];
                let row_a = &mut out_a[i * p..(i + 1) * p];
                for (o, &u) in row_a.iter_mut().zip(ra) {
                    *o += x * u;
                }
                if has_b {
                    let rbr = &rb[t * p..(t + 1) * p];
                    let row_a = &mut out_a[i * p..(i + 1) * p];
                    for (o, &v) in row_a.iter_mut().zip(rbr) {
                        *o += m * y * v;
                    }
                    let row_b = &mut out_b[i * p..(i + 1) * p];
                    for j in 0..p {
                        row_b[j] += x * rbr[j] + y * ra[j];
                    }
                }
            }
        }
        let denom = &self.denom * &rhs.denom;
        let radicand = m as u64;
        let data = (0..n * p)
            .map(|idx| {
                let a = Rational::new(BigInt::from(out_a[idx]), denom.clone());
                if has_b && out_b[idx] != 0 {
                    let b = Rational::new(BigInt::from(out_b[idx]), denom.clone());
                    QuadraticNumber::new(a, b, radicand).expect("radicand validated on input")
                } else {
                    QuadraticNumber::from_rational(a)
                }
            })
            .collect();
        Some(Matrix::new(n, p, data))
    }
}

/// Rank of a rational matrix by fraction-free elimination on primitive
/// integer rows (each row scaled to integers, content divided out after
/// every update). Returns `None` if an intermediate value would leave
/// `i128`, in which case the caller falls back to field arithmetic.
fn rank_scaled_rational(mat: &Matrix) -> Option<usize> {
    let mut rows: Vec<Vec<i128>> = Vec::with_capacity(mat.rows);
    for r in 0..mat.rows {
        let entries = mat.row(r);
        let denom = entries
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.rational_part().denom()));
        let row = entries
            .iter()
            .map(|v| {
                let x = v.rational_part();
                (x.numer() * (&denom / x.denom())).to_i128()
            })
            .collect::<Option<Vec<_>>>()?;
        rows.push(make_primitive(row));
    }
    let cols = mat.cols;
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        let pv = pivot[col];
        for row in tail.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let g = gcd_i128(pv, f);
            let (sp, sf) = (pv / g, f / g);
            for c in col..cols {
                let lhs = row[c].checked_mul(sp)?;
                let rhs = pivot[c].checked_mul(sf)?;
                row[c] = lhs.checked_sub(rhs)?;
            }
            *row = make_primitive(std::mem::take(row));
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Some(rank)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1) as i128
}

fn make_primitive(mut row: Vec<i128>) -> Vec<i128> {
    let g = row.iter().fold(0i128, |acc, &x| if acc == 0 { x.abs() } else { gcd_i128(acc, x) });
    if g > 1 {
        row.iter_mut().for_each(|x| *x /= g);
    }
    row
}

/// Converts a rational value to a nonnegative integer count, if it is one.
pub fn as_count(x: &QuadraticNumber) -> Option<usize> {
    let r = x.to_rational()?;
    if !r.is_integer() || r.is_negative() {
        return None;
    }
    r.to_integer().to_usize()
}
