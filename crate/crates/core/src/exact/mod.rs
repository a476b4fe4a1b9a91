//! Exact integer and rational linear algebra.
//!
//! Everything downstream (subdivisions, conormals, exponents) is decided with
//! these routines, so nothing here touches floating point. Integers are
//! [`BigInt`] and rationals are [`BigRational`], which is always kept reduced
//! with a positive denominator.

mod snf;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use snf::{smith_normal_form, SmithDecomposition};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn rat_from_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

/// Parses `"p/q"`, `"p"` or a short decimal such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Input(format!("cannot parse rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: Int = p.trim().parse().map_err(|_| bad())?;
        let q: Int = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.trim_start().starts_with('-');
        let whole: Int = if whole.is_empty() || whole == "-" || whole == "+" {
            Int::zero()
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let frac_num: Int = frac.parse().map_err(|_| bad())?;
        let den = num_traits::pow(int(10), frac.len());
        let frac = Rat::new(frac_num, den);
        let whole = rat_from_int(&whole);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    let p: Int = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(p))
}

pub fn format_rational(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac_part(r: &Rat) -> Rat {
    r - r.floor()
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Very large numerators: fall back to a scaled quotient.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat_int(a: &[Rat], b: &[Int]) -> Rat {
    a.iter()
        .zip(b)
        .fold(Rat::zero(), |acc, (x, y)| acc + x * rat_from_int(y))
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Dense integer matrix stored row-major.
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
    rank: OnceLock<usize>,
}

impl Clone for IntMatrix {
    fn clone(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
            rank: self.rank.clone(),
        }
    }
}

impl PartialEq for IntMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for IntMatrix {}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_iter()).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
            rank: OnceLock::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Rejects ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let int_rows: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| Int::from(v)).collect())
            .collect();
        Self::from_int_rows(int_rows)
    }

    pub fn from_int_rows(rows: Vec<Vec<Int>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
            rank: OnceLock::new(),
        })
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Int>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.rank = OnceLock::new();
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Int]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let cols: Vec<Vec<Int>> = idx.iter().map(|&j| self.column(j)).collect();
        Self::from_columns(self.rows, &cols)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        self.row_iter().map(|r| dot_int(r, v)).collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        self.row_iter().map(|r| dot_rat_int(v, r)).collect()
    }

    pub fn to_rat_rows(&self) -> Vec<Vec<Rat>> {
        self.row_iter()
            .map(|r| r.iter().map(rat_from_int).collect())
            .collect()
    }

    /// Rank over the rationals; cached after the first call.
    pub fn rank(&self) -> usize {
        *self.rank.get_or_init(|| rank_rat(self.to_rat_rows()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Int> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        Ok(bareiss_det(self.row_iter().map(<[Int]>::to_vec).collect()))
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        self.row_iter()
            .map(|r| r.iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }
}

fn bareiss_det(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Int::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Square rational matrix, used for inverses of integer matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: Vec<Vec<Rat>>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        RatMatrix { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn mul_int_vec(&self, v: &[Int]) -> Vec<Rat> {
        self.rows.iter().map(|r| dot_rat_int(r, v)).collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        self.rows.iter().map(|r| dot_rat(r, v)).collect()
    }

    /// Row vector times matrix: `w · M`.
    pub fn left_mul(&self, w: &[Rat]) -> Vec<Rat> {
        let ncols = self.rows.first().map_or(0, Vec::len);
        let mut out = vec![Rat::zero(); ncols];
        for (wi, row) in w.iter().zip(&self.rows) {
            if wi.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o += wi * r;
            }
        }
        out
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let sub = &f * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_rat(mut rows: Vec<Vec<Rat>>) -> usize {
    rref(&mut rows).len()
}

pub fn rank_of_columns(columns: &[&[Int]]) -> usize {
    let rows: Vec<Vec<Rat>> = columns
        .iter()
        .map(|c| c.iter().map(rat_from_int).collect())
        .collect();
    rank_rat(rows)
}

/// Basis of `{x : rows · x = 0}` over the rationals, `width` = number of unknowns.
pub fn kernel_rat(mut rows: Vec<Vec<Rat>>, width: usize) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        return (0..width)
            .map(|i| (0..width).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
    }
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); width];
            x[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -rows[r][f].clone();
            }
            x
        })
        .collect()
}

/// Inverse of a square integer matrix over the rationals.
pub fn inverse(m: &IntMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
    }
    inverse_rat(&m.to_rat_rows())
}

/// Inverse of a square rational matrix given by rows.
pub fn inverse_rat(m: &[Vec<Rat>]) -> Result<RatMatrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
    }
    if n == 0 {
        return Ok(RatMatrix::from_rows(Vec::new()));
    }
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::SingularMatrix);
    }
    Ok(RatMatrix::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect()))
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Solves `M x = b` exactly for square invertible `M`.
pub fn solve_rational(m: &IntMatrix, b: &[Rat]) -> Result<Vec<Rat>> {
    if !m.is_square() || m.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "solve: matrix {}x{}, rhs {}",
            m.rows(),
            m.cols(),
            b.len()
        )));
    }
    let n = m.rows();
    let mut aug: Vec<Vec<Rat>> = m
        .row_iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row: Vec<Rat> = r.iter().map(rat_from_int).collect();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
        return Err(Error::SingularMatrix);
    }
    Ok(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Positive rescaling of `v` to a primitive integer vector.
pub fn primitive_vector(v: &[Rat]) -> Result<Vec<Int>> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let lcm = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<Int> = v.iter().map(|x| (x * rat_from_int(&lcm)).to_integer()).collect();
    let g = scaled.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    Ok(scaled.into_iter().map(|x| x / &g).collect())
}

pub fn primitive_int_vector(v: &[Int]) -> Result<Vec<Int>> {
    let g = v.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// `[Z^d : M Z^d] = |det M|` for square nonsingular `M`.
pub fn lattice_index(m: &IntMatrix) -> Result<Int> {
    let d = m.det()?;
    if d.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(d.abs())
}

/// Primitive covector vanishing on the given columns, oriented so that its
/// pairing with `positive_on` is positive. `None` unless the columns span a
/// hyperplane.
pub fn conormal(columns: &[&[Int]], dim: usize, positive_on: Option<&[Int]>) -> Option<Vec<Int>> {
    let rows: Vec<Vec<Rat>> = columns
        .iter()
        .map(|c| c.iter().map(rat_from_int).collect())
        .collect();
    let ker = kernel_rat(rows, dim);
    if ker.len() != 1 {
        return None;
    }
    let mut nu = primitive_vector(&ker[0]).ok()?;
    if let Some(p) = positive_on {
        let s = dot_int(&nu, p);
        if s.is_negative() {
            nu.iter_mut().for_each(|x| *x = -x.clone());
        } else if s.is_zero() {
            return None;
        }
    }
    Some(nu)
}
