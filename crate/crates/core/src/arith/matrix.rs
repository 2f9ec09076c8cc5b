//! Dense exact matrices: rank, canonical kernel, span membership, solving.
//!
//! All-rational matrices are ranked by fraction-free (Bareiss) elimination
//! over the integers. Anything involving residues goes through plain
//! Gaussian elimination whose pivot tests may split the modulus.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::qpoly::QPoly;
use super::rational::{clear_denominators, Rational};
use super::scalar::Scalar;
use super::ArithError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, ArithError> {
        if entries.len() != rows * cols {
            return Err(ArithError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Scalar>]) -> Result<Self, ArithError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ArithError::Shape("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn from_rational_rows(rows: &[Vec<Rational>]) -> Result<Self, ArithError> {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().cloned().map(Scalar::Rat).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, ArithError> {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_i64(v)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(Scalar::is_rational)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    fn rational_rows(&self) -> Option<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|s| s.as_rational().cloned()).collect())
            .collect()
    }
}

/// Rank by fraction-free elimination on an integer matrix. Pivot rule:
/// first row holding a nonzero entry in the leftmost unprocessed column.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in col + 1..cols {
                let v = &a[r][col] * &a[i][j] - &a[i][col] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form. Returns the reduced nonzero rows and their
/// pivot columns, in column order.
pub fn rref(m: &ExactMatrix) -> Result<(Vec<Vec<Scalar>>, Vec<usize>), ArithError> {
    let mut a = m.row_vecs();
    let rows = m.rows;
    let cols = m.cols;
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let mut found = None;
        for i in r..rows {
            if !a[i][col].is_zero()? {
                found = Some(i);
                break;
            }
        }
        let Some(p) = found else { continue };
        a.swap(r, p);
        let inv = a[r][col].inv()?;
        for j in col..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..rows {
            if i == r || a[i][col].is_trivially_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in col..cols {
                a[i][j] = &a[i][j] - &(&f * &a[r][j]);
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    Ok((a, pivots))
}

/// Rank over the fraction field of the entries.
pub fn matrix_rank(m: &ExactMatrix) -> Result<usize, ArithError> {
    if let Some(rows) = m.rational_rows() {
        let ints = rows.iter().map(|r| clear_denominators(r)).collect();
        return Ok(bareiss_rank(ints));
    }
    Ok(rref(m)?.1.len())
}

/// Canonical right-kernel basis: one vector per free column (in column
/// order) with that free variable set to 1 and the other free variables 0.
pub fn kernel_basis(m: &ExactMatrix) -> Result<Vec<Vec<Scalar>>, ArithError> {
    let (red, pivots) = rref(m)?;
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); m.cols];
        v[free] = Scalar::one();
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Whether `v` lies in the span of `basis` (all vectors the same length).
pub fn span_contains(basis: &[Vec<Scalar>], v: &[Scalar]) -> Result<bool, ArithError> {
    if basis.iter().any(|b| b.len() != v.len()) {
        return Err(ArithError::Shape("vectors of unequal length".into()));
    }
    if v.iter().all(Scalar::is_trivially_zero) {
        return Ok(true);
    }
    if basis.is_empty() {
        return Ok(false);
    }
    let base = ExactMatrix::from_rows(basis)?;
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    let ext = ExactMatrix::from_rows(&ext)?;
    Ok(matrix_rank(&base)? == matrix_rank(&ext)?)
}

/// Rank of a list of row vectors.
pub fn vectors_rank(vectors: &[Vec<Scalar>]) -> Result<usize, ArithError> {
    if vectors.is_empty() {
        return Ok(0);
    }
    matrix_rank(&ExactMatrix::from_rows(vectors)?)
}

/// Some solution of `a x = b`, or `None` if the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(a: &ExactMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, ArithError> {
    if b.len() != a.rows {
        return Err(ArithError::Shape("right-hand side length".into()));
    }
    let aug: Vec<Vec<Scalar>> = (0..a.rows)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&ExactMatrix::from_rows(&aug)?)?;
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![Scalar::zero(); a.cols];
    for (row, &pc) in red.iter().zip(&pivots) {
        x[pc] = row[a.cols].clone();
    }
    Ok(Some(x))
}

/// Determinant of a square matrix over `Q[t]` by Bareiss elimination.
pub fn qpoly_det(mut a: Vec<Vec<QPoly>>) -> QPoly {
    let n = a.len();
    if n == 0 {
        return QPoly::one();
    }
    let mut prev = QPoly::one();
    let mut sign = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return QPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    if sign {
        prev.neg()
    } else {
        prev
    }
}

/// Rank over the rational function field `Q(t)` of a matrix of polynomials.
pub fn qpoly_rank(mut a: Vec<Vec<QPoly>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = QPoly::one();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in col + 1..cols {
                let v = a[r][col].mul(&a[i][j]).sub(&a[i][col].mul(&a[r][j]));
                a[i][j] = v.exact_div(&prev);
            }
            a[i][col] = QPoly::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}
