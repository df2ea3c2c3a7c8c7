//! Dense row-major matrices over an exact-or-floating scalar.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Dimension("matrix has no rows".into()));
        }
        let c = rows[0].len();
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// All-ones square matrix (e eᵀ).
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, n, |_, _| T::one())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() * factor.clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    /// A·v for a column vector v.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn min_entry(&self) -> T {
        self.data
            .iter()
            .cloned()
            .reduce(|a, b| if b < a { b } else { a })
            .expect("empty matrix")
    }

    /// Max |entry| (infinity norm of the flattened matrix).
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|v| v.abs().to_f64())
            .fold(0.0, f64::max)
    }

    /// Infinity operator norm: max row sum of absolute values.
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs().to_f64()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Max |a_ij - a_ji| over all pairs.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let d = (self[(i, j)].clone() - self[(j, i)].clone()).abs().to_f64();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if !self[(i, j)].close_to(&self[(j, i)], tol) {
                    return false;
                }
            }
        }
        true
    }

    /// Exact determinant by fraction-free-ish Gaussian elimination over a
    /// field; used for small Gram determinants and rank probes.
    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero());
            let Some(p) = pivot else {
                return T::zero();
            };
            if p != col {
                for j in 0..n {
                    let tmp = a[(p, j)].clone();
                    a[(p, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                }
                det = -det;
            }
            let d = a[(col, col)].clone();
            det = det * d.clone();
            for r in (col + 1)..n {
                let factor = a[(r, col)].clone() / d.clone();
                for j in col..n {
                    let s = a[(col, j)].clone() * factor.clone();
                    a[(r, j)] = a[(r, j)].clone() - s;
                }
            }
        }
        det
    }

    /// Block-diagonal concatenation.
    pub fn block_diag(blocks: &[&Matrix<T>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.nrows()).sum();
        let m: usize = blocks.iter().map(|b| b.ncols()).sum();
        let mut out = Self::zeros(n, m);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    out[(ro + i, co + j)] = b[(i, j)].clone();
                }
            }
            ro += b.nrows();
            co += b.ncols();
        }
        out
    }

    /// Copy `block` into self with its (0,0) at (row, col).
    pub fn set_block(&mut self, row: usize, col: usize, block: &Matrix<T>) {
        for i in 0..block.nrows() {
            for j in 0..block.ncols() {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix::from_fn(self.rows, self.cols, |i, j| f(&self[(i, j)]))
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn entrywise_close(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(other.data.iter())
                .all(|(a, b)| a.close_to(b, tol))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A matrix whose arithmetic domain is chosen at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Exact(Matrix<Rat>),
    Float(Matrix<f64>),
}

impl AnyMatrix {
    pub fn nrows(&self) -> usize {
        match self {
            AnyMatrix::Exact(m) => m.nrows(),
            AnyMatrix::Float(m) => m.nrows(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AnyMatrix::Exact(_))
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        match self {
            AnyMatrix::Exact(m) => m.to_f64(),
            AnyMatrix::Float(m) => m.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&Matrix<Rat>> {
        match self {
            AnyMatrix::Exact(m) => Some(m),
            AnyMatrix::Float(_) => None,
        }
    }
}

/// Convenience constructor for integer-valued test fixtures.
pub fn mat_i64<T: Scalar>(rows: &[&[i64]]) -> Matrix<T> {
    Matrix::from_fn(rows.len(), rows[0].len(), |i, j| T::from_int(rows[i][j]))
}
