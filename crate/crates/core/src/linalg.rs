//! Small dense complex linear algebra.
//!
//! Matrices here are at most a few tens of rows (IRS size × antenna count),
//! so a row-major `Vec` with straightforward loops is all that is needed.
//! Vectors are plain `Vec<C<T>>`; whether one is a row or a column is
//! decided by the call site, matching the channel conventions of the model
//! (channels are row vectors, beamformers are columns).

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major data.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<C<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Stacks column vectors side by side.
    pub fn from_columns(columns: &[Vec<C<T>>]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::dimension("columns of unequal length"));
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| columns[c][r]))
    }

    pub fn filled(rows: usize, cols: usize, value: C<T>) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[C<T>] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [C<T>] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<C<T>> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn set_column(&mut self, c: usize, values: &[C<T>]) {
        debug_assert_eq!(values.len(), self.rows);
        for (r, v) in values.iter().enumerate() {
            self[(r, c)] = *v;
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// `self · x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[C<T>]) -> Result<Vec<C<T>>> {
        if x.len() != self.cols {
            return Err(Error::dimension(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), x)).collect())
    }

    /// `x · self` for a row vector `x`.
    pub fn vec_mul(&self, x: &[C<T>]) -> Result<Vec<C<T>>> {
        if x.len() != self.rows {
            return Err(Error::dimension(format!(
                "row vector of length {} times {}x{}",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![C::zero(); self.cols];
        for (r, xr) in x.iter().enumerate() {
            if xr.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(r)) {
                *o = *o + *xr * *a;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| *v * s).collect(),
        }
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(C::new(s, T::zero()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }

    pub fn frobenius_norm_sqr(&self) -> T {
        self.data.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn frobenius_norm(&self) -> T {
        self.frobenius_norm_sqr().sqrt()
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .fold(C::zero(), |a, b| a + b)
    }

    /// Largest deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Solves `self · X = B` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, b: &Self) -> Result<Self> {
        if self.rows != self.cols || b.rows != self.rows {
            return Err(Error::dimension(format!(
                "solve with {}x{} system and {}x{} rhs",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut x = b.clone();
        let scale = self
            .data
            .iter()
            .map(|v| v.norm())
            .fold(T::zero(), T::max)
            .max(T::min_positive_value());
        let tiny = scale * T::epsilon() * T::lit(n.max(1) as f64);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&p, &q| {
                    a[(p, col)]
                        .norm()
                        .partial_cmp(&a[(q, col)].norm())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("non-empty pivot range");
            if !(a[(pivot, col)].norm() > tiny) {
                return Err(Error::Singular);
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                x.swap_rows(pivot, col);
            }
            let inv = a[(col, col)].inv();
            for r in col + 1..n {
                let factor = a[(r, col)] * inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    a[(r, c)] = a[(r, c)] - factor * a[(col, c)];
                }
                for c in 0..x.cols {
                    x[(r, c)] = x[(r, c)] - factor * x[(col, c)];
                }
            }
        }
        for col in (0..n).rev() {
            let inv = a[(col, col)].inv();
            for c in 0..x.cols {
                let mut acc = x[(col, c)];
                for k in col + 1..n {
                    acc = acc - a[(col, k)] * x[(k, c)];
                }
                x[(col, c)] = acc * inv;
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.solve(&Self::identity(self.rows))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C<T> {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C<T> {
        &mut self.data[r * self.cols + c]
    }
}

/// Unconjugated product `Σ a_i b_i` (row times column).
#[inline]
pub fn dot<T: Real>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(C::zero(), |acc, (x, y)| acc + *x * *y)
}

#[inline]
pub fn norm_sqr<T: Real>(a: &[C<T>]) -> T {
    a.iter().map(|v| v.norm_sqr()).sum()
}

pub fn add<T: Real>(a: &[C<T>], b: &[C<T>]) -> Vec<C<T>> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

pub fn sub<T: Real>(a: &[C<T>], b: &[C<T>]) -> Vec<C<T>> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| *x - *y).collect()
}

pub fn scale<T: Real>(a: &[C<T>], s: C<T>) -> Vec<C<T>> {
    a.iter().map(|x| *x * s).collect()
}

pub fn conj<T: Real>(a: &[C<T>]) -> Vec<C<T>> {
    a.iter().map(|x| x.conj()).collect()
}
