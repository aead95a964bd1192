//! Dense matrices over a [`Scalar`] backend.
//!
//! Matrices are stored row-major. The public domain objects are square, but
//! elimination and rank factorization produce rectangular intermediates, so
//! the type itself allows any shape.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Scalar, Tolerance};
use num_complex::Complex64;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Exact-backend matrix.
pub type ExactMatrix = Matrix<GaussianRational>;
/// Float-backend matrix.
pub type FloatMatrix = Matrix<Complex64>;

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: alloc::vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::RaggedRows);
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Square matrix from small integers, row-major. Panics if `entries` is
    /// not `n*n` long.
    pub fn from_i64(n: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), n * n, "expected {} entries", n * n);
        Matrix { rows: n, cols: n, data: entries.iter().map(|&v| S::from_i64(v)).collect() }
    }

    pub fn diag(values: &[S]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    /// `n×n` upper shift with `weights[i]` at `(i, i+1)`; `weights.len() == n - 1`.
    pub fn weighted_shift(n: usize, weights: &[S]) -> Self {
        assert_eq!(weights.len() + 1, n.max(1), "shift of size {n} takes {} weights", n.saturating_sub(1));
        let mut m = Self::zeros(n, n);
        for (i, w) in weights.iter().enumerate() {
            m[(i, i + 1)] = w.clone();
        }
        m
    }

    /// Superdiagonal-ones nilpotent shift `J_n`.
    pub fn shift(n: usize) -> Self {
        Self::weighted_shift(n, &alloc::vec![S::one(); n.saturating_sub(1)])
    }

    /// Matrix unit `e_ij` (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = S::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Side length; only meaningful for square matrices.
    pub fn dim(&self) -> usize {
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&S> {
        (i < self.rows && j < self.cols).then(|| &self.data[i * self.cols + j])
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_float(&self) -> FloatMatrix {
        self.map(Scalar::to_c64)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    /// Columns `cols` (in the given order) as a new matrix.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    /// First `count` rows.
    pub fn top_rows(&self, count: usize) -> Self {
        Matrix { rows: count, cols: self.cols, data: self.data[..count * self.cols].to_vec() }
    }

    /// Block-diagonal direct sum `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Self::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                S::zero()
            }
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { left: (self.rows, self.cols), right: (rhs.rows, rhs.cols) });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let acc = core::mem::replace(&mut out[(i, j)], S::zero());
                    out[(i, j)] = acc + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    fn checked_zip(&self, rhs: &Self, f: impl Fn(S, S) -> S) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch { left: (self.rows, self.cols), right: (rhs.rows, rhs.cols) });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a.clone(), b.clone())).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.checked_zip(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_zip(rhs, |a, b| a - b)
    }

    /// `self^k`, with `self^0 = I`. Square only.
    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    /// Max-entry residual of `self - other`.
    pub fn residual(&self, other: &Self) -> crate::report::Residual {
        let diff = self.checked_sub(other).expect("residual of mismatched shapes");
        crate::report::Residual::of_difference(&diff)
    }

    /// Equality test: exact entrywise for the exact backend, max-entry
    /// difference `<= tol.eq_tol` for floats.
    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        match S::BACKEND {
            crate::scalar::Backend::Exact => self == other,
            crate::scalar::Backend::F64 => {
                self.data.iter().zip(&other.data).all(|(a, b)| (a.clone() - b.clone()).modulus() <= tol.eq_tol)
            }
        }
    }

    /// Trace.
    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<S> core::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<S> core::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Panics on a shape mismatch; use [`Matrix::checked_mul`] for untrusted input.
impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Self) -> Matrix<S> {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: Self) -> Matrix<S> {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: Self) -> Matrix<S> {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        self.map(|x| -x.clone())
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Product of a sequence of square matrices, left to right.
pub fn product<S: Scalar>(factors: &[&Matrix<S>]) -> Matrix<S> {
    let (first, rest) = factors.split_first().expect("empty product");
    rest.iter().fold((*first).clone(), |acc, m| &acc * m)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ExactMatrix;

    #[test]
    fn identity_squares_to_identity() {
        assert_eq!(&M::identity(2) * &M::identity(2), M::identity(2));
    }

    #[test]
    fn shift_composition() {
        let j = M::shift(4);
        let mut expected = M::zeros(4, 4);
        expected[(0, 2)] = GaussianRational::one();
        expected[(1, 3)] = GaussianRational::one();
        assert_eq!(&j * &j, expected);
        assert!(j.pow(4).is_zero());
        assert!(!j.pow(3).is_zero());
    }

    #[test]
    fn mul_shape_mismatch_is_an_error() {
        let a = M::zeros(2, 3);
        assert!(matches!(a.checked_mul(&a), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = alloc::vec![alloc::vec![GaussianRational::one()], alloc::vec![]];
        assert_eq!(M::from_rows(rows), Err(Error::RaggedRows));
    }

    #[test]
    fn float_equality_uses_tolerance() {
        let a = FloatMatrix::identity(2);
        let mut b = a.clone();
        b[(0, 1)] = Complex64::new(1e-12, 0.0);
        assert!(a.approx_eq(&b, &Tolerance::default()));
        b[(0, 1)] = Complex64::new(1e-6, 0.0);
        assert!(!a.approx_eq(&b, &Tolerance::default()));
    }
}
