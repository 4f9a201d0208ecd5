//! Small dense row-major matrices over any ring-like element type.
//!
//! The same container carries complex codewords (`Matrix<Complex<T>>`) and
//! exact golden-field codewords (`Matrix<GoldenElem<I>>`), so block assembly
//! and determinants are written once.

use crate::error::{Error, Result};
use crate::scalar::Real;
use num_complex::Complex;
use num_traits::{One, Zero};
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Complex conjugation (the identity on real parts).
pub trait Conj {
    fn conj(&self) -> Self;
}

impl<T: Real> Conj for Complex<T> {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

pub type CMatrix<T> = Matrix<Complex<T>>;

impl<E> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[E] {
        &self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, E> {
        self.data.iter()
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<F, U>(&self, f: F) -> Matrix<U>
    where
        F: FnMut(&E) -> U,
    {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<E: Clone> Matrix<E> {
    /// The submatrix made of the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        if let Some(&bad) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(Error::Dimension(format!(
                "row {bad} of a {}-row matrix",
                self.rows
            )));
        }
        Ok(Self {
            rows: rows.len(),
            cols: self.cols,
            data: rows.iter().flat_map(|&r| self.row(r).iter().cloned()).collect(),
        })
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }
}

impl<E: Clone + Conj> Matrix<E> {
    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }
}

impl<E: Clone + Zero + One> Matrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| E::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { E::one() } else { E::zero() })
    }
}

impl<E> Matrix<E>
where
    E: Clone + Zero + Add<Output = E> + Mul<Output = E>,
{
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).fold(E::zero(), |acc, k| {
                acc + self[(r, k)].clone() * rhs[(k, c)].clone()
            })
        }))
    }

    pub fn scale(&self, s: &E) -> Self {
        self.map(|x| x.clone() * s.clone())
    }
}

impl<E> Matrix<E>
where
    E: Clone + Sub<Output = E>,
{
    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::Dimension(format!(
                "{:?} minus {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }
}

impl<E> Matrix<E>
where
    E: Clone + Zero + One + Add<Output = E> + Sub<Output = E> + Mul<Output = E> + Neg<Output = E>,
{
    /// Determinant by cofactor expansion along the first row. Exact for
    /// exact element types; intended for the small (≤ 4×4) blocks used here.
    pub fn det(&self) -> Result<E> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.minor_det(0, &idx))
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> E {
        match cols.len() {
            0 => E::one(),
            1 => self[(row, cols[0])].clone(),
            2 => {
                self[(row, cols[0])].clone() * self[(row + 1, cols[1])].clone()
                    - self[(row, cols[1])].clone() * self[(row + 1, cols[0])].clone()
            }
            _ => {
                let mut acc = E::zero();
                for (k, &c) in cols.iter().enumerate() {
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = self[(row, c)].clone() * self.minor_det(row + 1, &rest);
                    acc = if k % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }
}

impl<T: Real> CMatrix<T> {
    pub fn frobenius_sq(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (r, c): (usize, usize)) -> &E {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut E {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}
