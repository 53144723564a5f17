//! Dense exact matrices over any commutative ring scalar (big integers,
//! rationals, quadratic-field elements), plus fraction-free elimination for
//! integer matrices: Bareiss determinants and Montante (Bareiss–Jordan)
//! adjugate inverses. No floating point anywhere in this module.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Int;
use crate::error::{Error, Result};

/// Scalars an [`ExactMatrix`] can hold: exact ring elements with displayable
/// values. Implemented by `BigInt`, `BigRational` and `QuadExt`.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
{
}

/// A dense `rows x cols` matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> ExactMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged row lengths".into()));
        }
        Ok(ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self.get(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let rkj = rhs.get(k, j);
                    if rkj.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + lik.clone() * rkj.clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![T::zero(); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = T::zero();
            for (j, vj) in v.iter().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    acc = acc + a.clone() * vj.clone();
                }
            }
            *slot = acc;
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("matrix addition".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + rhs.get(i, j).clone()
        }))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("matrix subtraction".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() - rhs.get(i, j).clone()
        }))
    }

    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    /// Submatrix selecting the given rows and columns, in the given order.
    pub fn submatrix(&self, keep_rows: &[usize], keep_cols: &[usize]) -> Self {
        Self::from_fn(keep_rows.len(), keep_cols.len(), |i, j| {
            self.get(keep_rows[i], keep_cols[j]).clone()
        })
    }

    /// Square submatrix obtained by deleting the listed row/column indices.
    pub fn delete_rows_cols(&self, drop: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|i| !drop.contains(i)).collect();
        self.submatrix(&keep, &keep)
    }

    /// Comma-separated values, one matrix row per LF-terminated line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Sparse coordinate listing: a `dims r c` line, then `i j value` lines
    /// (0-based, row-major) for every nonzero entry.
    pub fn to_coordinate_text(&self) -> String {
        let mut out = format!("dims {} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.push_str(&format!("{i} {j} {v}\n"));
                }
            }
        }
        out
    }
}

impl<T: Scalar> Index<(usize, usize)> for ExactMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        self.get(i, j)
    }
}

impl ExactMatrix<Int> {
    /// Determinant by Bareiss fraction-free elimination with row pivoting.
    /// Every intermediate value is a minor of the input, so all divisions are
    /// exact and intermediate growth stays polynomial.
    pub fn det_bareiss(&self) -> Result<Int> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a: Vec<Vec<Int>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = 1i8;
        let mut prev = Int::one();
        for c in 0..n - 1 {
            if a[c][c].is_zero() {
                match (c + 1..n).find(|&r| !a[r][c].is_zero()) {
                    Some(r) => {
                        a.swap(c, r);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in c + 1..n {
                for j in c + 1..n {
                    let t = &a[i][j] * &a[c][c] - &a[i][c] * &a[c][j];
                    let (q, r) = t.div_rem(&prev);
                    debug_assert!(r.is_zero(), "non-exact division in Bareiss elimination");
                    a[i][j] = q;
                }
                a[i][c] = Int::zero();
            }
            prev = a[c][c].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if sign < 0 { -det } else { det })
    }

    /// Scaled inverse by the Montante (Bareiss–Jordan) method: returns
    /// `(x, det)` with `self * x == det * I`, entirely in integers. `x` is
    /// the adjugate of `self`. Errors with [`Error::Singular`] when
    /// `det == 0`.
    // the elimination rule reads two rows at once, so index loops it is
    #[allow(clippy::needless_range_loop)]
    pub fn adjugate_inverse(&self) -> Result<(ExactMatrix<Int>, Int)> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let w = 2 * n;
        let mut a: Vec<Vec<Int>> = (0..n)
            .map(|i| {
                let mut row: Vec<Int> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| if i == j { Int::one() } else { Int::zero() }));
                row
            })
            .collect();
        let mut sign = 1i8;
        let mut prev = Int::one();
        for c in 0..n {
            if a[c][c].is_zero() {
                match (c + 1..n).find(|&r| !a[r][c].is_zero()) {
                    Some(r) => {
                        a.swap(c, r);
                        sign = -sign;
                    }
                    None => return Err(Error::Singular),
                }
            }
            let pivot = a[c][c].clone();
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    // rows with a zero in the pivot column still need the
                    // rescaling part of the rule
                    if i != c {
                        for j in 0..w {
                            let t = &a[i][j] * &pivot;
                            let (q, r) = t.div_rem(&prev);
                            debug_assert!(r.is_zero(), "non-exact division in Montante step");
                            a[i][j] = q;
                        }
                    }
                    continue;
                }
                let factor = std::mem::replace(&mut a[i][c], Int::zero());
                for j in 0..w {
                    if j == c {
                        continue;
                    }
                    let t = &a[i][j] * &pivot - &factor * &a[c][j];
                    let (q, r) = t.div_rem(&prev);
                    debug_assert!(r.is_zero(), "non-exact division in Montante step");
                    a[i][j] = q;
                }
            }
            prev = pivot;
        }
        // Every row now sits at scale det(PA); the right block is adj(PA)·P
        // which, after the sign fix-up, is the adjugate of the input.
        let d = prev;
        let adj = ExactMatrix::from_fn(n, n, |i, j| {
            let v = a[i][n + j].clone();
            if sign < 0 {
                -v
            } else {
                v
            }
        });
        let det = if sign < 0 { -d } else { d };
        Ok((adj, det))
    }
}

/// Largest absolute entry of `a - b`, as f64, for float cross-checks.
/// (`f64` satisfies the blanket [`Scalar`] impl.)
pub fn max_abs_diff(a: &ExactMatrix<f64>, b: &ExactMatrix<f64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            worst = worst.max((a.get(i, j) - b.get(i, j)).abs());
        }
    }
    worst
}
