use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, IntScalar, Overflow};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntScalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let data: Vec<T> =
            rows.iter().flat_map(|r| r.iter().map(|&v| T::from_i64(v).expect("i64 fits every scalar"))).collect();
        let c = rows.first().map_or(0, |r| r.len());
        Self::new(rows.len(), c, data).expect("rectangular literal")
    }

    /// Stacks column vectors side by side.
    pub fn from_columns(nrows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &Self) -> std::result::Result<Self, Overflow> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
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
                    let cell = &mut out.data[i * rhs.cols + j];
                    *cell = scalar::add(cell, &scalar::mul(a, b)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn checked_mul_vec(&self, v: &[T]) -> std::result::Result<Vec<T>, Overflow> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![T::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, b) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    *o = scalar::add(o, &scalar::mul(a, b)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        self.checked_mul_vec(v).expect("integer overflow in matrix-vector product")
    }

    pub fn checked_sub(&self, rhs: &Self) -> std::result::Result<Self, Overflow> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| scalar::sub(a, b))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v.clone())
    }

    pub fn map<U: IntScalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Converts to another scalar type, failing if any entry does not fit.
    pub fn try_cast<U: IntScalar>(&self) -> std::result::Result<Matrix<U>, Overflow> {
        let data = self
            .data
            .iter()
            .map(|v| U::from_bigint(&v.to_bigint()).ok_or(Overflow))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn to_big(&self) -> Matrix<BigInt> {
        self.map(IntScalar::to_bigint)
    }

    /// Entry-wise reduction into `[0, m)`.
    pub fn reduce_mod(&self, m: &T) -> Self {
        self.map(|v| v.mod_floor(m))
    }

    pub fn checked_pow(&self, k: u32) -> std::result::Result<Self, Overflow> {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> std::result::Result<T, Overflow> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num =
                        scalar::sub(&scalar::mul(&a[(i, j)], &a[(k, k)])?, &scalar::mul(&a[(i, k)], &a[(k, j)])?)?;
                    a[(i, j)] = num / prev.clone();
                }
            }
            prev = a[(k, k)].clone();
        }
        scalar::mul(&sign, &a[(n - 1, n - 1)])
    }

    pub fn trace(&self) -> std::result::Result<T, Overflow> {
        let mut t = T::zero();
        for i in 0..self.rows.min(self.cols) {
            t = scalar::add(&t, &self[(i, i)])?;
        }
        Ok(t)
    }

    /// Characteristic polynomial `det(xI - A)`, coefficients low-to-high,
    /// via the Faddeev-LeVerrier recursion (exact division by k).
    pub fn char_poly(&self) -> std::result::Result<Vec<T>, Overflow> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.checked_mul(&m)?;
            for i in 0..n {
                next[(i, i)] = scalar::add(&next[(i, i)], &coeffs[n - k + 1])?;
            }
            let am = self.checked_mul(&next)?;
            let tr = am.trace()?;
            let kk = T::from_usize(k).ok_or(Overflow)?;
            coeffs[n - k] = scalar::neg(&tr)? / kk;
            m = next;
        }
        Ok(coeffs)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] -= q * row[src]`
    pub(crate) fn row_sub_mul(&mut self, dst: usize, src: usize, q: &T) -> std::result::Result<(), Overflow> {
        let c = self.cols;
        for j in 0..c {
            let s = &self.data[src * c + j];
            if s.is_zero() {
                continue;
            }
            let v = scalar::sub_mul(&self.data[dst * c + j], q, s)?;
            self.data[dst * c + j] = v;
        }
        Ok(())
    }

    /// `col[dst] -= q * col[src]`
    pub(crate) fn col_sub_mul(&mut self, dst: usize, src: usize, q: &T) -> std::result::Result<(), Overflow> {
        let c = self.cols;
        for i in 0..self.rows {
            let s = &self.data[i * c + src];
            if s.is_zero() {
                continue;
            }
            let v = scalar::sub_mul(&self.data[i * c + dst], q, s)?;
            self.data[i * c + dst] = v;
        }
        Ok(())
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        let c = self.cols;
        for v in &mut self.data[i * c..(i + 1) * c] {
            *v = -v.clone();
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        let c = self.cols;
        for i in 0..self.rows {
            let v = &mut self.data[i * c + j];
            *v = -v.clone();
        }
    }

    /// Selects a sub-block of rows.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Self { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Kronecker product.
    pub fn kronecker(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut m = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a.clone() * other[(k, l)].clone();
                    }
                }
            }
        }
        m
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Panics on machine-integer overflow; arbitrary-precision matrices never overflow.
impl<T: IntScalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_mul(rhs).expect("integer overflow in matrix product")
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Debug> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Matrix<BigInt> {
    /// Small-entry matrices are common enough in tests and group tables to
    /// warrant a shortcut.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_i64_rows(rows)
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_char_poly() {
        let a = Matrix::<i64>::from_i64_rows(&[&[0, -1], &[1, -1]]);
        assert_eq!(a.determinant().unwrap(), 1);
        assert_eq!(a.char_poly().unwrap(), vec![1, 1, 1]);
        let b = Matrix::<BigInt>::from_i64(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(b.determinant().unwrap(), BigInt::from(6));
        let cp = b.char_poly().unwrap();
        // x^3 - 7x^2 + 13x - 6
        assert_eq!(cp, vec![-6, 13, -7, 1].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn checked_product_reports_overflow() {
        let a = Matrix::<i64>::from_i64_rows(&[&[i64::MAX, 1], &[0, 1]]);
        assert!(a.checked_mul(&a).is_err());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::<i64>::from_rows(vec![vec![1, 2], vec![3]]).is_err());
    }
}
