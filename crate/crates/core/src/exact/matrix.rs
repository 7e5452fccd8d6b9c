use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: alloc::vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows<T, R>(cols: usize, rows: impl IntoIterator<Item = R>) -> Result<Self>
    where
        T: Into<BigInt>,
        R: IntoIterator<Item = T>,
    {
        let mut data = Vec::new();
        let mut count = 0;
        for row in rows {
            let before = data.len();
            data.extend(row.into_iter().map(Into::into));
            if data.len() - before != cols {
                return Err(Error::Shape(alloc::format!(
                    "row {} has {} entries, expected {}",
                    count,
                    data.len() - before,
                    cols
                )));
            }
            count += 1;
        }
        Ok(IntMatrix { rows: count, cols, data })
    }

    /// Convenience constructor for small literal matrices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().copied())).expect("ragged matrix literal")
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        if let Some(bad) = columns.iter().position(|c| c.len() != rows) {
            return Err(Error::Shape(alloc::format!("column {} has wrong length", bad)));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> Option<&BigInt> {
        if i < self.rows && j < self.cols {
            self.data.get(i * self.cols + j)
        } else {
            None
        }
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Restriction to the given rows and columns, in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape(alloc::format!(
                "cannot place {}x{} beside {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Shape(alloc::format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    /// `selfᵀ · self`.
    pub fn gram(&self) -> Self {
        let mut g = Self::zeros(self.cols, self.cols);
        for a in 0..self.cols {
            for b in a..self.cols {
                let s: BigInt = (0..self.rows).map(|i| &self[(i, a)] * &self[(i, b)]).sum();
                g[(b, a)] = s.clone();
                g[(a, b)] = s;
            }
        }
        g
    }

    /// Matrix rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        echelon_rank(&mut work)
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

    /// row[target] += factor * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if !s.is_zero() {
                let delta = s * factor;
                self.data[target * self.cols + j] += delta;
            }
        }
    }

    /// col[target] += factor * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source];
            if !s.is_zero() {
                let delta = s * factor;
                self.data[i * self.cols + target] += delta;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.data[i * self.cols + j];
            *e = -core::mem::take(e);
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let e = &mut self.data[i * self.cols + j];
            *e = -core::mem::take(e);
        }
    }
}

/// Reduces `m` in place to a fraction-free row echelon form and returns its rank.
fn echelon_rank(m: &mut IntMatrix) -> usize {
    let (rows, cols) = m.shape();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(rank, p);
        let pivot = m[(rank, c)].clone();
        for i in rank + 1..rows {
            let e = m[(i, c)].clone();
            if e.is_zero() {
                continue;
            }
            let g = pivot.gcd(&e);
            let a = &pivot / &g;
            let b = &e / &g;
            for j in c..cols {
                let v = &m[(i, j)] * &a - &m[(rank, j)] * &b;
                m[(i, j)] = v;
            }
        }
        rank += 1;
    }
    rank
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({}, {}) out of bounds", i, j);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index ({}, {}) out of bounds", i, j);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", e)?;
            }
        }
        f.write_str("]")
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}

/// Sign of an integer as -1, 0 or 1.
pub fn signum(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
