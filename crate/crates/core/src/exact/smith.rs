use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Unimodular diagonalization `u · m · v = s` of an integer matrix.
///
/// `s` is diagonal with non-negative entries `d₁ | d₂ | … | d_k`, followed by
/// zeros. The inverses of the two transforms are carried along as well, since
/// kernels, saturations and coordinate solves all need them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// The `min(rows, cols)` diagonal entries of `s`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

struct Transforms {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

struct Reducer {
    a: IntMatrix,
    t: Option<Transforms>,
}

impl Reducer {
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_row_multiple(target, source, factor);
        if let Some(t) = &mut self.t {
            t.u.add_row_multiple(target, source, factor);
            t.u_inv.add_col_multiple(source, target, &-factor);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_col_multiple(target, source, factor);
        if let Some(t) = &mut self.t {
            t.v.add_col_multiple(target, source, factor);
            t.v_inv.add_row_multiple(source, target, &-factor);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(t) = &mut self.t {
            t.u.swap_rows(i, j);
            t.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(t) = &mut self.t {
            t.v.swap_cols(i, j);
            t.v_inv.swap_rows(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(t) = &mut self.t {
            t.u.negate_row(i);
            t.u_inv.negate_col(i);
        }
    }

    /// Smallest nonzero |entry| in the trailing block, ties broken by lowest (row, col).
    fn smallest_in_block(&self, start: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in start..self.a.rows() {
            for j in start..self.a.cols() {
                let e = &self.a[(i, j)];
                if e.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| e.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Smallest nonzero |entry| on the pivot row or pivot column.
    fn smallest_on_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = self.a[(t, t)].abs();
        for i in t + 1..self.a.rows() {
            let e = self.a[(i, t)].abs();
            if !e.is_zero() && (best_abs.is_zero() || e < best_abs) {
                best = (i, t);
                best_abs = e;
            }
        }
        for j in t + 1..self.a.cols() {
            let e = self.a[(t, j)].abs();
            if !e.is_zero() && (best_abs.is_zero() || e < best_abs) {
                best = (t, j);
                best_abs = e;
            }
        }
        best
    }

    fn run(&mut self) {
        let (rows, cols) = self.a.shape();
        for t in 0..rows.min(cols) {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a[(t, t)].clone();
                for i in t + 1..rows {
                    if !self.a[(i, t)].is_zero() {
                        let q = self.a[(i, t)].div_floor(&pivot);
                        self.add_row(i, t, &-q);
                    }
                }
                for j in t + 1..cols {
                    if !self.a[(t, j)].is_zero() {
                        let q = self.a[(t, j)].div_floor(&pivot);
                        self.add_col(j, t, &-q);
                    }
                }
                let cross_clear =
                    (t + 1..rows).all(|i| self.a[(i, t)].is_zero()) && (t + 1..cols).all(|j| self.a[(t, j)].is_zero());
                if !cross_clear {
                    let (ni, nj) = self.smallest_on_cross(t);
                    self.swap_rows(t, ni);
                    self.swap_cols(t, nj);
                    continue;
                }
                let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&pivot)));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with transforms. Deterministic for a fixed input.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = m.shape();
    let mut r = Reducer {
        a: m.clone(),
        t: Some(Transforms {
            u: IntMatrix::identity(rows),
            u_inv: IntMatrix::identity(rows),
            v: IntMatrix::identity(cols),
            v_inv: IntMatrix::identity(cols),
        }),
    };
    r.run();
    let t = r.t.expect("transforms tracked");
    SmithForm { u: t.u, s: r.a, v: t.v, u_inv: t.u_inv, v_inv: t.v_inv }
}

/// The SNF diagonal only (`min(rows, cols)` entries), skipping transform bookkeeping.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut r = Reducer { a: m.clone(), t: None };
    r.run();
    let k = m.rows().min(m.cols());
    (0..k).map(|i| r.a[(i, i)].clone()).collect()
}
