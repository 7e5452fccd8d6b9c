//! Exact integer linear algebra: determinants, Smith and Hermite forms,
//! kernels, saturations and cokernel groups.
//!
//! Nothing in here touches floating point. Matrices are small and dense.

mod group;
mod matrix;
mod smith;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use group::{cokernel_group, FiniteAbelianGroup};
pub use matrix::{det, signum, IntMatrix};
pub use smith::{smith_diagonal, smith_normal_form, SmithForm};

use crate::{Error, Result};

/// Canonical integral basis of the row lattice of `m`, as the nonzero rows of
/// its Hermite normal form: echelon, positive pivots, entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_row_basis(m: &IntMatrix) -> IntMatrix {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut found = false;
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !a[(i, c)].is_zero() && best.is_none_or(|b| a[(i, c)].abs() < a[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            found = true;
            a.swap_rows(r, p);
            let pivot = a[(r, c)].clone();
            let mut clean = true;
            for i in r + 1..rows {
                if !a[(i, c)].is_zero() {
                    let q = a[(i, c)].div_floor(&pivot);
                    a.add_row_multiple(i, r, &-q);
                    if !a[(i, c)].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
        }
        let pivot = a[(r, c)].clone();
        for i in 0..r {
            let q = a[(i, c)].div_floor(&pivot);
            a.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    let keep: Vec<usize> = (0..r).collect();
    a.select_rows(&keep)
}

/// Canonical form of the column lattice of `basis`.
fn canonical_columns(basis: &IntMatrix) -> IntMatrix {
    hermite_row_basis(&basis.transpose()).transpose()
}

/// Integral basis of `ker_ℤ(m)` as columns. The lattice is saturated.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let f = smith_normal_form(m);
    let rank = f.rank();
    let cols: Vec<usize> = (rank..m.cols()).collect();
    if cols.is_empty() {
        return IntMatrix::zeros(m.cols(), 0);
    }
    canonical_columns(&f.v.select_columns(&cols))
}

/// Integral basis of `span_ℝ(b) ∩ ℤⁿ` for a matrix with independent columns.
pub fn saturation(b: &IntMatrix) -> Result<IntMatrix> {
    let k = b.cols();
    if b.rank() != k {
        return Err(Error::DependentColumns);
    }
    if k == 0 {
        return Ok(IntMatrix::zeros(b.rows(), 0));
    }
    let f = smith_normal_form(b);
    let cols: Vec<usize> = (0..k).collect();
    Ok(canonical_columns(&f.u_inv.select_columns(&cols)))
}

/// gcd of all `r × r` minors of `m` (0 when they all vanish).
pub fn minors_gcd(m: &IntMatrix, r: usize) -> Result<BigInt> {
    if r > m.rows().min(m.cols()) {
        return Err(Error::MinorSize { size: r, rows: m.rows(), cols: m.cols() });
    }
    Ok(smith_diagonal(m).into_iter().take(r).product())
}

/// Solves `m · x = b` over the integers for many right-hand sides.
#[derive(Clone, Debug)]
pub struct IntegerSolver {
    form: SmithForm,
    rank: usize,
}

impl IntegerSolver {
    pub fn new(m: &IntMatrix) -> Self {
        let form = smith_normal_form(m);
        let rank = form.rank();
        IntegerSolver { form, rank }
    }

    /// Some integer solution, or `None` if `b ∉ im_ℤ(m)`. Unique when `m` has
    /// independent columns.
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let y = self.form.u.mul_vec(b)?;
        let mut z = alloc::vec![BigInt::zero(); self.form.s.cols()];
        for (i, yi) in y.iter().enumerate() {
            if i < self.rank {
                let d = &self.form.s[(i, i)];
                let (q, rem) = yi.div_rem(d);
                if !rem.is_zero() {
                    return Ok(None);
                }
                z[i] = q;
            } else if !yi.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(self.form.v.mul_vec(&z)?))
    }

    /// Column-by-column solve of `m · x = rhs`.
    pub fn solve_matrix(&self, rhs: &IntMatrix) -> Result<Option<IntMatrix>> {
        let mut cols = Vec::with_capacity(rhs.cols());
        for j in 0..rhs.cols() {
            match self.solve(&rhs.column(j))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        IntMatrix::from_columns(self.form.s.cols(), &cols).map(Some)
    }
}

/// gcd of the entries of a vector (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Incrementally maintained set of independent integer vectors, for
/// backtracking searches over matroid bases.
#[derive(Clone, Debug, Default)]
pub(crate) struct EchelonBasis {
    vectors: Vec<(usize, Vec<BigInt>)>,
}

impl EchelonBasis {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn len(&self) -> usize {
        self.vectors.len()
    }

    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (p, b) in &self.vectors {
            if v[*p].is_zero() {
                continue;
            }
            let g = b[*p].gcd(&v[*p]);
            let a = &b[*p] / &g;
            let c = &v[*p] / &g;
            for (x, y) in v.iter_mut().zip(b) {
                *x = &*x * &a - y * &c;
            }
        }
        let g = content(&v);
        if !g.is_zero() && !g.is_one() {
            for x in v.iter_mut() {
                *x /= &g;
            }
        }
        v
    }

    /// Adds `v` if it is independent of the current vectors.
    pub(crate) fn push(&mut self, v: &[BigInt]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.vectors.push((p, r));
                true
            }
            None => false,
        }
    }

    pub(crate) fn pop(&mut self) {
        self.vectors.pop();
    }
}

/// All size-`k` subsets of `0..n` whose columns of `m` are independent, in
/// lexicographic order, found by depth-first search with rank pruning.
pub(crate) fn independent_column_sets(m: &IntMatrix, k: usize) -> Vec<Vec<usize>> {
    fn go(
        cols: &[Vec<BigInt>],
        k: usize,
        start: usize,
        basis: &mut EchelonBasis,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == k {
            out.push(chosen.clone());
            return;
        }
        let need = k - chosen.len();
        for j in start..cols.len() {
            if cols.len() - j < need {
                break;
            }
            if basis.push(&cols[j]) {
                chosen.push(j);
                go(cols, k, j + 1, basis, chosen, out);
                chosen.pop();
                basis.pop();
            }
        }
    }
    let cols = m.columns();
    let mut out = Vec::new();
    let mut basis = EchelonBasis::new();
    debug_assert_eq!(basis.len(), 0);
    go(&cols, k, 0, &mut basis, &mut Vec::new(), &mut out);
    out
}
