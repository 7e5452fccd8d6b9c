//! Finite cell complexes given by integer boundary matrices, their
//! subcomplexes, and reduced or relative homology over ℤ.
//!
//! Cells are indexed by dimension and by position inside their dimension;
//! that order is fixed at construction and every vector or submatrix in the
//! crate is indexed by it. Facet subsets are sorted `usize` index lists into
//! the top dimension.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{cokernel_group, kernel_basis, FiniteAbelianGroup, IntMatrix, IntegerSolver};
use crate::{Error, Result};

/// First problem found by [`CellComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// No dimension at all (not even vertices).
    NoCells,
    /// `∂_dim` was missing or had the wrong shape.
    Shape {
        dim: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// Entry `(row, col)` of `∂_{dim-1} · ∂_dim` is nonzero. `dim = 1` refers to
    /// the augmentation.
    BoundaryOfBoundary {
        dim: usize,
        row: usize,
        col: usize,
    },
    DuplicateLabel {
        dim: usize,
        label: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoCells => f.write_str("complex has no cells"),
            Violation::Shape { dim, expected, found } => write!(
                f,
                "boundary matrix in dimension {} should be {}x{}, found {}x{}",
                dim, expected.0, expected.1, found.0, found.1
            ),
            Violation::BoundaryOfBoundary { dim, row, col } => {
                write!(f, "boundary of boundary is nonzero in dimension {} at ({}, {})", dim, row, col)
            }
            Violation::DuplicateLabel { dim, label } => {
                write!(f, "duplicate cell label {:?} in dimension {}", label, dim)
            }
        }
    }
}

/// A finite cell complex as a chain complex of integer boundary matrices.
///
/// When `augmented` is set there is a virtual (−1)-cell and `∂₀` is the
/// all-ones row, so homology is reduced homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    cells: Vec<Vec<String>>,
    /// `boundaries[i]` is `∂_i`; index 0 holds the augmentation row (or a
    /// `0 × |cells[0]|` matrix when not augmented).
    boundaries: Vec<IntMatrix>,
    augmented: bool,
}

impl CellComplex {
    /// Assembles a complex without checking it. `boundaries[k]` is `∂_{k+1}`.
    pub fn from_parts(cells: Vec<Vec<String>>, boundaries: Vec<IntMatrix>, augmented: bool) -> Self {
        let vertices = cells.first().map_or(0, Vec::len);
        let d0 = if augmented {
            IntMatrix::from_fn(1, vertices, |_, _| BigInt::one())
        } else {
            IntMatrix::zeros(0, vertices)
        };
        let mut all = Vec::with_capacity(boundaries.len() + 1);
        all.push(d0);
        all.extend(boundaries);
        CellComplex { cells, boundaries: all, augmented }
    }

    /// Assembles and validates a complex. `boundaries[k]` is `∂_{k+1}`.
    pub fn new(cells: Vec<Vec<String>>, boundaries: Vec<IntMatrix>, augmented: bool) -> Result<Self> {
        let c = Self::from_parts(cells, boundaries, augmented);
        c.validate().map_err(Error::InvalidComplex)?;
        Ok(c)
    }

    /// Checks shapes, label uniqueness and `∂ ∘ ∂ = 0` (augmentation included).
    pub fn validate(&self) -> core::result::Result<(), Violation> {
        if self.cells.is_empty() {
            return Err(Violation::NoCells);
        }
        for (dim, labels) in self.cells.iter().enumerate() {
            let mut sorted: Vec<&String> = labels.iter().collect();
            sorted.sort();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Violation::DuplicateLabel { dim, label: w[0].clone() });
            }
        }
        for dim in 1..self.cells.len() {
            let expected = (self.cells[dim - 1].len(), self.cells[dim].len());
            let found = self.boundaries.get(dim).map_or((0, 0), IntMatrix::shape);
            if self.boundaries.len() <= dim || found != expected {
                return Err(Violation::Shape { dim, expected, found });
            }
        }
        if self.boundaries.len() > self.cells.len() {
            let dim = self.cells.len();
            let found = self.boundaries[dim].shape();
            return Err(Violation::Shape { dim, expected: (self.cells[dim - 1].len(), 0), found });
        }
        for dim in 1..self.cells.len() {
            let product = self.boundaries[dim - 1].mul(&self.boundaries[dim]).expect("shapes checked above");
            for row in 0..product.rows() {
                for col in 0..product.cols() {
                    if !product[(row, col)].is_zero() {
                        return Err(Violation::BoundaryOfBoundary { dim, row, col });
                    }
                }
            }
        }
        Ok(())
    }

    /// Simplicial complex generated by `facets` (vertex lists). Every face of
    /// every facet is a cell; cells of each dimension are sorted
    /// lexicographically, and the face omitting the `j`-th vertex of a sorted
    /// simplex has sign `(−1)^j`. Augmented.
    pub fn from_simplicial_facets(facets: &[Vec<u64>]) -> Result<Self> {
        Self::from_simplicial_facets_with(facets, true)
    }

    pub fn from_simplicial_facets_with(facets: &[Vec<u64>], augmented: bool) -> Result<Self> {
        let simplices = simplices_of(facets)?;
        let wide = simplices.first().is_some_and(|verts| verts.iter().any(|v| v[0] >= 10));
        let label = |s: &[u64]| -> String {
            let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            if wide {
                parts.join("-")
            } else {
                parts.concat()
            }
        };
        let cells: Vec<Vec<String>> = simplices.iter().map(|dim| dim.iter().map(|s| label(s)).collect()).collect();
        let mut boundaries = Vec::new();
        for k in 1..simplices.len() {
            let lower = &simplices[k - 1];
            let mut m = IntMatrix::zeros(lower.len(), simplices[k].len());
            for (col, s) in simplices[k].iter().enumerate() {
                for j in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(j);
                    let row = lower.binary_search(&face).expect("faces are closed under deletion");
                    m[(row, col)] = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                }
            }
            boundaries.push(m);
        }
        Self::new(cells, boundaries, augmented)
    }

    /// Top dimension `d`.
    pub fn dim(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    /// Labels of the `i`-cells (empty beyond the top dimension).
    pub fn cells(&self, i: usize) -> &[String] {
        self.cells.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn num_cells(&self, i: usize) -> usize {
        self.cells(i).len()
    }

    pub fn facets(&self) -> &[String] {
        self.cells(self.dim())
    }

    pub fn num_facets(&self) -> usize {
        self.facets().len()
    }

    /// `∂_i` for `0 ≤ i ≤ d`; `∂₀` is the augmentation row.
    pub fn boundary(&self, i: usize) -> &IntMatrix {
        &self.boundaries[i]
    }

    /// `∂_d`.
    pub fn top_boundary(&self) -> &IntMatrix {
        &self.boundaries[self.dim()]
    }

    pub fn facet_index(&self, label: &str) -> Option<usize> {
        self.facets().iter().position(|f| f == label)
    }

    /// Resolves facet labels to sorted indices.
    pub fn facet_indices<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            let idx = self.facet_index(l).ok_or_else(|| Error::InvalidFacet(format!("unknown facet label {:?}", l)))?;
            out.push(idx);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// The `k`-skeleton.
    pub fn skeleton(&self, k: usize) -> Result<CellComplex> {
        if k > self.dim() {
            return Err(Error::DimensionOutOfRange { dim: k as i32, min: 0, max: self.dim() as i32 });
        }
        Ok(CellComplex {
            cells: self.cells[..=k].to_vec(),
            boundaries: self.boundaries[..=k].to_vec(),
            augmented: self.augmented,
        })
    }

    /// The full `(d−1)`-skeleton together with the facets `facets`.
    pub fn top_restriction(&self, facets: &[usize]) -> Result<CellComplex> {
        check_facets(self, facets)?;
        let d = self.dim();
        let mut cells = self.cells.clone();
        cells[d] = facets.iter().map(|&f| self.cells[d][f].clone()).collect();
        let mut boundaries = self.boundaries.clone();
        boundaries[d] = self.boundaries[d].select_columns(facets);
        Ok(CellComplex { cells, boundaries, augmented: self.augmented })
    }

    fn lowest_dim(&self) -> i32 {
        if self.augmented {
            -1
        } else {
            0
        }
    }

    fn check_dim(&self, i: i32) -> Result<()> {
        let max = self.dim() as i32;
        if i < -1 || i > max {
            return Err(Error::DimensionOutOfRange { dim: i, min: -1, max });
        }
        Ok(())
    }

    pub(crate) fn chain_complex(&self) -> ChainComplex {
        let mut sizes = Vec::new();
        let mut boundaries = Vec::new();
        if self.augmented {
            sizes.push(1);
            boundaries.push(IntMatrix::zeros(0, 1));
        }
        for (i, labels) in self.cells.iter().enumerate() {
            sizes.push(labels.len());
            boundaries.push(self.boundaries[i].clone());
        }
        if !self.augmented {
            boundaries[0] = IntMatrix::zeros(0, sizes[0]);
        }
        ChainComplex { lowest: self.lowest_dim(), sizes, boundaries }
    }

    /// `H̃_i(Σ; ℤ)` for `−1 ≤ i ≤ d`.
    pub fn reduced_homology(&self, i: i32) -> Result<FiniteAbelianGroup> {
        self.check_dim(i)?;
        self.chain_complex().homology(i)
    }

    /// `t_i(Σ)`, the order of the torsion of `H̃_i(Σ; ℤ)`.
    pub fn torsion_coefficient(&self, i: i32) -> Result<BigInt> {
        Ok(self.reduced_homology(i)?.torsion_order())
    }

    /// Reduced Betti number `β̃_i`.
    pub fn betti(&self, i: i32) -> Result<usize> {
        Ok(self.reduced_homology(i)?.free_rank())
    }
}

fn simplices_of(facets: &[Vec<u64>]) -> Result<Vec<Vec<Vec<u64>>>> {
    if facets.is_empty() {
        return Err(Error::InvalidFacet("facet list is empty".into()));
    }
    let mut by_dim: Vec<Vec<Vec<u64>>> = Vec::new();
    for f in facets {
        if f.is_empty() {
            return Err(Error::InvalidFacet("empty facet".into()));
        }
        let mut s = f.clone();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidFacet(format!("repeated vertex in facet {:?}", f)));
        }
        let n = s.len();
        if n > 24 {
            return Err(Error::InvalidFacet(format!("facet {:?} has too many vertices", f)));
        }
        for mask in 1u32..(1u32 << n) {
            let face: Vec<u64> = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| s[b]).collect();
            let k = face.len() - 1;
            if by_dim.len() <= k {
                by_dim.resize(k + 1, Vec::new());
            }
            by_dim[k].push(face);
        }
    }
    for dim in by_dim.iter_mut() {
        dim.sort();
        dim.dedup();
    }
    Ok(by_dim)
}

pub(crate) fn check_facets(c: &CellComplex, facets: &[usize]) -> Result<()> {
    if let Some(&bad) = facets.iter().find(|&&f| f >= c.num_facets()) {
        return Err(Error::FacetOutOfRange(bad));
    }
    if facets.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidFacet("facet indices must be strictly increasing".into()));
    }
    Ok(())
}

/// A chain complex `C_top → … → C_lowest` of free ℤ-modules.
#[derive(Clone, Debug)]
pub(crate) struct ChainComplex {
    lowest: i32,
    sizes: Vec<usize>,
    /// `boundaries[k]` maps `C_{lowest+k}` to `C_{lowest+k−1}`.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    fn slot(&self, i: i32) -> Option<usize> {
        let k = i - self.lowest;
        (k >= 0 && (k as usize) < self.sizes.len()).then_some(k as usize)
    }

    /// `H_i = ker ∂_i / im ∂_{i+1}`, with `im ∂_{i+1}` written in coordinates
    /// of an integral kernel basis.
    pub(crate) fn homology(&self, i: i32) -> Result<FiniteAbelianGroup> {
        let Some(k) = self.slot(i) else {
            return Ok(FiniteAbelianGroup::trivial());
        };
        let kernel = kernel_basis(&self.boundaries[k]);
        if kernel.cols() == 0 {
            return Ok(FiniteAbelianGroup::trivial());
        }
        let incoming = match self.slot(i + 1) {
            Some(k1) => self.boundaries[k1].clone(),
            None => IntMatrix::zeros(self.sizes[k], 0),
        };
        let coords = IntegerSolver::new(&kernel)
            .solve_matrix(&incoming)?
            .ok_or_else(|| Error::Inconsistency("boundary image leaves the cycle lattice".into()))?;
        Ok(cokernel_group(&coords))
    }
}

/// Cell selection closed under the boundary relation.
///
/// The (−1)-cell of an augmented parent belongs to every nonempty
/// subcomplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex<'a> {
    parent: &'a CellComplex,
    selected: Vec<Vec<bool>>,
}

impl<'a> Subcomplex<'a> {
    /// `cells[i]` lists selected `i`-cell indices; missing dimensions select nothing.
    pub fn new(parent: &'a CellComplex, cells: &[Vec<usize>]) -> Result<Self> {
        if cells.len() > parent.dim() + 1 {
            return Err(Error::NotASubcomplex(format!(
                "selection has {} dimensions, parent has {}",
                cells.len(),
                parent.dim() + 1
            )));
        }
        let mut selected: Vec<Vec<bool>> = (0..=parent.dim()).map(|i| vec![false; parent.num_cells(i)]).collect();
        for (i, idx) in cells.iter().enumerate() {
            for &j in idx {
                if j >= parent.num_cells(i) {
                    return Err(Error::NotASubcomplex(format!("cell index {} out of range in dimension {}", j, i)));
                }
                selected[i][j] = true;
            }
        }
        let sub = Subcomplex { parent, selected };
        sub.check_closed()?;
        Ok(sub)
    }

    fn check_closed(&self) -> Result<()> {
        for i in 1..self.selected.len() {
            let b = self.parent.boundary(i);
            for col in (0..b.cols()).filter(|&c| self.selected[i][c]) {
                for row in 0..b.rows() {
                    if !b[(row, col)].is_zero() && !self.selected[i - 1][row] {
                        return Err(Error::NotASubcomplex(format!(
                            "{}-cell {:?} is selected but its face {:?} is not",
                            i,
                            self.parent.cells(i)[col],
                            self.parent.cells(i - 1)[row]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty(parent: &'a CellComplex) -> Self {
        let selected = (0..=parent.dim()).map(|i| vec![false; parent.num_cells(i)]).collect();
        Subcomplex { parent, selected }
    }

    pub fn full(parent: &'a CellComplex) -> Self {
        let selected = (0..=parent.dim()).map(|i| vec![true; parent.num_cells(i)]).collect();
        Subcomplex { parent, selected }
    }

    /// All cells of dimension `≤ k`; `k = −1` gives the empty subcomplex.
    pub fn skeleton(parent: &'a CellComplex, k: i32) -> Self {
        let selected = (0..=parent.dim()).map(|i| vec![(i as i32) <= k; parent.num_cells(i)]).collect();
        Subcomplex { parent, selected }
    }

    /// Full `(d−1)`-skeleton plus the given facets.
    pub fn top_restriction(parent: &'a CellComplex, facets: &[usize]) -> Result<Self> {
        check_facets(parent, facets)?;
        let d = parent.dim();
        let mut sub = Self::skeleton(parent, d as i32 - 1);
        for &f in facets {
            sub.selected[d][f] = true;
        }
        Ok(sub)
    }

    /// Full `(d−2)`-skeleton plus the given `(d−1)`-cells: the shape of the
    /// subcomplexes `Γ` used in matrix-forest formulas.
    pub fn codimension_one(parent: &'a CellComplex, ridges: &[usize]) -> Result<Self> {
        let d = parent.dim();
        if d == 0 {
            return Err(Error::NeedsPositiveDimension);
        }
        let mut sub = Self::skeleton(parent, d as i32 - 2);
        for &r in ridges {
            if r >= parent.num_cells(d - 1) {
                return Err(Error::NotASubcomplex(format!("ridge index {} out of range", r)));
            }
            sub.selected[d - 1][r] = true;
        }
        Ok(sub)
    }

    pub fn parent(&self) -> &'a CellComplex {
        self.parent
    }

    pub fn contains(&self, dim: usize, cell: usize) -> bool {
        self.selected.get(dim).and_then(|s| s.get(cell)).copied().unwrap_or(false)
    }

    pub fn is_empty(&self) -> bool {
        self.selected.iter().all(|s| s.iter().all(|x| !x))
    }

    /// Indices of the selected `i`-cells.
    pub fn cells(&self, i: usize) -> Vec<usize> {
        self.selected
            .get(i)
            .map(|s| s.iter().enumerate().filter(|(_, x)| **x).map(|(j, _)| j).collect())
            .unwrap_or_default()
    }

    /// Indices of the `i`-cells not selected.
    pub fn complement(&self, i: usize) -> Vec<usize> {
        self.selected
            .get(i)
            .map(|s| s.iter().enumerate().filter(|(_, x)| !**x).map(|(j, _)| j).collect())
            .unwrap_or_default()
    }

    /// The subcomplex as a complex in its own right (labels and order inherited).
    pub fn to_complex(&self) -> CellComplex {
        let mut top = self.selected.len();
        while top > 1 && self.selected[top - 1].iter().all(|x| !x) {
            top -= 1;
        }
        let kept: Vec<Vec<usize>> = (0..top).map(|i| self.cells(i)).collect();
        let cells = kept
            .iter()
            .enumerate()
            .map(|(i, idx)| idx.iter().map(|&j| self.parent.cells(i)[j].clone()).collect())
            .collect();
        let boundaries = (1..top).map(|i| self.parent.boundary(i).submatrix(&kept[i - 1], &kept[i])).collect();
        CellComplex::from_parts(cells, boundaries, self.parent.is_augmented())
    }
}

/// The pair `(Σ, Γ)`; its chains are the cells of `Σ` outside `Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeComplex<'a> {
    sub: Subcomplex<'a>,
}

impl<'a> RelativeComplex<'a> {
    pub fn new(sub: Subcomplex<'a>) -> Self {
        RelativeComplex { sub }
    }

    pub fn complex(&self) -> &'a CellComplex {
        self.sub.parent
    }

    pub fn subcomplex(&self) -> &Subcomplex<'a> {
        &self.sub
    }

    /// Relative `∂_i`: `∂_i(Σ)` restricted to the cells outside `Γ`.
    pub fn boundary(&self, i: usize) -> IntMatrix {
        let rows = if i == 0 { Vec::new() } else { self.sub.complement(i - 1) };
        let cols = self.sub.complement(i);
        if i == 0 {
            let c = self.complex();
            let rows = usize::from(c.is_augmented() && self.sub.is_empty());
            return IntMatrix::from_fn(rows, cols.len(), |_, _| BigInt::one());
        }
        self.complex().boundary(i).submatrix(&rows, &cols)
    }

    fn chain_complex(&self) -> ChainComplex {
        let c = self.complex();
        let mut sizes = Vec::new();
        let mut boundaries = Vec::new();
        if c.is_augmented() {
            let n = usize::from(self.sub.is_empty());
            sizes.push(n);
            boundaries.push(IntMatrix::zeros(0, n));
        }
        for i in 0..=c.dim() {
            let b = self.boundary(i);
            sizes.push(b.cols());
            boundaries.push(if i == 0 && !c.is_augmented() { IntMatrix::zeros(0, b.cols()) } else { b });
        }
        ChainComplex { lowest: if c.is_augmented() { -1 } else { 0 }, sizes, boundaries }
    }

    /// `H̃_i(Σ, Γ; ℤ)`.
    pub fn homology(&self, i: i32) -> Result<FiniteAbelianGroup> {
        let max = self.complex().dim() as i32;
        if i < -1 || i > max {
            return Err(Error::DimensionOutOfRange { dim: i, min: -1, max });
        }
        self.chain_complex().homology(i)
    }

    /// `t_i(Σ, Γ)`.
    pub fn torsion_coefficient(&self, i: i32) -> Result<BigInt> {
        Ok(self.homology(i)?.torsion_order())
    }
}
