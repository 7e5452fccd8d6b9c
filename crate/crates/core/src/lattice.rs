//! Cut and flow lattices, their duals and discriminant groups, and the
//! critical, cocritical and cutflow groups of a complex.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::complex::CellComplex;
use crate::cutflow::{calibrated_cut_vector_for, calibrated_flow_vector, fundamental_circuit, FacetVector};
use crate::exact::{
    cokernel_group, det, hermite_row_basis, kernel_basis, smith_diagonal, FiniteAbelianGroup, IntMatrix, IntegerSolver,
};
use crate::forest::{codim_one_torsion, forest_torsion, is_csf, tau, tau_star};
use crate::{Error, Result};

/// A full-rank integer lattice in `ℤⁿ`, stored as the columns of an `n × k` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: IntMatrix,
}

impl Lattice {
    pub fn new(basis: IntMatrix) -> Result<Self> {
        if basis.rank() != basis.cols() {
            return Err(Error::DependentColumns);
        }
        Ok(Lattice { basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// `BᵀB`.
    pub fn gram(&self) -> IntMatrix {
        self.basis.gram()
    }

    /// `det(BᵀB)`, the order of the discriminant group.
    pub fn determinant(&self) -> BigInt {
        det(&self.gram()).expect("Gram matrix is square")
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        IntegerSolver::new(&self.basis).solve(v)
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// Whether the given vectors lie in the lattice and generate it: the
    /// coordinate matrix exists and its Smith form is all ones.
    pub fn is_generated_by(&self, vectors: &[Vec<BigInt>]) -> Result<bool> {
        let k = self.rank();
        let mut coords = Vec::with_capacity(vectors.len());
        for v in vectors {
            match self.coordinates(v)? {
                Some(x) => coords.push(x),
                None => return Ok(false),
            }
        }
        let m = IntMatrix::from_columns(k, &coords)?;
        let diag = smith_diagonal(&m);
        Ok(diag.len() == k && diag.iter().all(One::is_one))
    }
}

/// `C = im_ℤ ∂ᵀ`, with the nonzero Hermite rows of `∂_d` as basis.
pub fn cut_lattice(c: &CellComplex) -> Result<Lattice> {
    if c.dim() == 0 {
        return Err(Error::NeedsPositiveDimension);
    }
    Lattice::new(hermite_row_basis(c.top_boundary()).transpose())
}

/// `F = ker_ℤ ∂`.
pub fn flow_lattice(c: &CellComplex) -> Result<Lattice> {
    if c.dim() == 0 {
        return Err(Error::NeedsPositiveDimension);
    }
    Lattice::new(kernel_basis(c.top_boundary()))
}

/// Dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        let data = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| BigRational::from_integer(m[(i, j)].clone()))
            .collect();
        RationalMatrix { rows: m.rows(), cols: m.cols(), data }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigRational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigRational::one();
        }
        RationalMatrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out =
            RationalMatrix { rows: self.cols, cols: self.rows, data: vec![BigRational::zero(); self.data.len()] };
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RationalMatrix {
            rows: self.rows,
            cols: other.cols,
            data: vec![BigRational::zero(); self.rows * other.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a.get(i, col).is_zero()) else {
                return Ok(None);
            };
            for j in 0..n {
                a.data.swap(col * n + j, p * n + j);
                inv.data.swap(col * n + j, p * n + j);
            }
            let pivot = a.get(col, col).clone();
            for j in 0..n {
                let x = a.get(col, j) / &pivot;
                a.set(col, j, x);
                let y = inv.get(col, j) / &pivot;
                inv.set(col, j, y);
            }
            for i in (0..n).filter(|&i| i != col) {
                let f = a.get(i, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = a.get(i, j) - &f * a.get(col, j);
                    a.set(i, j, x);
                    let y = inv.get(i, j) - &f * inv.get(col, j);
                    inv.set(i, j, y);
                }
            }
        }
        Ok(Some(inv))
    }
}

/// Columns of `B (BᵀB)⁻¹`: the dual basis, with `⟨b_i, b♯_j⟩ = δ_ij`.
pub fn dual_basis(l: &Lattice) -> Result<RationalMatrix> {
    let b = RationalMatrix::from_int(l.basis());
    let gram_inv = RationalMatrix::from_int(&l.gram()).inverse()?.ok_or(Error::DependentColumns)?;
    b.mul(&gram_inv)
}

/// Orthogonal projection `B (BᵀB)⁻¹ Bᵀ` onto the span of the lattice.
pub fn projection(l: &Lattice) -> Result<RationalMatrix> {
    let b = RationalMatrix::from_int(l.basis());
    dual_basis(l)?.mul(&b.transpose())
}

/// `L♯/L`, the cokernel of the Gram matrix.
pub fn discriminant_group(l: &Lattice) -> FiniteAbelianGroup {
    cokernel_group(&l.gram())
}

/// `ℤⁿ / (C ⊕ F)`.
pub fn cutflow_group(c: &CellComplex) -> Result<FiniteAbelianGroup> {
    let cut = cut_lattice(c)?;
    let flow = flow_lattice(c)?;
    let g = cokernel_group(&cut.basis().hstack(flow.basis())?);
    if !g.is_finite() {
        return Err(Error::Inconsistency("cut and flow lattices do not have full rank together".into()));
    }
    Ok(g)
}

/// `K(Σ) = tor(ker ∂_{d−1} / im ∂_d ∂_dᵀ)`.
pub fn critical_group(c: &CellComplex) -> Result<FiniteAbelianGroup> {
    let d = c.dim();
    if d == 0 {
        return Err(Error::NeedsPositiveDimension);
    }
    let kernel = kernel_basis(c.boundary(d - 1));
    let b = c.top_boundary();
    let laplacian = b.mul(&b.transpose())?;
    let coords = IntegerSolver::new(&kernel)
        .solve_matrix(&laplacian)?
        .ok_or_else(|| Error::Inconsistency("up-down Laplacian leaves the cycle space".into()))?;
    Ok(cokernel_group(&coords).torsion())
}

/// `Σ` extended by `(d+1)`-cells whose boundaries are an integral basis of `ker ∂_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Acyclization {
    base: CellComplex,
    extra_boundary: IntMatrix,
}

impl Acyclization {
    pub fn base(&self) -> &CellComplex {
        &self.base
    }

    /// `∂_{d+1}(Ω)`.
    pub fn extra_boundary(&self) -> &IntMatrix {
        &self.extra_boundary
    }

    /// `Ω` as a complex; the new cells are labelled `w1, w2, …`.
    pub fn complex(&self) -> CellComplex {
        let d = self.base.dim();
        let mut cells: Vec<Vec<String>> = (0..=d).map(|i| self.base.cells(i).to_vec()).collect();
        cells.push((1..=self.extra_boundary.cols()).map(|i| format!("w{}", i)).collect());
        let mut boundaries: Vec<IntMatrix> = (1..=d).map(|i| self.base.boundary(i).clone()).collect();
        boundaries.push(self.extra_boundary.clone());
        CellComplex::from_parts(cells, boundaries, self.base.is_augmented())
    }
}

pub fn acyclization(c: &CellComplex) -> Result<Acyclization> {
    Ok(Acyclization { base: c.clone(), extra_boundary: kernel_basis(c.top_boundary()) })
}

/// `K*(Σ) = coker(∂ᵀ_{d+1} ∂_{d+1})` for an acyclization.
pub fn cocritical_group(c: &CellComplex) -> Result<FiniteAbelianGroup> {
    cocritical_group_of(&acyclization(c)?)
}

pub fn cocritical_group_of(omega: &Acyclization) -> Result<FiniteAbelianGroup> {
    let g = cokernel_group(&omega.extra_boundary().gram());
    if !g.is_finite() {
        return Err(Error::Inconsistency("acyclization boundary has dependent columns".into()));
    }
    Ok(g)
}

/// Result of an integral-basis construction whose hypothesis may not hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegralBasis {
    Basis(Vec<FacetVector>),
    HypothesisFailure(String),
}

impl IntegralBasis {
    pub fn basis(&self) -> Option<&[FacetVector]> {
        match self {
            IntegralBasis::Basis(b) => Some(b),
            IntegralBasis::HypothesisFailure(_) => None,
        }
    }
}

/// `{χ(Υ, σ) : σ ∈ Υ}`, an integral basis of `C` when `H̃_{d−1}(Υ)` is torsion-free.
pub fn integral_cut_basis(c: &CellComplex, upsilon: &[usize]) -> Result<IntegralBasis> {
    if !is_csf(c, upsilon)? {
        return Err(Error::NotAForest);
    }
    let t = forest_torsion(c, upsilon)?;
    if !t.is_one() {
        return Ok(IntegralBasis::HypothesisFailure(format!(
            "codimension-one homology of the forest has torsion of order {}",
            t
        )));
    }
    let vectors: Vec<FacetVector> =
        upsilon.iter().map(|&s| calibrated_cut_vector_for(c, upsilon, s)).collect::<Result<_>>()?;
    let coefficients: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.coefficients.clone()).collect();
    if !cut_lattice(c)?.is_generated_by(&coefficients)? {
        return Err(Error::Inconsistency("calibrated cut vectors do not generate the cut lattice".into()));
    }
    Ok(IntegralBasis::Basis(vectors))
}

/// `{φ̂(circuit(Υ, σ)) : σ ∉ Υ}`, an integral basis of `F` when
/// `H̃_{d−1}(Υ) = H̃_{d−1}(Σ)`.
pub fn integral_flow_basis(c: &CellComplex, upsilon: &[usize]) -> Result<IntegralBasis> {
    if !is_csf(c, upsilon)? {
        return Err(Error::NotAForest);
    }
    let d = c.dim() as i32;
    let h_upsilon = c.top_restriction(upsilon)?.reduced_homology(d - 1)?;
    let h_sigma = c.reduced_homology(d - 1)?;
    if h_upsilon != h_sigma {
        return Ok(IntegralBasis::HypothesisFailure(format!(
            "codimension-one homology differs: forest has {}, complex has {}",
            h_upsilon, h_sigma
        )));
    }
    let b = c.top_boundary();
    if IntegerSolver::new(&b.select_columns(upsilon)).solve_matrix(b)?.is_none() {
        return Ok(IntegralBasis::HypothesisFailure(
            "forest boundaries span a proper sublattice of the boundary lattice".into(),
        ));
    }
    let vectors: Vec<FacetVector> = (0..c.num_facets())
        .filter(|s| upsilon.binary_search(s).is_err())
        .map(|s| calibrated_flow_vector(c, &fundamental_circuit(c, upsilon, s)?))
        .collect::<Result<_>>()?;
    let coefficients: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.coefficients.clone()).collect();
    if !flow_lattice(c)?.is_generated_by(&coefficients)? {
        return Err(Error::Inconsistency("primitive circuit flows do not generate the flow lattice".into()));
    }
    Ok(IntegralBasis::Basis(vectors))
}

/// One line of an identity report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl IdentityCheck {
    pub fn new(name: &str, lhs: impl ToString, rhs: impl ToString) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        let pass = lhs == rhs;
        IdentityCheck { name: name.into(), lhs, rhs, pass }
    }
}

/// The groups and counts attached to a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSummary {
    pub tau: BigInt,
    pub tau_star: BigInt,
    pub torsion: BigInt,
    pub critical: FiniteAbelianGroup,
    pub cocritical: FiniteAbelianGroup,
    pub cutflow: FiniteAbelianGroup,
    pub cut_discriminant: FiniteAbelianGroup,
    pub flow_discriminant: FiniteAbelianGroup,
}

pub fn group_summary(c: &CellComplex) -> Result<GroupSummary> {
    Ok(GroupSummary {
        tau: tau(c)?,
        tau_star: tau_star(c)?,
        torsion: codim_one_torsion(c)?,
        critical: critical_group(c)?,
        cocritical: cocritical_group(c)?,
        cutflow: cutflow_group(c)?,
        cut_discriminant: discriminant_group(&cut_lattice(c)?),
        flow_discriminant: discriminant_group(&flow_lattice(c)?),
    })
}

fn order(g: &FiniteAbelianGroup) -> BigInt {
    g.order().unwrap_or_else(BigInt::zero)
}

/// Cardinality and isomorphism checks tying the groups to `τ`, `τ*` and
/// `t = t_{d−1}(Σ)`.
pub fn verify_group_identities(c: &CellComplex) -> Result<Vec<IdentityCheck>> {
    Ok(identity_checks(&group_summary(c)?))
}

pub fn identity_checks(s: &GroupSummary) -> Vec<IdentityCheck> {
    let t = &s.torsion;
    let t2 = t * t;
    let k = order(&s.critical);
    let ks = order(&s.cocritical);
    let cf = order(&s.cutflow);
    let cd = order(&s.cut_discriminant);
    let fd = order(&s.flow_discriminant);
    vec![
        IdentityCheck::new("|K| = tau", &k, &s.tau),
        IdentityCheck::new("|C#/C| = tau", &cd, &s.tau),
        IdentityCheck::new("K = C#/C", &s.critical, &s.cut_discriminant),
        IdentityCheck::new("|cutflow| * t = tau", &cf * t, &s.tau),
        IdentityCheck::new("|F#/F| * t^2 = tau", &fd * &t2, &s.tau),
        IdentityCheck::new("|K*| = |F#/F|", &ks, &fd),
        IdentityCheck::new("K* = F#/F", &s.cocritical, &s.flow_discriminant),
        IdentityCheck::new("tau* * t^2 = tau", &s.tau_star * &t2, &s.tau),
        IdentityCheck::new("|K*| = tau*", &ks, &s.tau_star),
        IdentityCheck::new("|C#/C| = |cutflow| * t", &cd, &cf * t),
        IdentityCheck::new("|cutflow| = t * |F#/F|", &cf, t * &fd),
    ]
}

/// `[(Cut ∩ ℤⁿ) : C]`, the index of the cut lattice in its saturation.
pub fn cut_saturation_index(c: &CellComplex) -> Result<BigInt> {
    let cut = cut_lattice(c)?;
    let sat = Lattice::new(crate::exact::saturation(cut.basis())?)?;
    let coords = IntegerSolver::new(sat.basis())
        .solve_matrix(cut.basis())?
        .ok_or_else(|| Error::Inconsistency("lattice is not inside its saturation".into()))?;
    Ok(det(&coords)?.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::forest::enumerate_csfs;

    fn int(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(int(n), int(d))
    }

    #[test]
    fn lattice_examples() {
        let rp2 = fixtures::projective_plane();
        assert_eq!(cut_lattice(&rp2).unwrap().basis(), &IntMatrix::from_i64(&[&[2]]));
        assert_eq!(flow_lattice(&rp2).unwrap().rank(), 0);
        let vic = fixtures::vic(6, 2);
        assert_eq!(cut_lattice(&vic).unwrap().basis(), &IntMatrix::from_i64(&[&[6], &[2]]));
        let f = flow_lattice(&vic).unwrap();
        assert!(f.basis() == &IntMatrix::from_i64(&[&[1], &[-3]]) || f.basis() == &IntMatrix::from_i64(&[&[-1], &[3]]));
        let k3 = fixtures::triangle_graph();
        assert_eq!(cut_lattice(&k3).unwrap().rank(), 2);
        let f = flow_lattice(&k3).unwrap();
        assert_eq!(f.rank(), 1);
        let v: Vec<BigInt> = f.basis().column(0).iter().map(|x| x.abs()).collect();
        assert_eq!(v, vec![int(1); 3]);
    }

    #[test]
    fn dual_basis_examples() {
        let l = Lattice::new(IntMatrix::from_i64(&[&[2]])).unwrap();
        assert_eq!(dual_basis(&l).unwrap().column(0), vec![rat(1, 2)]);
        let id = Lattice::new(IntMatrix::identity(3)).unwrap();
        assert_eq!(dual_basis(&id).unwrap(), RationalMatrix::from_int(&IntMatrix::identity(3)));
        let l = Lattice::new(IntMatrix::from_i64(&[&[6], &[2]])).unwrap();
        assert_eq!(dual_basis(&l).unwrap().column(0), vec![rat(3, 20), rat(1, 20)]);
    }

    #[test]
    fn dual_pairs_to_identity() {
        let l = Lattice::new(IntMatrix::from_i64(&[&[1, 0], &[2, 3], &[0, 5]])).unwrap();
        let pairing = RationalMatrix::from_int(l.basis()).transpose().mul(&dual_basis(&l).unwrap()).unwrap();
        assert_eq!(pairing, RationalMatrix::identity(2));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(
            discriminant_group(&cut_lattice(&fixtures::projective_plane()).unwrap()),
            FiniteAbelianGroup::cyclic(4)
        );
        let vic = fixtures::vic(6, 2);
        assert_eq!(discriminant_group(&flow_lattice(&vic).unwrap()), FiniteAbelianGroup::cyclic(10));
        assert_eq!(discriminant_group(&cut_lattice(&vic).unwrap()), FiniteAbelianGroup::cyclic(40));
    }

    #[test]
    fn discriminant_is_basis_invariant() {
        let l = Lattice::new(IntMatrix::from_i64(&[&[1, 0], &[2, 3], &[0, 5]])).unwrap();
        let u = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let l2 = Lattice::new(l.basis().mul(&u).unwrap()).unwrap();
        assert_eq!(discriminant_group(&l), discriminant_group(&l2));
        assert_eq!(l.determinant(), l2.determinant());
        assert_eq!(discriminant_group(&l).order(), Some(l.determinant()));
    }

    #[test]
    fn group_examples() {
        let rp2 = fixtures::projective_plane();
        assert_eq!(critical_group(&rp2).unwrap(), FiniteAbelianGroup::cyclic(4));
        assert_eq!(cutflow_group(&rp2).unwrap(), FiniteAbelianGroup::cyclic(2));
        assert!(cocritical_group(&rp2).unwrap().is_trivial());
        let k3 = fixtures::triangle_graph();
        assert_eq!(cutflow_group(&k3).unwrap(), FiniteAbelianGroup::cyclic(3));
        assert_eq!(critical_group(&k3).unwrap(), FiniteAbelianGroup::cyclic(3));
        assert_eq!(cocritical_group(&k3).unwrap(), FiniteAbelianGroup::cyclic(3));
        let vic = fixtures::vic(6, 2);
        assert_eq!(cutflow_group(&vic).unwrap(), FiniteAbelianGroup::cyclic(20));
        assert_eq!(cocritical_group(&vic).unwrap(), FiniteAbelianGroup::cyclic(10));
        assert_eq!(critical_group(&fixtures::bipyramid()).unwrap().order(), Some(int(15)));
    }

    #[test]
    fn vic_sweep() {
        use num_integer::Integer;
        for a in 1..=6i64 {
            for b in 1..=6i64 {
                let c = fixtures::vic(a, b);
                let tau = int(a * a + b * b);
                let g = int(a.gcd(&b));
                assert_eq!(critical_group(&c).unwrap(), FiniteAbelianGroup::cyclic(tau.clone()));
                assert_eq!(cutflow_group(&c).unwrap(), FiniteAbelianGroup::cyclic(&tau / &g));
                assert_eq!(cocritical_group(&c).unwrap(), FiniteAbelianGroup::cyclic(&tau / (&g * &g)));
            }
        }
    }

    #[test]
    fn acyclization_examples() {
        let rp2 = acyclization(&fixtures::projective_plane()).unwrap();
        assert_eq!(rp2.extra_boundary().cols(), 0);
        let k3 = acyclization(&fixtures::triangle_graph()).unwrap();
        let col: Vec<BigInt> = k3.extra_boundary().column(0).iter().map(|x| x.abs()).collect();
        assert_eq!(col, vec![int(1); 3]);
        let theta = fixtures::bipyramid();
        let a = acyclization(&theta).unwrap();
        assert_eq!(a.extra_boundary().cols(), 2);
        for (_, c) in fixtures::named() {
            let omega = acyclization(&c).unwrap().complex();
            assert_eq!(omega.validate(), Ok(()));
            let d = c.dim() as i32;
            assert!(omega.reduced_homology(d + 1).unwrap().is_trivial());
            assert!(omega.reduced_homology(d).unwrap().is_trivial());
        }
    }

    #[test]
    fn cocritical_is_kernel_basis_invariant() {
        let theta = fixtures::bipyramid();
        let a = acyclization(&theta).unwrap();
        let u = IntMatrix::from_i64(&[&[1, 3], &[1, 4]]);
        let other = Acyclization { base: theta.clone(), extra_boundary: a.extra_boundary().mul(&u).unwrap() };
        assert_eq!(cocritical_group_of(&a).unwrap(), cocritical_group_of(&other).unwrap());
    }

    #[test]
    fn identities_on_fixtures() {
        for (name, c) in fixtures::named() {
            for check in verify_group_identities(&c).unwrap() {
                assert!(check.pass, "{}: {} ({} vs {})", name, check.name, check.lhs, check.rhs);
            }
        }
    }

    #[test]
    fn rp2_identity_values() {
        let s = group_summary(&fixtures::projective_plane()).unwrap();
        assert_eq!((s.tau.clone(), s.tau_star.clone(), s.torsion.clone()), (int(4), int(1), int(2)));
        assert_eq!(s.cutflow.order(), Some(int(2)));
    }

    #[test]
    fn integral_bases() {
        let theta = fixtures::bipyramid();
        for f in enumerate_csfs(&theta).unwrap() {
            let cut = integral_cut_basis(&theta, &f.facets).unwrap();
            assert_eq!(cut.basis().unwrap().len(), 5);
            let flow = integral_flow_basis(&theta, &f.facets).unwrap();
            assert_eq!(flow.basis().unwrap().len(), 2);
        }
        let k3 = fixtures::triangle_graph();
        assert_eq!(integral_cut_basis(&k3, &[0, 1]).unwrap().basis().unwrap().len(), 2);
        assert_eq!(integral_flow_basis(&k3, &[0, 1]).unwrap().basis().unwrap().len(), 1);
        let tree = CellComplex::from_simplicial_facets(&[vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(integral_flow_basis(&tree, &[0, 1]).unwrap(), IntegralBasis::Basis(vec![]));
        assert_eq!(flow_lattice(&tree).unwrap().rank(), 0);

        let c = fixtures::complete_2_complex(6);
        let u = c.facet_indices(&fixtures::rp2_six_vertex_labels()).unwrap();
        assert!(matches!(integral_cut_basis(&c, &u).unwrap(), IntegralBasis::HypothesisFailure(_)));
        assert!(matches!(integral_flow_basis(&c, &u).unwrap(), IntegralBasis::HypothesisFailure(_)));
    }

    #[test]
    fn projection_properties() {
        for (_, c) in fixtures::named() {
            let f = flow_lattice(&c).unwrap();
            if f.rank() == 0 {
                continue;
            }
            let p = projection(&f).unwrap();
            assert_eq!(p.mul(&p).unwrap(), p);
            assert_eq!(p.transpose(), p);
            let b = RationalMatrix::from_int(f.basis());
            assert_eq!(p.mul(&b).unwrap(), b);
            assert!(crate::exact::minors_gcd(f.basis(), f.rank()).unwrap().is_one());
            // columns of P generate F♯: the dual basis is an integer combination of them and vice versa
            let dual = dual_basis(&f).unwrap();
            let pb = p.mul(&RationalMatrix::from_int(&IntMatrix::identity(f.ambient_dim()))).unwrap();
            // P = dual · Bᵀ, so columns of P are integer combinations of the dual basis
            assert_eq!(dual.mul(&b.transpose()).unwrap(), pb);
        }
    }

    #[test]
    fn cut_saturation_index_is_torsion() {
        for (_, c) in fixtures::named() {
            assert_eq!(cut_saturation_index(&c).unwrap(), codim_one_torsion(&c).unwrap());
        }
    }
}
