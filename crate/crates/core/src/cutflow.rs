//! Bonds and circuits of the cellular matroid and their characteristic
//! vectors in the cut and flow spaces.
//!
//! Emitted vectors are normalized so that their first nonzero coefficient
//! (in facet order) is positive. The `*_raw` variants keep the sign that
//! falls out of the defining formula.

use alloc::vec::Vec;
use alloc::{format, vec};
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::complex::{check_facets, CellComplex};
use crate::exact::{cokernel_group, content, det, kernel_basis, IntMatrix};
use crate::forest::{
    down_up_minor, enumerate_csfs, first_row_basis, forest_torsion, is_csf, mu_by_determinant, relative_sign_with,
    substitute,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Cut,
    Flow,
}

/// An integer vector indexed by the facets of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FacetVector {
    pub coefficients: Vec<BigInt>,
    pub role: Role,
}

impl FacetVector {
    pub fn new(coefficients: Vec<BigInt>, role: Role) -> Self {
        FacetVector { coefficients, role }
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coefficients.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
    }

    pub fn dot(&self, other: &FacetVector) -> BigInt {
        self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a * b).sum()
    }

    /// gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        content(&self.coefficients)
    }

    /// Scaled by ±1 so the first nonzero coefficient is positive.
    pub fn normalized(mut self) -> Self {
        if self.coefficients.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in self.coefficients.iter_mut() {
                *x = -&*x;
            }
        }
        self
    }

    /// Exact division of every coefficient.
    pub fn divide(&self, by: &BigInt) -> Result<Self> {
        let mut out = Vec::with_capacity(self.len());
        for x in &self.coefficients {
            let (q, r) = x.div_rem(by);
            if by.is_zero() || !r.is_zero() {
                return Err(Error::Inconsistency(format!("{} is not divisible by {}", x, by)));
            }
            out.push(q);
        }
        Ok(FacetVector { coefficients: out, role: self.role })
    }

    /// Whether the vectors agree up to a global sign.
    pub fn eq_up_to_sign(&self, other: &FacetVector) -> bool {
        self.coefficients == other.coefficients
            || self.coefficients.iter().zip(&other.coefficients).all(|(a, b)| *a == -b) && self.len() == other.len()
    }
}

fn require_csf(c: &CellComplex, upsilon: &[usize]) -> Result<()> {
    if !is_csf(c, upsilon)? {
        return Err(Error::NotAForest);
    }
    Ok(())
}

/// `σ` together with every `ρ ∉ Υ` for which `Υ ∖ σ ∪ ρ` is a spanning forest.
pub fn fundamental_bond(c: &CellComplex, upsilon: &[usize], sigma: usize) -> Result<Vec<usize>> {
    require_csf(c, upsilon)?;
    if upsilon.binary_search(&sigma).is_err() {
        return Err(Error::NotInForest(sigma));
    }
    let r = upsilon.len();
    let mut bond = Vec::new();
    for rho in 0..c.num_facets() {
        if rho == sigma {
            bond.push(rho);
            continue;
        }
        if upsilon.binary_search(&rho).is_ok() {
            continue;
        }
        let swapped = substitute(upsilon, sigma, rho)?;
        if c.top_boundary().select_columns(&swapped).rank() == r {
            bond.push(rho);
        }
    }
    Ok(bond)
}

/// The unique circuit contained in `Υ ∪ σ`.
pub fn fundamental_circuit(c: &CellComplex, upsilon: &[usize], sigma: usize) -> Result<Vec<usize>> {
    require_csf(c, upsilon)?;
    if sigma >= c.num_facets() {
        return Err(Error::FacetOutOfRange(sigma));
    }
    if upsilon.binary_search(&sigma).is_ok() {
        return Err(Error::AlreadyInForest(sigma));
    }
    let mut cols = upsilon.to_vec();
    cols.push(sigma);
    cols.sort_unstable();
    let k = kernel_basis(&c.top_boundary().select_columns(&cols));
    if k.cols() != 1 {
        return Err(Error::Inconsistency(format!("forest plus one facet has nullity {}", k.cols())));
    }
    Ok((0..cols.len()).filter(|&i| !k[(i, 0)].is_zero()).map(|i| cols[i]).collect())
}

fn canonical_order(sets: &mut Vec<Vec<usize>>) {
    sets.sort_by(|a, b| match a.len().cmp(&b.len()) {
        Ordering::Equal => a.cmp(b),
        o => o,
    });
    sets.dedup();
}

/// All circuits, ordered by size and then lexicographically. Every circuit is
/// the fundamental circuit of some spanning forest, so collecting those over
/// all forests is exhaustive.
pub fn enumerate_circuits(c: &CellComplex) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for f in enumerate_csfs(c)? {
        for sigma in (0..c.num_facets()).filter(|s| f.facets.binary_search(s).is_err()) {
            out.push(fundamental_circuit(c, &f.facets, sigma)?);
        }
    }
    canonical_order(&mut out);
    Ok(out)
}

/// All bonds (cocircuits), ordered by size and then lexicographically.
pub fn enumerate_cocircuits(c: &CellComplex) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for f in enumerate_csfs(c)? {
        for &sigma in &f.facets {
            out.push(fundamental_bond(c, &f.facets, sigma)?);
        }
    }
    canonical_order(&mut out);
    Ok(out)
}

/// Whether `set` is a minimal dependent set of columns.
pub fn is_circuit(c: &CellComplex, set: &[usize]) -> Result<bool> {
    check_facets(c, set)?;
    if set.is_empty() {
        return Ok(false);
    }
    let k = kernel_basis(&c.top_boundary().select_columns(set));
    Ok(k.cols() == 1 && (0..set.len()).all(|i| !k[(i, 0)].is_zero()))
}

/// `χ̄(Υ, σ)` straight from its definition,
/// `Σ_j (−1)^j det L^du_{Υ∖σ, Υ∖σ_j} · L^du σ_j` (positions `j` counted from 1).
pub fn uncalibrated_cut_vector_raw(c: &CellComplex, upsilon: &[usize], sigma: usize) -> Result<FacetVector> {
    require_csf(c, upsilon)?;
    let pos = upsilon.binary_search(&sigma).map_err(|_| Error::NotInForest(sigma))?;
    let b = c.top_boundary();
    let laplacian = b.transpose().mul(b)?;
    let rest: Vec<usize> = upsilon.iter().copied().filter(|&x| x != sigma).collect();
    let mut coefficients = vec![BigInt::zero(); c.num_facets()];
    for (j, &sj) in upsilon.iter().enumerate() {
        let cols: Vec<usize> = upsilon.iter().copied().filter(|&x| x != sj).collect();
        let mut minor = down_up_minor(c, &rest, &cols)?;
        if j % 2 == 0 {
            minor = -minor;
        }
        if minor.is_zero() {
            continue;
        }
        for (rho, coeff) in coefficients.iter_mut().enumerate() {
            *coeff += &minor * &laplacian[(rho, sj)];
        }
    }
    // The same vector from row expansion: coefficient on ρ is
    // det L^du_{Υ∖σ∪ρ, Υ} with ρ in σ's row, up to the expansion sign.
    let expansion_sign = if pos % 2 == 0 { -1 } else { 1 };
    for (rho, coeff) in coefficients.iter().enumerate() {
        let expected = if rho != sigma && upsilon.binary_search(&rho).is_ok() {
            BigInt::zero()
        } else {
            BigInt::from(expansion_sign) * down_up_minor(c, &substitute(upsilon, sigma, rho)?, upsilon)?
        };
        if *coeff != expected {
            return Err(Error::Inconsistency(format!(
                "bond vector coefficient {} differs between definition ({}) and minor formula ({})",
                rho, coeff, expected
            )));
        }
    }
    Ok(FacetVector::new(coefficients, Role::Cut))
}

/// `χ̄(Υ, σ)`, normalized. Supported exactly on `bond(Υ, σ)`.
pub fn uncalibrated_cut_vector(c: &CellComplex, upsilon: &[usize], sigma: usize) -> Result<FacetVector> {
    Ok(uncalibrated_cut_vector_raw(c, upsilon, sigma)?.normalized())
}

/// `χ_A(B) = Σ_{ρ∈B} ε^A_{σ,ρ} t_{d−1}(A ∪ ρ) ρ`, checked against
/// `χ̄(A ∪ σ, σ) / μ_{A∪σ}`. Normalized.
pub fn calibrated_cut_vector(c: &CellComplex, a: &[usize], bond: &[usize], sigma: usize) -> Result<FacetVector> {
    check_facets(c, a)?;
    check_facets(c, bond)?;
    if a.binary_search(&sigma).is_ok() || bond.binary_search(&sigma).is_err() {
        return Err(Error::NotABond);
    }
    let mut upsilon = a.to_vec();
    upsilon.push(sigma);
    upsilon.sort_unstable();
    if !is_csf(c, &upsilon)? || fundamental_bond(c, &upsilon, sigma)? != bond {
        return Err(Error::NotABond);
    }
    let raw = calibrated_raw(c, &upsilon, sigma)?;
    Ok(raw.normalized())
}

/// `χ(Υ, σ) = χ_{Υ∖σ}(bond(Υ, σ))`, normalized.
pub fn calibrated_cut_vector_for(c: &CellComplex, upsilon: &[usize], sigma: usize) -> Result<FacetVector> {
    require_csf(c, upsilon)?;
    if upsilon.binary_search(&sigma).is_err() {
        return Err(Error::NotInForest(sigma));
    }
    Ok(calibrated_raw(c, upsilon, sigma)?.normalized())
}

fn calibrated_raw(c: &CellComplex, upsilon: &[usize], sigma: usize) -> Result<FacetVector> {
    let bond = fundamental_bond(c, upsilon, sigma)?;
    let s = first_row_basis(c)?;
    let mut coefficients = vec![BigInt::zero(); c.num_facets()];
    for &rho in &bond {
        let mut forest = substitute(upsilon, sigma, rho)?;
        forest.sort_unstable();
        let eps = relative_sign_with(c, &s, upsilon, sigma, rho)?;
        coefficients[rho] = BigInt::from(eps) * forest_torsion(c, &forest)?;
    }
    let calibrated = FacetVector::new(coefficients, Role::Cut);

    // Cross-check against the uncalibrated vector. The definition's sign is
    // (−1)^{pos+1} times the minor formula, whose coefficient on σ is
    // det L^du_Υ > 0; ε_{σ,σ} = +1, so the scaled vectors must agree up to
    // that fixed sign.
    let t_upsilon = forest_torsion(c, upsilon)?;
    let mu = mu_by_determinant(c, upsilon, &t_upsilon)?;
    let uncal = uncalibrated_cut_vector_raw(c, upsilon, sigma)?;
    let pos = upsilon.binary_search(&sigma).expect("σ ∈ Υ");
    let mut scaled = uncal.divide(&mu)?;
    if pos.is_multiple_of(2) {
        scaled = FacetVector::new(scaled.coefficients.iter().map(|x| -x).collect(), Role::Cut);
    }
    if scaled != calibrated {
        return Err(Error::Inconsistency(format!(
            "calibrated vector {:?} differs from uncalibrated / μ = {:?}",
            calibrated.coefficients, scaled.coefficients
        )));
    }
    Ok(calibrated)
}

/// One member of the cut basis attached to a spanning forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutBasisEntry {
    pub sigma: usize,
    pub bond: Vec<usize>,
    pub uncalibrated: FacetVector,
    pub calibrated: FacetVector,
}

/// `{χ̄(Υ, σ) : σ ∈ Υ}` with calibrated versions, in the order of `Υ`.
pub fn cut_basis(c: &CellComplex, upsilon: &[usize]) -> Result<Vec<CutBasisEntry>> {
    require_csf(c, upsilon)?;
    upsilon
        .iter()
        .map(|&sigma| {
            Ok(CutBasisEntry {
                sigma,
                bond: fundamental_bond(c, upsilon, sigma)?,
                uncalibrated: uncalibrated_cut_vector(c, upsilon, sigma)?,
                calibrated: calibrated_cut_vector_for(c, upsilon, sigma)?,
            })
        })
        .collect()
}

fn circuit_kernel(c: &CellComplex, circuit: &[usize]) -> Result<Vec<BigInt>> {
    check_facets(c, circuit)?;
    if circuit.is_empty() {
        return Err(Error::NotACircuit);
    }
    let k = kernel_basis(&c.top_boundary().select_columns(circuit));
    if k.cols() != 1 {
        return Err(Error::NotACircuit);
    }
    let v = k.column(0);
    if v.iter().any(Zero::is_zero) {
        return Err(Error::NotACircuit);
    }
    Ok(v)
}

/// `|tor coker ∂_{C∖σ}|` for each `σ ∈ C`, in the order of `C`.
pub fn flow_magnitudes(c: &CellComplex, circuit: &[usize]) -> Result<Vec<BigInt>> {
    let n = c.top_boundary().select_columns(circuit);
    Ok((0..circuit.len())
        .map(|i| {
            let keep: Vec<usize> = (0..circuit.len()).filter(|&j| j != i).collect();
            cokernel_group(&n.select_columns(&keep)).torsion_order()
        })
        .collect())
}

/// `t_{d−1}(Δ ∖ σ)` for `Δ = Σ_(d−1) ∪ C`, each from homology.
pub fn flow_magnitudes_by_homology(c: &CellComplex, circuit: &[usize]) -> Result<Vec<BigInt>> {
    let d = c.dim() as i32;
    circuit
        .iter()
        .map(|&s| {
            let rest: Vec<usize> = circuit.iter().copied().filter(|&x| x != s).collect();
            c.top_restriction(&rest)?.torsion_coefficient(d - 1)
        })
        .collect()
}

/// `φ(C)`: the flow supported on `C` whose coefficient magnitudes are the
/// torsion orders `|tor coker ∂_{C∖σ}|`. Normalized.
pub fn flow_vector(c: &CellComplex, circuit: &[usize]) -> Result<FacetVector> {
    let kernel = circuit_kernel(c, circuit)?;
    let magnitudes = flow_magnitudes(c, circuit)?;
    // magnitudes must be a common multiple of the primitive kernel vector
    let scale = &magnitudes[0] / kernel[0].abs();
    let mut coefficients = vec![BigInt::zero(); c.num_facets()];
    for (i, &s) in circuit.iter().enumerate() {
        if magnitudes[i] != &scale * kernel[i].abs() {
            return Err(Error::Inconsistency(format!(
                "flow magnitudes {:?} are not proportional to the kernel vector {:?}",
                magnitudes, kernel
            )));
        }
        coefficients[s] = if kernel[i].is_negative() { -&magnitudes[i] } else { magnitudes[i].clone() };
    }
    let v = FacetVector::new(coefficients, Role::Flow);
    if !c.top_boundary().mul_vec(&v.coefficients)?.iter().all(Zero::is_zero) {
        return Err(Error::Inconsistency("flow vector is not a cycle".into()));
    }
    Ok(v.normalized())
}

/// `φ̂(C) = φ(C) / gcd`, the primitive integer flow supported on `C`.
pub fn calibrated_flow_vector(c: &CellComplex, circuit: &[usize]) -> Result<FacetVector> {
    let phi = flow_vector(c, circuit)?;
    phi.divide(&phi.content())
}

/// One member of the flow basis attached to a spanning forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowBasisEntry {
    pub sigma: usize,
    pub circuit: Vec<usize>,
    pub flow: FacetVector,
    pub calibrated: FacetVector,
}

/// `{φ(circuit(Υ, σ)) : σ ∉ Υ}` in facet order.
pub fn flow_basis(c: &CellComplex, upsilon: &[usize]) -> Result<Vec<FlowBasisEntry>> {
    require_csf(c, upsilon)?;
    (0..c.num_facets())
        .filter(|s| upsilon.binary_search(s).is_err())
        .map(|sigma| {
            let circuit = fundamental_circuit(c, upsilon, sigma)?;
            Ok(FlowBasisEntry {
                sigma,
                flow: flow_vector(c, &circuit)?,
                calibrated: calibrated_flow_vector(c, &circuit)?,
                circuit,
            })
        })
        .collect()
}

/// Vectors as the columns of an `n × k` matrix.
pub fn vectors_as_columns(n: usize, vectors: &[&FacetVector]) -> Result<IntMatrix> {
    let cols: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.coefficients.clone()).collect();
    IntMatrix::from_columns(n, &cols)
}

/// `|det|` of the square matrix of a set of `n` vectors; nonzero iff they span ℚⁿ.
pub fn spanning_determinant(n: usize, vectors: &[&FacetVector]) -> Result<BigInt> {
    Ok(det(&vectors_as_columns(n, vectors)?)?.abs())
}
