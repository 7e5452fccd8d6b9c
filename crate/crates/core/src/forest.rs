//! Cellular spanning forests (column bases of `∂_d`), relatively acyclic
//! codimension-one subcomplexes (complements of row bases), and the
//! torsion-weighted counts built from them.
//!
//! A relatively acyclic `Γ` is always passed around by its complement
//! `R = Σ_{d−1} ∖ Γ_{d−1}` ("kept rows"), since that is the row set of `∂`
//! that every formula actually touches.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complex::{check_facets, CellComplex, RelativeComplex, Subcomplex};
use crate::exact::{cokernel_group, det, independent_column_sets, signum, EchelonBasis};
use crate::lattice::acyclization;
use crate::{Error, Result};

/// A cellular spanning forest together with `t_{d−1}(Υ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestCertificate {
    pub facets: Vec<usize>,
    pub torsion: BigInt,
}

/// A relatively acyclic `Γ`, given by the kept rows `R` and the
/// `(d−1)`-cells of `Γ`, together with `t_{d−1}(Σ, Γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelAcyclicCertificate {
    pub kept_rows: Vec<usize>,
    pub gamma_cells: Vec<usize>,
    pub torsion: BigInt,
}

fn top_dim(c: &CellComplex) -> Result<usize> {
    match c.dim() {
        0 => Err(Error::NeedsPositiveDimension),
        d => Ok(d),
    }
}

/// `r(Σ) = rank ∂_d`.
pub fn rank(c: &CellComplex) -> Result<usize> {
    top_dim(c)?;
    Ok(c.top_boundary().rank())
}

/// `t_{d−1}(Σ)`.
pub fn codim_one_torsion(c: &CellComplex) -> Result<BigInt> {
    let d = top_dim(c)?;
    c.torsion_coefficient(d as i32 - 1)
}

/// `|F| = r` and the columns `F` of `∂_d` are independent.
pub fn is_csf(c: &CellComplex, facets: &[usize]) -> Result<bool> {
    check_facets(c, facets)?;
    let r = rank(c)?;
    Ok(facets.len() == r && c.top_boundary().select_columns(facets).rank() == r)
}

/// The three defining conditions of a spanning forest, evaluated by
/// homology of `Υ = Σ_(d−1) ∪ F`: top homology vanishes, codimension-one
/// Betti numbers agree, and `|F| = |Σ_d| − β̃_d(Σ)`.
pub fn csf_conditions(c: &CellComplex, facets: &[usize]) -> Result<[bool; 3]> {
    let d = top_dim(c)? as i32;
    let upsilon = c.top_restriction(facets)?;
    let acyclic = upsilon.reduced_homology(d)?.is_trivial();
    let connected = upsilon.betti(d - 1)? == c.betti(d - 1)?;
    let count = facets.len() + c.betti(d)? == c.num_facets();
    Ok([acyclic, connected, count])
}

/// `t_{d−1}(Υ)` as the torsion of `coker ∂_Υ`. Valid because `ker ∂_{d−1}`
/// is a direct summand of the chain group.
pub fn forest_torsion(c: &CellComplex, facets: &[usize]) -> Result<BigInt> {
    check_facets(c, facets)?;
    top_dim(c)?;
    Ok(cokernel_group(&c.top_boundary().select_columns(facets)).torsion_order())
}

/// Every spanning forest, in lexicographic order of facet index sets.
pub fn enumerate_csfs(c: &CellComplex) -> Result<Vec<ForestCertificate>> {
    let r = rank(c)?;
    independent_column_sets(c.top_boundary(), r)
        .into_iter()
        .map(|facets| {
            let torsion = forest_torsion(c, &facets)?;
            Ok(ForestCertificate { facets, torsion })
        })
        .collect()
}

/// The lexicographically first spanning forest (greedy).
pub fn first_csf(c: &CellComplex) -> Result<Vec<usize>> {
    top_dim(c)?;
    Ok(greedy_basis(&c.top_boundary().columns()))
}

fn greedy_basis(vectors: &[Vec<BigInt>]) -> Vec<usize> {
    let mut basis = EchelonBasis::new();
    (0..vectors.len()).filter(|&j| basis.push(&vectors[j])).collect()
}

/// `τ(Σ) = Σ_Υ t_{d−1}(Υ)²` over all spanning forests.
pub fn tau(c: &CellComplex) -> Result<BigInt> {
    Ok(enumerate_csfs(c)?.iter().map(|f| &f.torsion * &f.torsion).sum())
}

fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| set.binary_search(i).is_err()).collect()
}

fn check_rows(c: &CellComplex, rows: &[usize]) -> Result<()> {
    let d = top_dim(c)?;
    let n = c.num_cells(d - 1);
    if let Some(&bad) = rows.iter().find(|&&x| x >= n) {
        return Err(Error::SkeletonPrecondition(format!("(d-1)-cell index {} out of range", bad)));
    }
    if rows.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::SkeletonPrecondition("row indices must be strictly increasing".into()));
    }
    Ok(())
}

/// Converts the `(d−1)`-cells of `Γ` into the kept rows `R`.
pub fn kept_rows_of(c: &CellComplex, gamma_cells: &[usize]) -> Result<Vec<usize>> {
    let d = top_dim(c)?;
    let mut g = gamma_cells.to_vec();
    g.sort_unstable();
    g.dedup();
    check_rows(c, &g)?;
    Ok(complement(c.num_cells(d - 1), &g))
}

/// Whether `Γ = Σ_(d−2) ∪ (Σ_{d−1} ∖ R)` is relatively acyclic: the rows `R`
/// form a row basis of `∂_d`. Requires `|R| = r`.
pub fn is_relatively_acyclic(c: &CellComplex, kept_rows: &[usize]) -> Result<bool> {
    check_rows(c, kept_rows)?;
    let r = rank(c)?;
    if kept_rows.len() != r {
        return Err(Error::SkeletonPrecondition(format!(
            "Γ must omit exactly r = {} cells of dimension d-1, omits {}",
            r,
            kept_rows.len()
        )));
    }
    Ok(c.top_boundary().select_rows(kept_rows).rank() == r)
}

/// Relative acyclicity from its homological definition: `H̃_k(Σ, Γ; ℚ) = 0`
/// for `k < d` and `H̃_d(Σ; ℚ) → H̃_d(Σ, Γ; ℚ)` onto (it is always injective
/// here since `Γ` has no `d`-cells).
pub fn is_relatively_acyclic_by_homology(c: &CellComplex, kept_rows: &[usize]) -> Result<bool> {
    let d = top_dim(c)?;
    check_rows(c, kept_rows)?;
    let gamma_cells = complement(c.num_cells(d - 1), kept_rows);
    let rel = RelativeComplex::new(Subcomplex::codimension_one(c, &gamma_cells)?);
    for k in -1..d as i32 {
        if rel.homology(k)?.free_rank() != 0 {
            return Ok(false);
        }
    }
    Ok(rel.homology(d as i32)?.free_rank() == c.betti(d as i32)?)
}

/// `t_{d−1}(Σ, Γ)` as the torsion of `coker ∂_{R,·}`.
pub fn relative_torsion(c: &CellComplex, kept_rows: &[usize]) -> Result<BigInt> {
    check_rows(c, kept_rows)?;
    Ok(cokernel_group(&c.top_boundary().select_rows(kept_rows)).torsion_order())
}

/// `t_{d−1}(Σ, Γ)` through relative homology of the pair.
pub fn relative_torsion_by_homology(c: &CellComplex, kept_rows: &[usize]) -> Result<BigInt> {
    let d = top_dim(c)?;
    check_rows(c, kept_rows)?;
    let gamma_cells = complement(c.num_cells(d - 1), kept_rows);
    RelativeComplex::new(Subcomplex::codimension_one(c, &gamma_cells)?).torsion_coefficient(d as i32 - 1)
}

/// Every relatively acyclic `Γ`, in lexicographic order of kept rows.
pub fn enumerate_relatively_acyclic(c: &CellComplex) -> Result<Vec<RelAcyclicCertificate>> {
    let d = top_dim(c)?;
    let r = rank(c)?;
    let n = c.num_cells(d - 1);
    independent_column_sets(&c.top_boundary().transpose(), r)
        .into_iter()
        .map(|kept_rows| {
            let torsion = relative_torsion(c, &kept_rows)?;
            let gamma_cells = complement(n, &kept_rows);
            Ok(RelAcyclicCertificate { kept_rows, gamma_cells, torsion })
        })
        .collect()
}

/// The lexicographically first row basis of `∂_d`.
pub fn first_row_basis(c: &CellComplex) -> Result<Vec<usize>> {
    top_dim(c)?;
    Ok(greedy_basis(&c.top_boundary().transpose().columns()))
}

fn exact_div(n: &BigInt, d: &BigInt, what: &str) -> Result<BigInt> {
    let (q, rem) = n.div_rem(d);
    if d.is_zero() || !rem.is_zero() {
        return Err(Error::Inconsistency(format!("{}: {} is not divisible by {}", what, n, d)));
    }
    Ok(q)
}

/// `Σ_Γ t_{d−1}(Σ, Γ)²` over relatively acyclic `Γ`.
pub fn relative_torsion_square_sum(c: &CellComplex) -> Result<BigInt> {
    Ok(enumerate_relatively_acyclic(c)?.iter().map(|g| &g.torsion * &g.torsion).sum())
}

/// `det L^du_{rows, cols}` with `L^du = ∂ᵀ∂`, i.e. `det (∂_{·,rows})ᵀ ∂_{·,cols}`.
/// The index lists are used in the given order.
pub fn down_up_minor(c: &CellComplex, rows: &[usize], cols: &[usize]) -> Result<BigInt> {
    let b = c.top_boundary();
    det(&b.select_columns(rows).transpose().mul(&b.select_columns(cols))?)
}

/// Precomputed forest data for repeated queries on one complex.
#[derive(Clone, Debug)]
pub struct ForestData {
    pub rank: usize,
    pub torsion: BigInt,
    pub forests: Vec<ForestCertificate>,
    pub relatively_acyclic: Vec<RelAcyclicCertificate>,
    /// `Σ_Γ t_{d−1}(Σ, Γ)²`.
    pub relative_square_sum: BigInt,
}

impl ForestData {
    pub fn new(c: &CellComplex) -> Result<Self> {
        let rank = rank(c)?;
        let torsion = codim_one_torsion(c)?;
        let forests = enumerate_csfs(c)?;
        let relatively_acyclic = enumerate_relatively_acyclic(c)?;
        let relative_square_sum = relatively_acyclic.iter().map(|g| &g.torsion * &g.torsion).sum();
        Ok(ForestData { rank, torsion, forests, relatively_acyclic, relative_square_sum })
    }

    pub fn tau(&self) -> BigInt {
        self.forests.iter().map(|f| &f.torsion * &f.torsion).sum()
    }

    /// `t_{d−1}(Υ)` for a forest from the enumeration.
    pub fn forest_torsion(&self, facets: &[usize]) -> Option<&BigInt> {
        self.forests.binary_search_by(|f| f.facets.as_slice().cmp(facets)).ok().map(|i| &self.forests[i].torsion)
    }

    /// `μ_Υ = t_{d−1}(Υ) · Σ_Γ (t_{d−1}(Σ,Γ) / t_{d−1}(Σ))²`.
    pub fn mu_by_sum(&self, forest_torsion: &BigInt) -> Result<BigInt> {
        let t2 = &self.torsion * &self.torsion;
        exact_div(&(forest_torsion * &self.relative_square_sum), &t2, "calibration factor")
    }
}

/// `μ_Υ`, computed from the sum over relatively acyclic `Γ` and from
/// `det L^du_Υ / t_{d−1}(Υ)`; the two must agree.
pub fn mu(c: &CellComplex, upsilon: &[usize]) -> Result<BigInt> {
    if !is_csf(c, upsilon)? {
        return Err(Error::NotAForest);
    }
    let t_upsilon = forest_torsion(c, upsilon)?;
    let t = codim_one_torsion(c)?;
    let by_sum = exact_div(&(&t_upsilon * relative_torsion_square_sum(c)?), &(&t * &t), "calibration factor")?;
    let by_det = mu_by_determinant(c, upsilon, &t_upsilon)?;
    if by_sum != by_det {
        return Err(Error::Inconsistency(format!(
            "calibration factor disagrees: sum over Γ gives {}, Laplacian minor gives {}",
            by_sum, by_det
        )));
    }
    Ok(by_sum)
}

pub(crate) fn mu_by_determinant(c: &CellComplex, upsilon: &[usize], t_upsilon: &BigInt) -> Result<BigInt> {
    exact_div(&down_up_minor(c, upsilon, upsilon)?, t_upsilon, "calibration factor")
}

/// `(t_{d−1}(Σ)² / t_{d−1}(Σ,Γ)²) · det L_Γ`, where `L_Γ = ∂_R ∂_Rᵀ`.
pub fn tau_by_determinant(c: &CellComplex, kept_rows: &[usize]) -> Result<BigInt> {
    if !is_relatively_acyclic(c, kept_rows)? {
        return Err(Error::NotRelativelyAcyclic);
    }
    let t = codim_one_torsion(c)?;
    let t_rel = relative_torsion(c, kept_rows)?;
    let rows = c.top_boundary().select_rows(kept_rows);
    let laplacian = rows.mul(&rows.transpose())?;
    exact_div(&(&t * &t * det(&laplacian)?), &(&t_rel * &t_rel), "matrix-forest formula")
}

fn check_pair_shapes(c: &CellComplex, upsilon: &[usize], kept_rows: &[usize]) -> Result<usize> {
    check_facets(c, upsilon)?;
    check_rows(c, kept_rows)?;
    let r = rank(c)?;
    if upsilon.len() != r || kept_rows.len() != r {
        return Err(Error::SkeletonPrecondition(format!(
            "need |Υ| = |R| = r = {}, got |Υ| = {}, |R| = {}",
            r,
            upsilon.len(),
            kept_rows.len()
        )));
    }
    Ok(r)
}

/// The four equivalent conditions for a pair `(Υ, Γ)` with `|Υ| = r` and
/// `Γ = Σ_(d−2) ∪ (Σ_{d−1} ∖ R)`, `|R| = r`:
/// (a) `∂_{R,Υ}` nonsingular; (b) both `H̃_d(Υ,Γ;ℚ)` and `H̃_{d−1}(Υ,Γ;ℚ)`
/// vanish; (c) at least one of them vanishes; (d) `Υ` is a spanning forest and
/// `Γ` is relatively acyclic (checked homologically).
pub fn check_det_is_homology(c: &CellComplex, upsilon: &[usize], kept_rows: &[usize]) -> Result<[bool; 4]> {
    check_pair_shapes(c, upsilon, kept_rows)?;
    let d = c.dim();
    let a = !det(&c.top_boundary().submatrix(kept_rows, upsilon))?.is_zero();

    let sub = c.top_restriction(upsilon)?;
    let gamma_cells = complement(c.num_cells(d - 1), kept_rows);
    let rel = RelativeComplex::new(Subcomplex::codimension_one(&sub, &gamma_cells)?);
    let top_zero = rel.homology(d as i32)?.free_rank() == 0;
    let next_zero = rel.homology(d as i32 - 1)?.free_rank() == 0;

    let [acyclic, connected, _] = csf_conditions(c, upsilon)?;
    let dd = acyclic && connected && is_relatively_acyclic_by_homology(c, kept_rows)?;
    Ok([a, top_zero && next_zero, top_zero || next_zero, dd])
}

/// Both sides of `t_{d−1}(Υ) t_{d−1}(Σ,Γ) = t_{d−1}(Σ) t_{d−1}(Υ,Γ)`, each
/// factor from homology.
pub fn check_relative_tor(c: &CellComplex, upsilon: &[usize], kept_rows: &[usize]) -> Result<(BigInt, BigInt)> {
    check_pair_shapes(c, upsilon, kept_rows)?;
    let d = c.dim() as i32;
    let sub = c.top_restriction(upsilon)?;
    let gamma_cells = complement(c.num_cells(d as usize - 1), kept_rows);
    let t_upsilon = sub.torsion_coefficient(d - 1)?;
    let t_sigma = c.torsion_coefficient(d - 1)?;
    let t_sigma_gamma = relative_torsion_by_homology(c, kept_rows)?;
    let t_upsilon_gamma =
        RelativeComplex::new(Subcomplex::codimension_one(&sub, &gamma_cells)?).torsion_coefficient(d - 1)?;
    Ok((t_upsilon * t_sigma_gamma, t_sigma * t_upsilon_gamma))
}

/// `Υ` with `σ` replaced by `ρ` in the same position.
pub fn substitute(upsilon: &[usize], sigma: usize, rho: usize) -> Result<Vec<usize>> {
    let pos = upsilon.iter().position(|&x| x == sigma).ok_or(Error::NotInForest(sigma))?;
    let mut out = upsilon.to_vec();
    out[pos] = rho;
    Ok(out)
}

/// `ε^A_{σ,ρ}` for `A = Υ ∖ σ`: the product of the signs of `det ∂_{S, A∪σ}`
/// and `det ∂_{S, A∪ρ}` (with `ρ` in `σ`'s column position) for the
/// lexicographically first row basis `S`. Zero when `A ∪ ρ` is not a forest.
pub fn relative_sign(c: &CellComplex, upsilon: &[usize], sigma: usize, rho: usize) -> Result<i32> {
    let s = first_row_basis(c)?;
    relative_sign_with(c, &s, upsilon, sigma, rho)
}

pub(crate) fn relative_sign_with(
    c: &CellComplex,
    row_basis: &[usize],
    upsilon: &[usize],
    sigma: usize,
    rho: usize,
) -> Result<i32> {
    let other = substitute(upsilon, sigma, rho)?;
    let b = c.top_boundary();
    let d1 = det(&b.submatrix(row_basis, upsilon))?;
    let d2 = det(&b.submatrix(row_basis, &other))?;
    Ok(signum(&d1) * signum(&d2))
}

/// Both sides of `det L^du_{Υ,Υ'} = ε μ_Υ t_{d−1}(Υ')` for `Υ' = Υ ∖ σ ∪ ρ`
/// (`ρ` in `σ`'s position).
pub fn check_calculate_l(
    c: &CellComplex,
    data: &ForestData,
    upsilon: &[usize],
    sigma: usize,
    rho: usize,
) -> Result<(BigInt, BigInt)> {
    let other = substitute(upsilon, sigma, rho)?;
    let lhs = down_up_minor(c, upsilon, &other)?;
    let mut sorted = other.clone();
    sorted.sort_unstable();
    let t_upsilon = data.forest_torsion(upsilon).ok_or(Error::NotAForest)?;
    let t_other = match data.forest_torsion(&sorted) {
        Some(t) => t.clone(),
        None => return Err(Error::NotAForest),
    };
    let eps = relative_sign(c, upsilon, sigma, rho)?;
    let rhs = BigInt::from(eps) * data.mu_by_sum(t_upsilon)? * t_other;
    Ok((lhs, rhs))
}

/// Both sides of `Σ_Γ t_{d−1}(Σ,Γ)² · t_{d−1}(Υ)² = t_{d−1}(Σ)² · det L^du_Υ`.
pub fn check_dual_matrix_forest(c: &CellComplex, data: &ForestData, upsilon: &[usize]) -> Result<(BigInt, BigInt)> {
    let t_upsilon = data.forest_torsion(upsilon).ok_or(Error::NotAForest)?;
    let lhs = &data.relative_square_sum * t_upsilon * t_upsilon;
    let rhs = &data.torsion * &data.torsion * down_up_minor(c, upsilon, upsilon)?;
    Ok((lhs, rhs))
}

/// `τ*(Σ) = Σ_Υ |H̃_d(Ω, Υ; ℤ)|²` over spanning forests, for an acyclization `Ω`.
pub fn tau_star(c: &CellComplex) -> Result<BigInt> {
    let d = top_dim(c)?;
    let omega = acyclization(c)?.complex();
    let mut total = BigInt::zero();
    for f in enumerate_csfs(c)? {
        let mut cells: Vec<Vec<usize>> = (0..d).map(|i| (0..c.num_cells(i)).collect()).collect();
        cells.push(f.facets.clone());
        let rel = RelativeComplex::new(Subcomplex::new(&omega, &cells)?);
        let order = rel
            .homology(d as i32)?
            .order()
            .ok_or_else(|| Error::Inconsistency("relative homology of an acyclization is infinite".into()))?;
        total += &order * &order;
    }
    Ok(total)
}

/// `τ / t²`, which `τ*` must equal.
pub fn tau_over_torsion_squared(c: &CellComplex) -> Result<BigInt> {
    let t = codim_one_torsion(c)?;
    exact_div(&tau(c)?, &(&t * &t), "τ/t²")
}

/// Number of `r`-subsets a brute-force enumeration would visit.
pub fn search_space(c: &CellComplex) -> Result<BigInt> {
    let r = rank(c)?;
    let n = c.num_facets();
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Ok(acc)
}
