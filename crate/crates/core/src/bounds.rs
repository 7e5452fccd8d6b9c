//! Girth, connectivity, shortest lattice vectors and the Hermite-constant
//! bounds relating them to `τ` and `τ*`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use crate::complex::CellComplex;
use crate::cutflow::{enumerate_circuits, enumerate_cocircuits};
use crate::forest::{tau, tau_star};
use crate::lattice::{cut_lattice, flow_lattice, Lattice};
use crate::{Error, Result};

/// Size of a smallest circuit; `None` when there are no circuits.
pub fn girth(c: &CellComplex) -> Result<Option<usize>> {
    Ok(enumerate_circuits(c)?.first().map(Vec::len))
}

/// Size of a smallest bond; `None` when there are no bonds.
pub fn connectivity(c: &CellComplex) -> Result<Option<usize>> {
    Ok(enumerate_cocircuits(c)?.first().map(Vec::len))
}

/// `γ_nⁿ` for the ranks where the Hermite constant is known exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteBudget {
    pub rank: usize,
    pub gamma_pow: Option<BigRational>,
}

impl HermiteBudget {
    pub fn new(rank: usize) -> Self {
        let (n, d): (i64, i64) = match rank {
            1 => (1, 1),
            2 => (4, 3),
            3 => (2, 1),
            4 => (4, 1),
            5 => (8, 1),
            6 => (64, 3),
            7 => (64, 1),
            8 => (256, 1),
            _ => return HermiteBudget { rank, gamma_pow: None },
        };
        HermiteBudget { rank, gamma_pow: Some(BigRational::new(n.into(), d.into())) }
    }
}

/// Rational `LDLᵀ` of a positive definite Gram matrix: `q(x) = Σ dᵢ (xᵢ + Σ_{j>i} m_{ji} x_j)²`.
struct QuadraticForm {
    d: Vec<BigRational>,
    /// `m[j][i]` for `j > i`.
    m: Vec<Vec<BigRational>>,
}

impl QuadraticForm {
    fn new(gram: &crate::exact::IntMatrix) -> Result<Self> {
        let k = gram.rows();
        let mut a: Vec<Vec<BigRational>> =
            (0..k).map(|i| (0..k).map(|j| BigRational::from_integer(gram[(i, j)].clone())).collect()).collect();
        let mut d = vec![BigRational::zero(); k];
        let mut m = vec![vec![BigRational::zero(); k]; k];
        for i in 0..k {
            if a[i][i] <= BigRational::zero() {
                return Err(Error::Inconsistency("Gram matrix is not positive definite".into()));
            }
            d[i] = a[i][i].clone();
            for j in i + 1..k {
                m[j][i] = &a[i][j] / &d[i];
            }
            for j in i + 1..k {
                for l in i + 1..k {
                    let delta = &m[j][i] * &a[i][l];
                    a[j][l] = &a[j][l] - delta;
                }
            }
        }
        Ok(QuadraticForm { d, m })
    }

    /// Every nonzero `x` with `q(x) ≤ bound`, visited depth-first from the last coordinate.
    fn enumerate(&self, bound: &BigRational, visit: &mut dyn FnMut(&[BigInt], &BigRational) -> BigRational) {
        let k = self.d.len();
        let mut x = vec![BigInt::zero(); k];
        let mut bound = bound.clone();
        self.level(k, &mut x, &BigRational::zero(), &mut bound, visit);
    }

    fn level(
        &self,
        i: usize,
        x: &mut Vec<BigInt>,
        partial: &BigRational,
        bound: &mut BigRational,
        visit: &mut dyn FnMut(&[BigInt], &BigRational) -> BigRational,
    ) {
        if i == 0 {
            if x.iter().any(|v| !v.is_zero()) {
                *bound = visit(x, partial);
            }
            return;
        }
        let i = i - 1;
        let k = self.d.len();
        let mut center = BigRational::zero();
        for j in i + 1..k {
            center -= &self.m[j][i] * BigRational::from_integer(x[j].clone());
        }
        let cost = |v: &BigInt| {
            let t = BigRational::from_integer(v.clone()) - &center;
            &self.d[i] * &t * &t
        };
        // q is convex in xᵢ with minimum at the center, so it increases going
        // up from ⌈center⌉ and going down from ⌈center⌉ − 1
        let start = center.ceil().to_integer();
        let mut up = start.clone();
        loop {
            let total = partial + cost(&up);
            if total > *bound {
                break;
            }
            x[i] = up.clone();
            self.level(i, x, &total, bound, visit);
            up += 1;
        }
        let mut down = start - 1;
        loop {
            let total = partial + cost(&down);
            if total > *bound {
                break;
            }
            x[i] = down.clone();
            self.level(i, x, &total, bound, visit);
            down -= 1;
        }
        x[i] = BigInt::zero();
    }
}

/// A shortest nonzero vector of `l` (ambient coordinates) and its squared norm.
pub fn shortest_vector(l: &Lattice) -> Result<(BigInt, Vec<BigInt>)> {
    if l.rank() == 0 {
        return Err(Error::EmptyLattice);
    }
    let gram = l.gram();
    let q = QuadraticForm::new(&gram)?;
    let start = (0..l.rank()).map(|i| gram[(i, i)].clone()).min().expect("rank ≥ 1");
    let mut best: Option<(BigRational, Vec<BigInt>)> = None;
    q.enumerate(&BigRational::from_integer(start), &mut |x, value| {
        if best.as_ref().is_none_or(|(b, _)| value < b) {
            best = Some((value.clone(), x.to_vec()));
        }
        best.as_ref().expect("set above").0.clone()
    });
    let (value, coords) = best.expect("basis vectors are within the initial bound");
    let v = l.basis().mul_vec(&coords)?;
    let normsq: BigInt = v.iter().map(|x| x * x).sum();
    if BigRational::from_integer(normsq.clone()) != value {
        return Err(Error::Inconsistency("shortest-vector norm mismatch".into()));
    }
    Ok((normsq, v))
}

pub fn shortest_vector_normsq(l: &Lattice) -> Result<BigInt> {
    Ok(shortest_vector(l)?.0)
}

/// Outcome of one bound check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
}

impl BoundCheck {
    fn compare(name: &str, lhs: impl Into<BigRational>, rhs: impl Into<BigRational>) -> Self {
        let (l, r) = (lhs.into(), rhs.into());
        let status = if l <= r { Status::Pass } else { Status::Fail };
        BoundCheck { name: name.into(), lhs: show(&l), rhs: show(&r), status }
    }

    fn skipped(name: &str, reason: String) -> Self {
        BoundCheck { name: name.into(), lhs: "-".into(), rhs: "-".into(), status: Status::Skipped(reason) }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

fn show(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// The data behind [`hermite_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteReport {
    pub cut_rank: usize,
    pub flow_rank: usize,
    pub connectivity: Option<usize>,
    pub girth: Option<usize>,
    pub tau: BigInt,
    pub tau_star: BigInt,
    pub cut_min_normsq: Option<BigInt>,
    pub flow_min_normsq: Option<BigInt>,
    pub checks: Vec<BoundCheck>,
}

fn side(
    checks: &mut Vec<BoundCheck>,
    names: (&str, &str),
    rank: usize,
    size: Option<usize>,
    count: &BigInt,
    min_normsq: &Option<BigInt>,
) {
    let (inequality, lattice_fact) = names;
    let budget = HermiteBudget::new(rank);
    match (size, &budget.gamma_pow) {
        _ if rank == 0 => checks.push(BoundCheck::skipped(inequality, "lattice has rank 0".into())),
        (None, _) => checks.push(BoundCheck::skipped(inequality, "no minimal sets".into())),
        (_, None) => {
            checks.push(BoundCheck::skipped(inequality, format!("Hermite constant unknown for rank {}", rank)))
        }
        (Some(s), Some(g)) => {
            let lhs = BigInt::from(s).pow(rank as u32);
            checks.push(BoundCheck::compare(inequality, lhs, g * BigRational::from_integer(count.clone())));
        }
    }
    match (size, min_normsq) {
        (Some(s), Some(m)) => checks.push(BoundCheck::compare(lattice_fact, BigInt::from(s), m.clone())),
        _ => checks.push(BoundCheck::skipped(lattice_fact, "empty lattice".into())),
    }
}

/// `kʳ ≤ γ_rʳ τ` and `g^b ≤ γ_b^b τ*` with `r`, `b` the ranks of the cut and
/// flow lattices, plus the lattice facts `min‖x‖²(C) ≥ k` and `min‖x‖²(F) ≥ g`.
pub fn hermite_check(c: &CellComplex) -> Result<HermiteReport> {
    let cut = cut_lattice(c)?;
    let flow = flow_lattice(c)?;
    let k = connectivity(c)?;
    let g = girth(c)?;
    let tau = tau(c)?;
    let tau_star = tau_star(c)?;
    let cut_min = if cut.rank() > 0 { Some(shortest_vector_normsq(&cut)?) } else { None };
    let flow_min = if flow.rank() > 0 { Some(shortest_vector_normsq(&flow)?) } else { None };
    let mut checks = Vec::new();
    side(&mut checks, ("k^r <= gamma_r^r * tau", "k <= min |x|^2 (cut)"), cut.rank(), k, &tau, &cut_min);
    side(&mut checks, ("g^b <= gamma_b^b * tau*", "g <= min |x|^2 (flow)"), flow.rank(), g, &tau_star, &flow_min);
    Ok(HermiteReport {
        cut_rank: cut.rank(),
        flow_rank: flow.rank(),
        connectivity: k,
        girth: g,
        tau,
        tau_star,
        cut_min_normsq: cut_min,
        flow_min_normsq: flow_min,
        checks,
    })
}

/// Whether `support` contains one of `sets`.
pub fn contains_any(support: &[usize], sets: &[Vec<usize>]) -> bool {
    sets.iter().any(|s| s.iter().all(|x| support.binary_search(x).is_ok()))
}
