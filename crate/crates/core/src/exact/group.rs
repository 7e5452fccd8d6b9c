use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{smith_diagonal, IntMatrix};

/// Finitely generated abelian group `ℤ^free_rank ⊕ ℤ_{d₁} ⊕ … ⊕ ℤ_{d_k}`
/// in invariant-factor form: every `dᵢ ≥ 2` and `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FiniteAbelianGroup { invariant_factors: Vec::new(), free_rank: rank }
    }

    /// Builds the group from a divisibility chain such as an SNF diagonal.
    /// Units are dropped; zeros and signs are not accepted here.
    pub(crate) fn from_chain(diagonal: impl IntoIterator<Item = BigInt>, free_rank: usize) -> Self {
        let invariant_factors: Vec<BigInt> = diagonal.into_iter().filter(|d| *d > BigInt::one()).collect();
        debug_assert!(invariant_factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        FiniteAbelianGroup { invariant_factors, free_rank }
    }

    /// `⊕ ℤ_{oᵢ}` for arbitrary cyclic orders, put into canonical form.
    /// An order of zero contributes a free summand.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let free = orders.iter().filter(|o| o.is_zero()).count();
        let finite: Vec<BigInt> = orders.iter().filter(|o| !o.is_zero()).map(|o| o.abs()).collect();
        let diag = smith_diagonal(&IntMatrix::diagonal(&finite));
        Self::from_chain(diag, free)
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(&[order.into()])
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of the torsion subgroup; 1 when torsion-free.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// The torsion subgroup.
    pub fn torsion(&self) -> Self {
        FiniteAbelianGroup { invariant_factors: self.invariant_factors.clone(), free_rank: 0 }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        if self.free_rank > 0 {
            if self.free_rank == 1 {
                f.write_str("Z")?;
            } else {
                write!(f, "Z^{}", self.free_rank)?;
            }
            first = false;
        }
        for d in &self.invariant_factors {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "Z_{}", d)?;
            first = false;
        }
        Ok(())
    }
}

/// `ℤ^rows / im(m)`: torsion from the SNF diagonal, free rank `rows − rank`.
pub fn cokernel_group(m: &IntMatrix) -> FiniteAbelianGroup {
    let diag = smith_diagonal(m);
    let rank = diag.iter().take_while(|d| !d.is_zero()).count();
    FiniteAbelianGroup::from_chain(diag.into_iter().take(rank), m.rows() - rank)
}
