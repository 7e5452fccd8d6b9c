//! Exact integer machinery for the cut and flow structure of finite cell
//! complexes.
//!
//! A complex is given by integer boundary matrices. From those the crate
//! computes reduced and relative homology, enumerates cellular spanning
//! forests (the bases of the cellular matroid) weighted by torsion, builds
//! characteristic vectors of bonds and circuits, and identifies the
//! critical, cocritical and cutflow groups with discriminant groups of the
//! cut and flow lattices.
//!
//! Everything is exact: integers are arbitrary precision and rationals are
//! only used where a dual basis or a Hermite bound needs them.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod complex;
pub mod cutflow;
mod error;
pub mod exact;
pub mod fixtures;
pub mod forest;
pub mod lattice;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
