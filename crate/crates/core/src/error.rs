use alloc::string::String;

use crate::complex::Violation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("minor size {size} out of range for a {rows}x{cols} matrix")]
    MinorSize { size: usize, rows: usize, cols: usize },
    #[error("columns are linearly dependent")]
    DependentColumns,
    #[error("dimension {dim} out of range {min}..={max}")]
    DimensionOutOfRange { dim: i32, min: i32, max: i32 },
    #[error("invalid complex: {0}")]
    InvalidComplex(Violation),
    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),
    #[error("invalid facet: {0}")]
    InvalidFacet(String),
    #[error("operation requires a complex of dimension at least 1")]
    NeedsPositiveDimension,
    #[error("facet index {0} out of range")]
    FacetOutOfRange(usize),
    #[error("not a cellular spanning forest")]
    NotAForest,
    #[error("facet {0} is not in the forest")]
    NotInForest(usize),
    #[error("facet {0} is already in the forest")]
    AlreadyInForest(usize),
    #[error("facet set is not a circuit")]
    NotACircuit,
    #[error("facet set is not a bond")]
    NotABond,
    #[error("subcomplex does not satisfy the codimension-one precondition: {0}")]
    SkeletonPrecondition(String),
    #[error("subcomplex is not relatively acyclic")]
    NotRelativelyAcyclic,
    #[error("lattice has rank zero")]
    EmptyLattice,
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}
