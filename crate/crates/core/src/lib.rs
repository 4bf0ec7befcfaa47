//! Pattern structures over pluggable description semilattices: concept
//! lattice construction with Close-by-One, kernel-operator projections,
//! and representation contexts, backed by a brute-force oracle.
//!
//! The crate is organised around a small set of layers:
//!
//! - [`order`]: explicit finite lattices given by a meet table, with the
//!   derived natural order and join computed from upper bounds.
//! - [`descriptions`]: concrete description spaces (interval vectors,
//!   attribute sets, explicit lattice elements) behind the
//!   [`DescriptionSpace`] trait.
//! - [`pattern`]: pattern structures and the Galois connection between
//!   object sets and descriptions.
//! - [`cbo`]: the Close-by-One enumeration of all pattern concepts plus
//!   Hasse-diagram assembly and DOT/JSON export.
//! - [`projections`]: kernel operators, o-projected pattern structures,
//!   the projection order and its semilattice.
//! - [`representation`]: formal contexts, representation-context builders
//!   (interordinal and minimal), the simplicity preorder on contexts, and
//!   the projection reconstructed from a simpler context.
//! - [`oracle`]: independent brute-force ground truth and exhaustive
//!   enumerators used to verify every algebraic law on small instances.

pub mod bitset;
pub mod cbo;
pub mod descriptions;
pub mod oracle;
pub mod order;
pub mod pattern;
pub mod projections;
pub mod representation;

#[cfg(test)]
pub(crate) mod testsupport;

pub use bitset::BitSet;
pub use cbo::{close_by_one, ConceptSet};
pub use descriptions::{
    AttributeSet, DescriptionSpace, ExplicitSpace, Interval, IntervalSpace, IntervalVector,
    SetSpace,
};
pub use order::{Elt, FiniteLattice, LatticeSpec};
pub use pattern::{PatternConcept, PatternStructure};
pub use projections::{o_project, KernelOperator, ProjectedSpace, TableKernel};
pub use representation::{FormalContext, RepContext};
