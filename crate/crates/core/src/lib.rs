//! Exact-arithmetic computations on integral quadratic lattices of signature
//! (3, b-3): period points as oriented positive planes, twistor lines with
//! genericity certificates, constructive chain connectivity, Picard-lattice
//! criteria, and Weyl-group reductions. Every nontrivial output carries an
//! independently re-checkable certificate.

pub mod connect;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod period;
pub mod scalar;
pub mod twistor;
pub mod weyl;

pub use lattice::{
    is_isometry, make_catalog, parse_catalog, CatalogKind, LatticeError, LatticeIsometry,
    QuadLattice, Sublattice,
};
pub use scalar::{FVector, FieldError, NumberFieldSpec, Scalar};
