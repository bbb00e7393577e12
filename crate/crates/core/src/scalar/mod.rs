//! Exact scalar arithmetic: rationals and real number fields with decidable
//! sign at a designated root.

pub mod algebraic;
pub mod field;
pub mod fvector;
pub mod poly;

pub use algebraic::Scalar;
pub use field::{FieldError, NumberFieldSpec};
pub use fvector::FVector;
pub use poly::{Int, QPoly, Rat};
