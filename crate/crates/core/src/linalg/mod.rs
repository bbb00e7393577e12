//! Exact integer and rational linear algebra: HNF, SNF, congruence
//! diagonalization, and elimination over number fields.

pub mod fsolve;
pub mod hnf;
pub mod qdiag;
pub mod snf;
pub mod zmat;

pub use hnf::{hnf_basis, hnf_contains, integer_kernel, row_hnf, RowHnf};
pub use qdiag::{clear_denominators, symmetric_diagonalize, SymDiag};
pub use snf::{smith_normal_form, Snf};
pub use zmat::ZMat;
