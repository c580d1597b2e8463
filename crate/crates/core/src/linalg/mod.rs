//! Exact field arithmetic and dense linear algebra over `Q` and `F_p`.

mod field;
mod matrix;
mod subspace;

pub use field::{Field, Scalar, MAX_PRIME};
pub use matrix::{rational, Matrix, Rref};
pub use subspace::{QuotientSpace, Subspace};
