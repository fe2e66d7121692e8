//! Exact linear algebra over the rationals: the scalar type, dense
//! matrices with reduced row echelon form, and canonical subspaces.

pub mod matrix;
pub mod rat;
pub mod subspace;

pub use matrix::{LinearSolution, RatMatrix};
pub use rat::Rat;
pub use subspace::Subspace;
