//! Exact-arithmetic computer algebra for finite-dimensional right Leibniz
//! algebras over the rationals.
//!
//! The crate provides rational linear algebra ([`linalg`]), sparse
//! multivariate polynomials with fraction-free elimination ([`poly`]),
//! structure-constant algebras with the right Leibniz identity
//! ([`algebra`]), a catalog of standard algebras ([`catalog`]), and
//! machinery for derivations, local and 2-local derivations, and
//! automorphisms ([`derivations`], [`local_derivations`], [`two_local`],
//! [`automorphisms`]). All computation is exact; nothing is floated.

pub mod algebra;
pub mod automorphisms;
pub mod catalog;
pub mod derivations;
pub mod error;
pub mod io;
pub mod linalg;
pub mod local_derivations;
pub mod poly;
pub mod sample;
pub mod two_local;

pub use error::Error;
pub use linalg::rat::Rat;
pub use linalg::matrix::RatMatrix;
pub use linalg::subspace::Subspace;
