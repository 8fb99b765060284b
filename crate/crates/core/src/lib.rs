//! Numerical verification toolkit for the identities behind a subconvexity
//! bound for `L(1/2, f x g x chi)`: Hecke eigenvalues of level-one cusp
//! forms, Dirichlet characters, Voronoi summation, Jutila's circle method,
//! character and convolution sums, and the exponent bookkeeping.

pub mod arith;
pub mod characters;
pub mod circle;
pub mod error;
pub mod forms;
pub mod harness;
pub mod special;
pub mod sums;
pub mod voronoi;

pub use error::{Error, Result};
