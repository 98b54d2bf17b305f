//! Kazhdan–Lusztig combinatorics for the affine Weyl group of type A~2.

pub mod alcove;
pub mod coxeter;
pub mod error;
pub mod hecke;
pub mod klformulas;
pub mod laurent;
pub mod leaves;
pub mod projcoeff;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
