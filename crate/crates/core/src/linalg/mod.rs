//! Exact linear algebra over the rationals.
//!
//! Everything here is exact: elimination runs fraction-free over big
//! integers ([`echelon`]) and results are normalized to canonical reduced
//! row-echelon form ([`Subspace`]), so two subspaces are equal iff their
//! canonical matrices are identical.

pub mod echelon;
mod matrix;
pub mod modular;
pub mod rational;
mod subspace;

pub use echelon::{Echelon, IntRow};
pub use matrix::{kernel, rref, Matrix};
pub use rational::{parse_rational, ParseRationalError, Rational};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        found: usize,
        expected: usize,
    },
}
