//! Skew category algebras of finite discrete dynamical systems: exact
//! construction, structural analysis, and randomized verification of
//! simplicity criteria.

#![allow(clippy::result_large_err, clippy::type_complexity, clippy::field_reassign_with_default)]

pub mod algebra;
pub mod builtins;
pub mod category;
pub mod dynsys;
pub mod io;
pub mod linalg;
pub mod verifier;

pub use algebra::{Algebra, AlgebraError, Element};
pub use category::{Category, CategoryError, Congruence, MorId, ObjId};
pub use dynsys::{DynSys, DynSysError, PartialSystem, PartialSystemError};
pub use linalg::{Rational, Subspace};
