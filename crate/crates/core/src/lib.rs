//! Exact Witt-ring arithmetic, presented equivariant Witt cohomology rings of BSL2^n, BN and
//! twisted points, Euler classes, and a Bott residue evaluator for fixed-point localization.

pub mod arith;
pub mod engine;
pub mod error;
pub mod euler;
pub mod field;
pub mod parse;
pub mod quad_ext;
pub mod rings;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
pub use field::{FieldDescriptor, FieldElement};
pub use witt::{diagonalize, QuadraticForm, WittClass};
