//! Hypercomplex number systems built by anticommutative doubling, with a
//! closed-form implementation of the antiquaternion (split-quaternion)
//! algebra checked against the generic structural-constant path.
//!
//! - [`algebra`]: tables of structural constants, generic elements, the
//!   left-regular matrix and determinant norm, structural checks.
//! - [`doubling`]: `D(A, B)` for 2-dimensional seeds (`H = D(C, C)`,
//!   `AH = D(C, W)`).
//! - [`antiquaternion`]: fast closed-form AH arithmetic.
//! - [`geometry`]: constant-pseudonorm quadrics in the vector part.
//! - [`expr`]: infix expression language over AH.
//! - [`verify`]: randomized property suites used by the `hcx verify` command.

pub mod algebra;
pub mod antiquaternion;
pub mod builtin;
pub mod cli;
pub mod doubling;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod linalg;
pub mod verify;

pub use algebra::{table_equal, Algebra, BasisProduct, Element, MultiplicationTable};
pub use antiquaternion::AntiQuaternion;
pub use doubling::{double_anticommutative, Seed2};
pub use error::{Error, Result};
pub use geometry::{SurfaceClass, SurfaceKind};
