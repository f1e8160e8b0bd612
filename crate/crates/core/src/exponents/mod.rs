//! Exact exponent arithmetic for finitely generated subgroups of `ℝⁿ`.
//!
//! Values live in the rational span of `1` and a set of declared constants
//! that are trusted to be linearly independent over `ℚ`. Equality is therefore
//! symbolic; order is decided by refining certified enclosures.

mod constants;
mod group;
pub mod lattice;
mod value;

pub use constants::{format_rational, parse_rational, Constant, ConstantBasis, Refinement};
pub use group::{dense_example_group, ConstantSpec, ExponentGroup, GroupSpec, ValueSpec};
pub use value::{ExponentValue, ExponentVector, Precision};
