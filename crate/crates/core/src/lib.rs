//! Box modules, Koszul-type complexes and resolutions over real-exponent
//! polynomial rings `k[ℝⁿ₊]` and their dense-subgroup variants.

#![allow(clippy::needless_range_loop)]

pub mod boxmod;
pub mod certificates;
pub mod complexes;
pub mod error;
pub mod exponents;
pub mod koszul;
pub mod linalg;
pub mod selftest;

pub use error::{Error, Result};
