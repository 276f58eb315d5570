//! Tate resolutions of sheaves and complexes on products of projective
//! spaces, computed over the exterior algebra.

pub mod bgg;
pub mod catalog;
pub mod complexes;
pub mod error;
pub mod input;
pub mod linalg;
pub mod multigraded;
pub mod resolutions;
pub mod smodule;
pub mod tate;

pub use error::{Result, TateError};
