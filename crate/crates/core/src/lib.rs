//! Numerics for finite skeletal premodular categories.
//!
//! The crate evaluates the graphical calculus of a braided spherical fusion
//! category given by its fusion rules, F-symbols, R-symbols and pivotal
//! coefficients, and builds on top of it:
//!
//! - the S-matrix, the modularity verdict and the Müger center,
//! - the Drinfeld center `Z(C)` through the tube algebra,
//! - the tautological functor `F: C ⊠ C^bop → Z(C)`, the functor `G` built
//!   from the coupling idempotents `Γ`, and the natural transformations
//!   `d, q, b, p` relating `GF`, `FG` and the identities.
//!
//! Everything is computed with complex doubles. Morphisms are stored as
//! per-sector matrices acting on left-combed fusion-tree bases.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod category;
pub mod center;
pub mod engine;
mod error;
pub mod linalg;
pub mod modularity;
pub mod morphism;
pub mod object;
pub mod scalar;

pub use category::{CategoryData, CategoryParts, ValidationReport};
pub use engine::Engine;
pub use error::Error;
pub use morphism::Morphism;
pub use object::ObjectExpr;
pub use scalar::{CMatrix, Scalar, ToleranceCfg};

pub type Result<T, E = Error> = core::result::Result<T, E>;
