//! Exact verification of graded infinitesimal and coFrobenius bialgebra structures.
//!
//! Coefficients live in `Q` or a prime field, modules are finite and graded, and
//! every relation is decided by exact expansion on basis tuples. The crate is
//! `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod check;
pub mod duality;
pub mod error;
pub mod linalg;
pub mod models;
pub mod module;
pub mod op;
pub mod scalar;
pub mod structures;
pub mod tensor;
pub mod tqft;

pub use error::Error;
pub use module::{compose, make_module, map_equal, Element, GradedMap, GradedModule, Shape, Terms, Tuple};
pub use op::Op;
pub use scalar::{Field, Scalar};
