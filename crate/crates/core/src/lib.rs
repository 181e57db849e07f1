//! Numerical core for ortho-spectrum volume identities of hyperbolic
//! manifolds with totally geodesic boundary.
//!
//! The crate is `no_std` (it needs `alloc` for the adaptive quadrature
//! panel list). Elementary functions come from `libm`.

#![no_std]
// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::manual_is_multiple_of)]
// reference values carry every digit they were computed with
#![allow(clippy::excessive_precision)]

extern crate alloc;

pub mod bounds;
pub mod dd;
pub mod dimension;
pub mod error;
pub mod ffunc;
pub mod math;
pub mod mfunc;
pub mod quadrature;
pub mod solver;
pub mod specfun;

pub use dimension::Dimension;
pub use error::{Error, Result};
