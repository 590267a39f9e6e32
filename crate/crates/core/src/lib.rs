//! Depth-graded combinatorics of cyclotomic iterated integrals.
//!
//! The crate is organised bottom-up: [`cyclotomic`] handles levels and roots
//! of unity, [`exactlinalg`] provides exact sparse linear algebra over the
//! rationals and prime fields, [`coproduct`] expands Goncharov's coproduct on
//! formal words, [`depthgraded`] builds the spaces `X`, `Y`, `W` and the maps
//! between them, and [`kappa`] computes the weight-two cokernel dimension.

pub mod arith;
pub mod coproduct;
pub mod cyclotomic;
pub mod depthgraded;
pub mod exactlinalg;
pub mod kappa;
pub mod par;

mod error;

pub use error::{Error, Result};
