//! Exact computation and certification of X-ranks for rational normal
//! curves and their linear projections.

pub mod arith;
pub mod error;
pub mod forms;
pub mod projection;
pub mod secant;
pub mod subspace;

pub use error::{Error, Result};
