//! Exact enumeration of halved monotone triangles, halved trees and vertically
//! symmetric alternating sign trapezoids, together with evaluators for their
//! operator, constant-term and product formulas.

pub mod algebra;
pub mod cli;
pub mod constant_term;
pub mod objects;
pub mod operators;
pub mod error;
pub mod formulas;

pub use error::{Error, Result};
