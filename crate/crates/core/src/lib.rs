//! Bell inequalities and nonlocal games generated by finite group orbits.
//!
//! A unitary representation of a finite group on the local space, together
//! with an initial state, fixes the measurement bases; orbits of product
//! states under the tensor-power action fix the events of the inequality.

pub mod bounds;
pub mod builtin;
pub mod config;
pub mod document;
pub mod error;
pub mod games;
pub mod groups;
pub mod linalg;
pub mod registry;
pub mod reptheory;
pub mod scenario;
pub mod search;

pub use error::{Error, Result};
