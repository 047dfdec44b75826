//! Index calculus in Jacobians of C_ab curves over small finite fields.

pub mod algebra;
pub mod arith;
pub mod curve;
pub mod descent;
pub mod error;
pub mod heuristics;
pub mod io;
pub mod jacobian;
pub mod lattice;
pub mod linalg;
pub mod places;
pub mod pipeline;
pub mod planner;
pub mod relations;

pub use error::{Error, Result};
