//! Exact topological invariants of normal surface singularity links given by
//! plumbing trees, specialized to superisolated singularities whose tangent
//! cone is a rational cuspidal plane curve.

pub mod error;
pub mod exactmath;

pub use error::{Error, Result};
pub mod branch;
pub mod plumbing;
pub mod seifert;
pub mod superisolated;
pub mod splice;
pub mod fixtures;
