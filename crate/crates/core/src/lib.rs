//! Polyhedral outer approximation of the upper image of bounded convex
//! vector optimization problems, with norm-minimizing scalarizations under
//! fixed or adaptive inner-product metrics.

pub mod engine;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod metric;
pub mod polytope;
pub mod problems;
pub mod scalarize;

pub use error::{EngineError, HarnessError, MetricError, PolytopeError, ProblemError, SolveError};
