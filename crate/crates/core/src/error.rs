use thiserror::Error;

/// Largest objective dimension handled by the polyhedral kernel.
pub const MAX_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolytopeError {
    #[error("capability error: polyhedral kernel supports dimension ≤ {MAX_DIM}, got {0}")]
    Capability(usize),
    #[error("halfspace normal has Euclidean norm ≤ 1e-12")]
    ZeroNormal,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded in the requested direction")]
    Unbounded,
    #[error("inner polytope is not contained in outer polytope (violation {0:.3e})")]
    NotNested(f64),
    #[error("projection solve failed: {0}")]
    Projection(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("matrix is not symmetric positive definite: {0}")]
    NotSpd(String),
    #[error("cut normal has Euclidean norm ≤ 1e-12")]
    ZeroNormal,
    #[error("no cut normals accumulated yet")]
    NoNormalsYet,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("no strictly feasible point (phase-I value {0:.3e})")]
    Infeasible(f64),
    #[error("iteration cap exceeded ({0})")]
    MaxIter(&'static str),
    #[error("cut is degenerate: scalarization value {0:.3e} ≤ separation threshold")]
    DegenerateCut(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("capability error: {0}")]
    Capability(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("invalid run configuration: {0}")]
    Config(String),
    #[error("initial outer approximation is unbounded; check slice direction and level")]
    UnboundedInit,
    #[error("no candidate vertices")]
    NoVertices,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("rate fit needs at least 4 positive error samples in the window, got {0}")]
    TooFewPoints(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}
