use thiserror::Error;

/// Errors produced by mesh generation, problem setup, assembly and solves.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mesh parameters: {0}")]
    InvalidMesh(String),

    #[error("unsupported quadrature degree {requested} (maximum {supported})")]
    UnsupportedQuadrature { requested: usize, supported: usize },

    #[error("invalid problem data: {0}")]
    InvalidProblem(String),

    #[error("unknown benchmark `{0}`")]
    UnknownBenchmark(String),

    #[error("raster error: {0}")]
    Raster(String),

    #[error("point {0:?} is outside the domain")]
    OutsideDomain([f64; 2]),

    #[error("model mismatch: expected {expected}, got {got}")]
    ModelMismatch { expected: String, got: String },

    #[error("assembly error: {0}")]
    Assembly(String),

    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("solver did not converge: relative residual {residual:.3e} exceeds {tolerance:.3e}")]
    NonConvergence { residual: f64, tolerance: f64 },

    #[error("verification error: {0}")]
    Verification(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
