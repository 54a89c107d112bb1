use thiserror::Error;

/// Errors raised by the matrix, spectral, functional-calculus and checker layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite entry at position {0}")]
    NonFinite(usize),

    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),

    #[error("factor is not unitary (defect {0:e})")]
    NotUnitary(f64),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("point {0} is outside the open unit disk")]
    OutsideDisk(String),

    #[error("sample z = {z} lies within {dist:e} of the spectrum")]
    SampleTooClose { z: String, dist: f64 },

    #[error("singular linear system (pivot {0:e})")]
    Singular(f64),

    #[error("invalid Herglotz measure: {0}")]
    InvalidMeasure(String),

    #[error("contour radius {radius} does not separate the spectrum (radius {spectral_radius}) from the unit circle")]
    ContourRadius { radius: f64, spectral_radius: f64 },

    #[error("invalid random spec: {0}")]
    InvalidSpec(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("malformed replay parameters: {0}")]
    Replay(String),

    #[error("suite {suite}, dim {dim}, trial {trial}: {source}")]
    Trial { suite: String, dim: usize, trial: usize, source: Box<Error> },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
