use thiserror::Error;

/// Errors produced by state construction, channel evaluation, and sweeps.
#[derive(Debug, Error)]
pub enum GravcatError {
    #[error("matrix is not Hermitian: max |M[i][j] - conj(M[j][i])| = {max_asymmetry:.3e}")]
    NonHermitian { max_asymmetry: f64 },

    #[error("unsupported matrix dimension {0} (expected 2, 3, or 4)")]
    BadDimension(usize),

    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal norm {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("parameter out of range: {0}")]
    Domain(String),

    #[error("invalid sweep specification: {0}")]
    Sweep(String),

    #[error("unknown figure id {0:?} (valid: {1})")]
    UnknownFigure(String, String),

    #[error("cannot emit an empty table")]
    EmptyTable,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, GravcatError>;
